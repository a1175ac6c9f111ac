#include "hdlp/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "hdlp/errors.hpp"

namespace hdlp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-11;
constexpr double kDualTol = 1e-9;
constexpr double kPhase1Tol = 1e-7;
constexpr int kDegeneracyStreakForBland = 60;
}  // namespace

// ---------------------------------------------------------------------------
// LpProblem
// ---------------------------------------------------------------------------

int LpProblem::add_variable(double lower, double upper, VarKind kind, double objective_coeff) {
    if (!(lower <= upper)) throw InvalidParameters("add_variable: lower > upper");
    if (kind == VarKind::bit && (lower < 0.0 || upper > 1.0))
        throw InvalidParameters("add_variable: bit variable bounds outside [0,1]");
    const int idx = static_cast<int>(vars_.size());
    vars_.push_back(LpVariable{idx, lower, upper, kind});
    obj_.push_back(objective_coeff);
    if (kind == VarKind::bit) {
        if (static_cast<std::size_t>(idx) != n_bits_)
            throw InvalidParameters("add_variable: bit variables must precede auxiliaries");
        ++n_bits_;
    }
    return idx;
}

void LpProblem::set_objective(int var, double coeff) {
    obj_.at(static_cast<std::size_t>(var)) = coeff;
}

void LpProblem::set_bounds(int var, double lower, double upper) {
    if (!(lower <= upper)) throw InvalidParameters("set_bounds: lower > upper");
    auto& v = vars_.at(static_cast<std::size_t>(var));
    v.lower = lower;
    v.upper = upper;
}

std::uint64_t LpProblem::add_constraint(LpConstraint c) {
    if (c.coeffs.empty()) throw InvalidParameters("add_constraint: no coefficients");
    std::sort(c.coeffs.begin(), c.coeffs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    bool any_nonzero = false;
    for (auto& [v, coef] : c.coeffs) {
        if (v < 0 || static_cast<std::size_t>(v) >= vars_.size())
            throw InvalidParameters("add_constraint: unknown variable");
        if (coef != 0.0) any_nonzero = true;
    }
    if (!any_nonzero) throw InvalidParameters("add_constraint: all coefficients zero");
    c.id = next_id_++;
    index_of_id_[c.id] = constraints_.size();
    constraints_.push_back(std::move(c));
    return constraints_.back().id;
}

std::vector<std::uint64_t> LpProblem::add_constraints(std::vector<LpConstraint> cs) {
    std::vector<std::uint64_t> ids;
    ids.reserve(cs.size());
    for (auto& c : cs) ids.push_back(add_constraint(std::move(c)));
    return ids;
}

void LpProblem::remove_constraints(std::span<const std::uint64_t> ids, RemovalPolicy policy) {
    for (std::uint64_t id : ids) {
        auto it = index_of_id_.find(id);
        if (it == index_of_id_.end()) throw UnknownConstraintId("remove_constraints: id " + std::to_string(id));
        if (policy == RemovalPolicy::inactive_pruning && !constraints_[it->second].origin.prunable())
            throw RemovalForbidden("remove_constraints: equality rows and branch fixes are always active");
    }
    for (std::uint64_t id : ids) {
        const std::size_t pos = index_of_id_.at(id);
        const std::size_t last = constraints_.size() - 1;
        if (pos != last) {
            constraints_[pos] = std::move(constraints_[last]);
            index_of_id_[constraints_[pos].id] = pos;
        }
        constraints_.pop_back();
        index_of_id_.erase(id);
    }
}

const LpConstraint& LpProblem::constraint_by_id(std::uint64_t id) const {
    auto it = index_of_id_.find(id);
    if (it == index_of_id_.end()) throw UnknownConstraintId("constraint_by_id: id " + std::to_string(id));
    return constraints_[it->second];
}

bool LpProblem::has_constraint(std::uint64_t id) const { return index_of_id_.count(id) != 0; }

// ---------------------------------------------------------------------------
// Simplex
// ---------------------------------------------------------------------------

namespace {

/// Dense two-phase bounded-variable primal simplex working state.
struct Tableau {
    std::size_t m = 0;  // rows
    std::size_t n = 0;  // columns (structural + slack + artificial)
    std::size_t n_structural = 0;
    std::size_t first_artificial = 0;  // == n when none

    std::vector<double> t;      // m x n row-major
    std::vector<double> beta;   // value of basic variable per row
    std::vector<int> basic;     // variable index per row
    std::vector<double> lower;  // per variable
    std::vector<double> upper;
    std::vector<double> val;       // current value per variable (nonbasic: a bound)
    std::vector<std::uint8_t> at_upper;  // nonbasic rest position
    std::vector<std::uint8_t> in_basis;
    std::vector<double> cost;  // current phase objective

    double& at(std::size_t r, std::size_t c) { return t[r * n + c]; }
    double atv(std::size_t r, std::size_t c) const { return t[r * n + c]; }

    bool is_artificial(std::size_t j) const { return j >= first_artificial; }
};

enum class LoopResult { optimal, unbounded };

LoopResult simplex_loop(Tableau& tb, bool phase1) {
    const std::size_t m = tb.m, n = tb.n;
    std::vector<double> cb(m);
    int degen_streak = 0;
    bool bland = false;
    const long max_iters = 4000 + 60 * static_cast<long>(m + n);

    for (long iter = 0; iter < max_iters; ++iter) {
        for (std::size_t i = 0; i < m; ++i) cb[i] = tb.cost[tb.basic[i]];

        // entering variable: Dantzig pricing normally, Bland's lowest-index
        // rule while breaking a degeneracy streak
        std::size_t enter = n;
        double best_score = kDualTol;
        for (std::size_t j = 0; j < n; ++j) {
            if (tb.in_basis[j]) continue;
            if (tb.upper[j] - tb.lower[j] <= 0.0) continue;  // fixed
            if (!phase1 && tb.is_artificial(j)) continue;
            double d = tb.cost[j];
            for (std::size_t i = 0; i < m; ++i) d -= cb[i] * tb.atv(i, j);
            const double score = tb.at_upper[j] ? d : -d;  // improvement rate
            if (score > best_score) {
                enter = j;
                best_score = score;
                if (bland) break;  // lowest eligible index
            }
        }
        if (enter == n) return LoopResult::optimal;

        const double dir = tb.at_upper[enter] ? -1.0 : 1.0;

        // ratio test; ties toward the lowest leaving variable index
        double t_limit = tb.upper[enter] - tb.lower[enter];  // bound flip cap
        std::size_t leave_row = m;
        double t_basic = kInf;
        for (std::size_t i = 0; i < m; ++i) {
            const double tij = tb.atv(i, enter);
            if (std::fabs(tij) <= kPivotTol) continue;
            const double delta = tij * dir;
            const int bi = tb.basic[i];
            double cap;
            if (delta > 0.0) {
                cap = (tb.beta[i] - tb.lower[bi]) / delta;
            } else {
                if (tb.upper[bi] == kInf) continue;
                cap = (tb.upper[bi] - tb.beta[i]) / (-delta);
            }
            if (cap < 0.0) cap = 0.0;
            if (cap < t_basic - 1e-12 ||
                (cap < t_basic + 1e-12 && leave_row != m && bi < tb.basic[leave_row])) {
                t_basic = cap;
                leave_row = i;
            }
        }

        if (t_limit == kInf && t_basic == kInf) return LoopResult::unbounded;

        if (t_limit <= t_basic) {
            // bound flip, no basis change
            for (std::size_t i = 0; i < m; ++i) tb.beta[i] -= tb.atv(i, enter) * dir * t_limit;
            tb.at_upper[enter] ^= 1;
            tb.val[enter] = tb.at_upper[enter] ? tb.upper[enter] : tb.lower[enter];
            degen_streak = 0;
            bland = false;
            continue;
        }

        const double step = t_basic;
        if (step <= kPivotTol) {
            if (++degen_streak >= kDegeneracyStreakForBland) bland = true;
        } else {
            degen_streak = 0;
            bland = false;
        }

        // update basic values, swap basis
        for (std::size_t i = 0; i < m; ++i) tb.beta[i] -= tb.atv(i, enter) * dir * step;
        const int leaving = tb.basic[leave_row];
        const double tlj = tb.atv(leave_row, enter);
        const bool leaves_at_lower = (tlj * dir) > 0.0;
        tb.val[leaving] = leaves_at_lower ? tb.lower[leaving] : tb.upper[leaving];
        tb.at_upper[leaving] = leaves_at_lower ? 0 : 1;
        tb.in_basis[leaving] = 0;

        const double enter_val = tb.val[enter] + dir * step;
        tb.in_basis[enter] = 1;
        tb.basic[leave_row] = static_cast<int>(enter);
        tb.beta[leave_row] = enter_val;

        // pivot row operations
        const double inv = 1.0 / tlj;
        double* prow = &tb.at(leave_row, 0);
        for (std::size_t j = 0; j < n; ++j) prow[j] *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave_row) continue;
            const double f = tb.atv(i, enter);
            if (f == 0.0) continue;
            double* row = &tb.at(i, 0);
            for (std::size_t j = 0; j < n; ++j) row[j] -= f * prow[j];
        }
    }
    throw NumericalFailure("simplex: iteration limit exceeded");
}

}  // namespace

LpSolution solve(const LpProblem& problem) {
    const auto& vars = problem.variables();
    const auto& cons = problem.constraints();
    const std::size_t s = vars.size();
    const std::size_t m = cons.size();

    std::size_t n_slack = 0;
    for (const auto& c : cons)
        if (c.sense == ConstraintSense::less_equal) ++n_slack;

    // dense rows over structural + slack columns
    const std::size_t n_ss = s + n_slack;
    std::vector<double> a(m * n_ss, 0.0);
    std::vector<double> b(m, 0.0);
    {
        std::size_t slack_at = s;
        for (std::size_t i = 0; i < m; ++i) {
            for (const auto& [v, coef] : cons[i].coeffs) a[i * n_ss + static_cast<std::size_t>(v)] += coef;
            b[i] = cons[i].rhs;
            if (cons[i].sense == ConstraintSense::less_equal) a[i * n_ss + slack_at++] = 1.0;
        }
    }

    // initial rest position: every variable at its lower bound
    std::vector<double> init(n_ss, 0.0);
    for (std::size_t j = 0; j < s; ++j) {
        if (vars[j].lower == -kInf) throw InvalidParameters("solve: variables must have a finite lower bound");
        init[j] = vars[j].lower;
    }

    // residuals decide which rows need an artificial basis column
    std::vector<double> resid(m, 0.0);
    std::vector<std::uint8_t> slack_basic(m, 0);
    std::size_t n_art = 0;
    {
        std::size_t slack_at = s;
        for (std::size_t i = 0; i < m; ++i) {
            double r = b[i];
            for (std::size_t j = 0; j < s; ++j) r -= a[i * n_ss + j] * init[j];
            const bool is_le = cons[i].sense == ConstraintSense::less_equal;
            if (is_le && r >= 0.0) {
                slack_basic[i] = 1;
                resid[i] = r;
            } else {
                if (r < 0.0) {
                    for (std::size_t j = 0; j < n_ss; ++j) a[i * n_ss + j] = -a[i * n_ss + j];
                    b[i] = -b[i];
                    r = -r;
                }
                resid[i] = r;
                ++n_art;
            }
            if (is_le) ++slack_at;
        }
    }

    Tableau tb;
    tb.m = m;
    tb.n = n_ss + n_art;
    tb.n_structural = s;
    tb.first_artificial = n_ss;
    tb.t.assign(m * tb.n, 0.0);
    tb.beta.assign(m, 0.0);
    tb.basic.assign(m, -1);
    tb.lower.assign(tb.n, 0.0);
    tb.upper.assign(tb.n, kInf);
    tb.val.assign(tb.n, 0.0);
    tb.at_upper.assign(tb.n, 0);
    tb.in_basis.assign(tb.n, 0);
    tb.cost.assign(tb.n, 0.0);

    for (std::size_t j = 0; j < s; ++j) {
        tb.lower[j] = vars[j].lower;
        tb.upper[j] = vars[j].upper;
        tb.val[j] = init[j];
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n_ss; ++j) tb.at(i, j) = a[i * n_ss + j];

    {
        std::size_t art_at = n_ss;
        for (std::size_t i = 0; i < m; ++i) {
            if (slack_basic[i]) {
                // the slack column of row i is the initial basis column
                std::size_t slack_col = s;
                for (std::size_t r2 = 0; r2 < i; ++r2)
                    if (cons[r2].sense == ConstraintSense::less_equal) ++slack_col;
                tb.basic[i] = static_cast<int>(slack_col);
                tb.in_basis[slack_col] = 1;
            } else {
                tb.at(i, art_at) = 1.0;
                tb.basic[i] = static_cast<int>(art_at);
                tb.in_basis[art_at] = 1;
                tb.cost[art_at] = 1.0;  // phase-1 objective
                ++art_at;
            }
            tb.beta[i] = resid[i];
        }
    }

    // phase 1
    if (n_art > 0) {
        if (simplex_loop(tb, true) == LoopResult::unbounded)
            throw NumericalFailure("simplex: phase 1 unbounded");
        double infeas = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            if (tb.is_artificial(static_cast<std::size_t>(tb.basic[i]))) infeas += tb.beta[i];
        for (std::size_t j = tb.first_artificial; j < tb.n; ++j)
            if (!tb.in_basis[j]) infeas += tb.val[j];
        if (infeas > kPhase1Tol) {
            LpSolution sol;
            sol.status = LpStatus::infeasible;
            return sol;
        }
        // drive basic artificials out where the row is not redundant
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t bi = static_cast<std::size_t>(tb.basic[i]);
            if (!tb.is_artificial(bi)) continue;
            std::size_t piv = tb.n;
            for (std::size_t j = 0; j < tb.first_artificial; ++j) {
                if (tb.in_basis[j]) continue;
                if (std::fabs(tb.atv(i, j)) > 1e-7) {
                    piv = j;
                    break;
                }
            }
            if (piv == tb.n) continue;  // redundant row; artificial stays pinned at 0
            // degenerate pivot: artificial (value 0) leaves, piv enters at its bound
            tb.in_basis[bi] = 0;
            tb.val[bi] = 0.0;
            tb.at_upper[bi] = 0;
            tb.in_basis[piv] = 1;
            tb.basic[i] = static_cast<int>(piv);
            tb.beta[i] = tb.val[piv];
            const double inv = 1.0 / tb.atv(i, piv);
            double* prow = &tb.at(i, 0);
            for (std::size_t j = 0; j < tb.n; ++j) prow[j] *= inv;
            for (std::size_t r2 = 0; r2 < m; ++r2) {
                if (r2 == i) continue;
                const double f = tb.atv(r2, piv);
                if (f == 0.0) continue;
                double* row = &tb.at(r2, 0);
                for (std::size_t j = 0; j < tb.n; ++j) row[j] -= f * prow[j];
            }
        }
        // artificials may never re-enter
        for (std::size_t j = tb.first_artificial; j < tb.n; ++j) {
            tb.lower[j] = 0.0;
            tb.upper[j] = 0.0;
            tb.cost[j] = 0.0;
        }
    }

    // phase 2
    for (std::size_t j = 0; j < tb.n; ++j) tb.cost[j] = 0.0;
    for (std::size_t j = 0; j < s; ++j) tb.cost[j] = problem.objective()[j];
    for (std::size_t j = tb.first_artificial; j < tb.n; ++j) tb.cost[j] = 0.0;
    if (simplex_loop(tb, false) == LoopResult::unbounded)
        throw LpUnbounded("simplex: phase 2 unbounded (decoder LPs must be box-bounded)");

    // extract
    LpSolution sol;
    sol.status = LpStatus::optimal;
    sol.is_vertex = true;
    std::vector<double> x(tb.n, 0.0);
    for (std::size_t j = 0; j < tb.n; ++j) x[j] = tb.in_basis[j] ? 0.0 : tb.val[j];
    for (std::size_t i = 0; i < m; ++i) x[static_cast<std::size_t>(tb.basic[i])] = tb.beta[i];
    sol.values.resize(s);
    for (std::size_t j = 0; j < s; ++j) {
        double v = x[j];
        // clean rounding drift against the box
        if (v < vars[j].lower && v > vars[j].lower - 1e-9) v = vars[j].lower;
        if (v > vars[j].upper && v < vars[j].upper + 1e-9) v = vars[j].upper;
        sol.values[j] = v;
    }
    sol.bit_values.assign(sol.values.begin(),
                          sol.values.begin() + static_cast<long>(problem.num_bit_variables()));

    double obj = 0.0;
    for (std::size_t j = 0; j < s; ++j) obj += problem.objective()[j] * sol.values[j];
    sol.objective = obj;

    for (const auto& c : cons) {
        if (c.sense == ConstraintSense::equal) {
            sol.slack.emplace(c.id, 0.0);
            continue;
        }
        double lhs = 0.0;
        for (const auto& [v, coef] : c.coeffs) lhs += coef * sol.values[static_cast<std::size_t>(v)];
        sol.slack.emplace(c.id, c.rhs - lhs);
    }

    // feasibility audit at the engine tolerance
    for (const auto& c : cons) {
        double lhs = 0.0;
        for (const auto& [v, coef] : c.coeffs) lhs += coef * sol.values[static_cast<std::size_t>(v)];
        const double viol = c.sense == ConstraintSense::equal ? std::fabs(lhs - c.rhs) : lhs - c.rhs;
        if (viol > kLpFeasTol * (1.0 + std::fabs(c.rhs)) + kLpFeasTol)
            throw NumericalFailure("simplex: optimal point violates a constraint beyond tolerance");
    }
    return sol;
}

bool is_integral(const LpSolution& sol, double tol) {
    for (double v : sol.bit_values) {
        const double d = std::min(std::fabs(v), std::fabs(v - 1.0));
        if (d > tol) return false;
    }
    return true;
}

void write_lp_format(const LpProblem& problem, std::ostream& out) {
    const auto& vars = problem.variables();
    auto var_name = [&](int j) {
        return (vars[static_cast<std::size_t>(j)].kind == VarKind::bit ? "x" : "z") + std::to_string(j);
    };
    out << "Minimize\n obj:";
    bool first = true;
    for (std::size_t j = 0; j < vars.size(); ++j) {
        const double c = problem.objective()[j];
        if (c == 0.0) continue;
        out << (c < 0 ? " - " : (first ? " " : " + ")) << std::fabs(c) << " " << var_name(static_cast<int>(j));
        first = false;
    }
    if (first) out << " 0 x0";
    out << "\nSubject To\n";
    for (const auto& c : problem.constraints()) {
        out << " c" << c.id << ":";
        bool f2 = true;
        for (const auto& [v, coef] : c.coeffs) {
            out << (coef < 0 ? " - " : (f2 ? " " : " + ")) << std::fabs(coef) << " " << var_name(v);
            f2 = false;
        }
        out << (c.sense == ConstraintSense::equal ? " = " : " <= ") << c.rhs << "\n";
    }
    out << "Bounds\n";
    for (std::size_t j = 0; j < vars.size(); ++j)
        out << " " << vars[j].lower << " <= " << var_name(static_cast<int>(j)) << " <= " << vars[j].upper << "\n";
    out << "End\n";
}

}  // namespace hdlp

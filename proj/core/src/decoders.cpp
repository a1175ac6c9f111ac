#include "hdlp/decoders.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "hdlp/errors.hpp"

namespace hdlp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double dot(std::span<const double> c, std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * x[i];
    return s;
}

std::vector<double> rounded(std::span<const double> x) {
    std::vector<double> w(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) w[i] = x[i] > 0.5 ? 1.0 : 0.0;
    return w;
}

bool value_integral(double v, double tol) { return std::min(std::fabs(v), std::fabs(v - 1.0)) <= tol; }

void check_cost_length(const LinearCode& code, std::span<const double> cost) {
    if (cost.size() != code.n()) throw LengthMismatch("decode: cost length != n");
}

}  // namespace

void DecodeStats::merge(const DecodeStats& o) {
    lp_solves += o.lp_solves;
    cuts_fs += o.cuts_fs;
    cuts_rpc += o.cuts_rpc;
    iterations += o.iterations;
    bb_nodes += o.bb_nodes;
    pruned_infeasible += o.pruned_infeasible;
    pruned_bound += o.pruned_bound;
    pruned_integral += o.pruned_integral;
    constraints_pruned += o.constraints_pruned;
    depth_limit_hit = depth_limit_hit || o.depth_limit_hit;
    iteration_limit_hit = iteration_limit_hit || o.iteration_limit_hit;
    wall_time_s += o.wall_time_s;
}

bool DecodeOutcome::integral(double tol) const {
    for (double v : word)
        if (!value_integral(v, tol)) return false;
    return true;
}

std::vector<std::uint8_t> DecodeOutcome::hard_word() const {
    std::vector<std::uint8_t> w(word.size());
    for (std::size_t i = 0; i < word.size(); ++i) w[i] = word[i] > 0.5 ? 1 : 0;
    return w;
}

// ---------------------------------------------------------------------------
// Exhaustive reference decoder
// ---------------------------------------------------------------------------

DecodeOutcome decode_ml_bruteforce(const LinearCode& code, std::span<const double> cost) {
    check_cost_length(code, cost);
    const auto t0 = Clock::now();
    const auto words = enumerate_codewords(code);

    const std::vector<std::uint8_t>* best = nullptr;
    double best_cost = 0.0;
    for (const auto& w : words) {
        double s = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i]) s += cost[i];
        if (!best || s < best_cost ||
            (s == best_cost && std::lexicographical_compare(w.begin(), w.end(), best->begin(), best->end()))) {
            best = &w;
            best_cost = s;
        }
    }

    DecodeOutcome out;
    out.word.assign(best->begin(), best->end());
    out.ml_certificate = true;
    out.objective = best_cost;
    out.stats.wall_time_s = seconds_since(t0);
    return out;
}

// ---------------------------------------------------------------------------
// Static LP over the full FS description
// ---------------------------------------------------------------------------

DecodeOutcome decode_static_lp(const LinearCode& code, std::span<const double> cost) {
    check_cost_length(code, cost);
    const auto t0 = Clock::now();

    LpProblem p;
    for (std::size_t i = 0; i < code.n(); ++i) p.add_variable(0.0, 1.0, VarKind::bit, cost[i]);
    p.add_constraints(enumerate_full_fs(code.h()));

    const LpSolution sol = solve(p);
    if (sol.status != LpStatus::optimal) throw NumericalFailure("decode_static_lp: infeasible relaxation");

    DecodeOutcome out;
    out.stats.lp_solves = 1;
    out.stats.iterations = 1;
    if (is_integral(sol)) {
        out.word = rounded(sol.bit_values);
        out.ml_certificate = true;
        out.objective = dot(cost, out.word);
    } else {
        out.word = sol.bit_values;
        out.objective = sol.objective;
    }
    out.stats.wall_time_s = seconds_since(t0);
    return out;
}

// ---------------------------------------------------------------------------
// Adaptive LP decoder
// ---------------------------------------------------------------------------

namespace {

/// Shared cut-loop body for the adaptive decoders. Adds the cuts, updating
/// pool and trace bookkeeping; returns how many were added.
int add_cuts(LpProblem& p, std::vector<FsCut>&& cuts, ConstraintPool* pool, DecodeTrace* trace,
             DecodeStats& stats, TraceIteration* ti) {
    int added = 0;
    for (auto& cut : cuts) {
        LpConstraint lc = fs_to_lp(cut);
        if (pool && pool->contains(lc)) continue;
        lc.id = 0;
        const std::uint64_t id = p.add_constraint(lc);
        lc.id = id;
        if (pool) pool->insert(lc);
        if (trace) trace->cuts.push_back(lc);
        const bool is_rpc = cut.kind == ConstraintOrigin::Kind::rpc_cut;
        (is_rpc ? stats.cuts_rpc : stats.cuts_fs) += 1;
        if (ti) (is_rpc ? ti->cuts_rpc_added : ti->cuts_fs_added) += 1;
        ++added;
    }
    return added;
}

}  // namespace

DecodeOutcome decode_alp(const LinearCode& code0, std::span<const double> cost, ConstraintPool* pool,
                         const DecodeOptions& options) {
    check_cost_length(code0, cost);
    const auto t0 = Clock::now();
    const LinearCode code = options.adapt_matrix ? adapt_matrix(code0, cost) : code0;
    const BitMatrix& h = code.h();

    LpProblem p;
    for (std::size_t i = 0; i < code.n(); ++i) p.add_variable(0.0, 1.0, VarKind::bit, cost[i]);

    // carry over the pool from previous attempts, rebinding ids
    if (pool) {
        std::vector<LpConstraint> rebound;
        rebound.reserve(pool->cuts().size());
        for (const auto& c : pool->cuts()) {
            LpConstraint copy = c;
            copy.id = 0;
            copy.id = p.add_constraint(copy);
            rebound.push_back(std::move(copy));
        }
        pool->rebind(std::move(rebound));
    }

    DecodeOutcome out;
    for (int iter = 1; iter <= options.max_iterations; ++iter) {
        const LpSolution sol = solve(p);
        ++out.stats.lp_solves;
        out.stats.iterations = iter;
        if (sol.status != LpStatus::optimal) throw NumericalFailure("decode_alp: relaxation became infeasible");

        TraceIteration* ti = nullptr;
        if (options.trace) {
            options.trace->iterations.push_back({sol.objective, sol.bit_values, 0, 0, 0});
            ti = &options.trace->iterations.back();
            if (options.trace->capture_problems) options.trace->snapshots.emplace_back(p, sol);
        }

        if (is_integral(sol)) {
            out.word = rounded(sol.bit_values);
            out.ml_certificate = true;
            out.objective = dot(cost, out.word);
            out.stats.wall_time_s = seconds_since(t0);
            return out;
        }

        out.word = sol.bit_values;
        out.objective = sol.objective;

        if (options.prune_inactive) {
            const auto removed = prune_inactive(p, sol);
            if (pool) pool->erase_ids(removed);
            out.stats.constraints_pruned += static_cast<long>(removed.size());
            if (ti) ti->pruned = static_cast<int>(removed.size());
        }

        const int added = add_cuts(p, find_all_fs_cuts(h, sol.bit_values), pool, options.trace, out.stats, ti);
        if (added == 0) {
            out.stats.wall_time_s = seconds_since(t0);
            return out;
        }
    }

    // iteration cap: report and return the last fractional point
    out.stats.iteration_limit_hit = true;
    out.stats.wall_time_s = seconds_since(t0);
    return out;
}

// ---------------------------------------------------------------------------
// Separation decoder (auxiliary-variable form)
// ---------------------------------------------------------------------------

namespace {

struct NsaResult {
    bool feasible = true;
    DecodeOutcome out;
};

LpProblem build_nsa_problem(const BitMatrix& h, std::span<const double> cost, std::span<const BranchFix> fixes) {
    LpProblem p;
    for (std::size_t i = 0; i < h.cols(); ++i) p.add_variable(0.0, 1.0, VarKind::bit, cost[i]);
    for (const auto& f : fixes) {
        if (f.bit < 0 || static_cast<std::size_t>(f.bit) >= h.cols() || (f.value != 0 && f.value != 1))
            throw InvalidParameters("decode_nsa: bad branch fix");
        p.set_bounds(f.bit, static_cast<double>(f.value), static_cast<double>(f.value));
    }
    for (std::size_t j = 0; j < h.rows(); ++j) {
        const auto support = h.row_support(j);
        const double zcap = std::floor(static_cast<double>(support.size()) / 2.0);
        const int zvar = p.add_variable(0.0, zcap, VarKind::auxiliary, 0.0);
        LpConstraint c;
        c.sense = ConstraintSense::equal;
        c.rhs = 0.0;
        for (std::size_t i : support) c.coeffs.emplace_back(static_cast<int>(i), 1.0);
        c.coeffs.emplace_back(zvar, -2.0);
        c.origin.kind = ConstraintOrigin::Kind::equality_row;
        c.origin.row = static_cast<int>(j);
        p.add_constraint(std::move(c));
    }
    return p;
}

NsaResult nsa_run(const LinearCode& code, std::span<const double> cost, std::span<const BranchFix> fixes,
                  const DecodeOptions& options) {
    const auto t0 = Clock::now();
    const BitMatrix& h = code.h();
    LpProblem p = build_nsa_problem(h, cost, fixes);

    NsaResult res;
    DecodeOutcome& out = res.out;

    for (int iter = 1; iter <= options.max_iterations; ++iter) {
        const LpSolution sol = solve(p);
        ++out.stats.lp_solves;
        out.stats.iterations = iter;
        if (sol.status != LpStatus::optimal) {
            res.feasible = false;
            out.stats.wall_time_s = seconds_since(t0);
            return res;
        }

        TraceIteration* ti = nullptr;
        if (options.trace) {
            options.trace->iterations.push_back({sol.objective, sol.bit_values, 0, 0, 0});
            ti = &options.trace->iterations.back();
            if (options.trace->capture_problems) options.trace->snapshots.emplace_back(p, sol);
        }

        if (is_integral(sol)) {
            out.word = rounded(sol.bit_values);
            out.ml_certificate = fixes.empty();
            out.objective = dot(cost, out.word);
            out.stats.wall_time_s = seconds_since(t0);
            return res;
        }

        out.word = sol.bit_values;
        out.objective = sol.objective;

        if (options.prune_inactive) {
            const auto removed = prune_inactive(p, sol);
            out.stats.constraints_pruned += static_cast<long>(removed.size());
            if (ti) ti->pruned = static_cast<int>(removed.size());
        }

        int added = add_cuts(p, find_all_fs_cuts(h, sol.bit_values), nullptr, options.trace, out.stats, ti);
        if (added == 0)
            added = add_cuts(p, generate_rpc_cuts(h, sol.bit_values), nullptr, options.trace, out.stats, ti);
        if (added == 0) {
            // no more valid cuts: fractional outcome
            out.stats.wall_time_s = seconds_since(t0);
            return res;
        }
    }

    out.stats.iteration_limit_hit = true;
    out.stats.wall_time_s = seconds_since(t0);
    return res;
}

}  // namespace

DecodeOutcome decode_nsa(const LinearCode& code0, std::span<const double> cost,
                         std::span<const BranchFix> extra_fixes, const DecodeOptions& options) {
    check_cost_length(code0, cost);
    const LinearCode code = options.adapt_matrix ? adapt_matrix(code0, cost) : code0;
    NsaResult res = nsa_run(code, cost, extra_fixes, options);
    if (!res.feasible) throw InfeasibleProblem("decode_nsa: fixes made the problem infeasible");
    return std::move(res.out);
}

// ---------------------------------------------------------------------------
// Matrix adaptation
// ---------------------------------------------------------------------------

LinearCode adapt_matrix(const LinearCode& code, std::span<const double> cost) {
    check_cost_length(code, cost);
    std::vector<std::size_t> order(code.n());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return std::fabs(cost[a]) < std::fabs(cost[b]); });
    return code.with_matrix(row_reduce(code.h(), order), code.name());
}

// ---------------------------------------------------------------------------
// Diversity decoder
// ---------------------------------------------------------------------------

namespace detail {

std::size_t min_distance_candidate(const std::vector<std::vector<double>>& candidates,
                                   std::span<const double> received, DistanceSpace space) {
    std::size_t best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        double d2 = 0.0;
        for (std::size_t i = 0; i < received.size(); ++i) {
            const double xi = space == DistanceSpace::symbol ? 2.0 * candidates[k][i] - 1.0 : candidates[k][i];
            const double d = xi - received[i];
            d2 += d * d;
        }
        if (d2 < best_d2) {
            best_d2 = d2;
            best = k;
        }
    }
    return best;
}

}  // namespace detail

DecodeOutcome decode_diversity(const LinearCode& code, std::span<const double> cost,
                               std::span<const double> received, int attempts, RngStream& rng,
                               const DecodeOptions& options, const AutomorphismSampler* sampler) {
    check_cost_length(code, cost);
    if (received.size() != code.n()) throw LengthMismatch("decode_diversity: received length != n");
    if (attempts < 1) throw InvalidParameters("decode_diversity: attempts must be >= 1");
    const auto t0 = Clock::now();

    AutomorphismSampler local;
    if (!sampler && attempts > 1) {
        local = sampler_for_code(code);
        sampler = &local;
    }

    DecodeStats stats;
    std::vector<double> cur_cost(cost.begin(), cost.end());
    Permutation back = Permutation::identity(code.n());  // pi_1 ... pi_{i-1}
    std::vector<std::vector<double>> candidates;

    for (int i = 1; i <= attempts; ++i) {
        DecodeOutcome out = decode_nsa(code, cur_cost, {}, options);
        stats.merge(out.stats);
        stats.iterations = i;

        if (out.integral()) {
            DecodeOutcome final;
            final.word = back.apply(out.word);
            final.ml_certificate = true;
            final.objective = dot(cost, final.word);
            final.stats = stats;
            final.stats.wall_time_s = seconds_since(t0);
            return final;
        }
        candidates.push_back(back.apply(out.word));

        if (i < attempts) {
            const Permutation pi = sampler->sample(rng);
            cur_cost = pi.inverse().apply(std::span<const double>(cur_cost));
            back = Permutation::compose(back, pi);
        }
    }

    const std::size_t k = detail::min_distance_candidate(candidates, received, options.distance_space);
    DecodeOutcome final;
    final.word = candidates[k];
    final.ml_certificate = false;
    final.objective = dot(cost, final.word);
    final.stats = stats;
    final.stats.wall_time_s = seconds_since(t0);
    return final;
}

// ---------------------------------------------------------------------------
// Adaptive LP across alternative representations
// ---------------------------------------------------------------------------

DecodeOutcome decode_alp_perm(const LinearCode& code, std::span<const double> cost, int attempts, RngStream& rng,
                              const DecodeOptions& options, const AutomorphismSampler* sampler) {
    check_cost_length(code, cost);
    if (attempts < 1) throw InvalidParameters("decode_alp_perm: attempts must be >= 1");
    const auto t0 = Clock::now();

    AutomorphismSampler local;
    if (!sampler && attempts > 1) {
        local = sampler_for_code(code);
        sampler = &local;
    }

    ConstraintPool pool;
    DecodeStats stats;
    LinearCode current = code;
    DecodeOutcome out;

    for (int i = 1; i <= attempts; ++i) {
        out = decode_alp(current, cost, &pool, options);
        stats.merge(out.stats);
        stats.iterations = i;
        if (out.integral()) break;
        if (i < attempts) {
            const Permutation pi = sampler->sample(rng);
            // same code, alternative representation; accumulated cuts remain valid
            current = current.with_matrix(apply_to_columns(pi, current.h()), current.name());
        }
    }
    out.stats = stats;
    out.stats.wall_time_s = seconds_since(t0);
    return out;
}

// ---------------------------------------------------------------------------
// Branch and bound
// ---------------------------------------------------------------------------

namespace {

int pick_branch_bit(std::span<const double> x, std::span<const double> cost) {
    int best = -1;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (value_integral(x[i], kIntegralityTol)) continue;
        if (best < 0 || std::fabs(cost[i]) < std::fabs(cost[static_cast<std::size_t>(best)])) best = static_cast<int>(i);
    }
    return best;
}

struct BbState {
    const LinearCode* code = nullptr;
    std::span<const double> cost;
    DecodeOptions node_options;
    int max_depth = 0;
    double upper_bound = std::numeric_limits<double>::infinity();
    std::vector<double> incumbent;
    bool depth_limit_hit = false;
    DecodeStats stats;
};

void bb_decode(BbState& st, std::vector<BranchFix>& fixes, int depth) {
    if (depth > st.max_depth) {
        st.depth_limit_hit = true;
        return;
    }
    NsaResult res = nsa_run(*st.code, st.cost, fixes, st.node_options);
    ++st.stats.bb_nodes;
    st.stats.merge(res.out.stats);

    if (!res.feasible) {
        ++st.stats.pruned_infeasible;
        return;
    }
    const double node_obj = res.out.objective;
    if (res.out.integral()) {
        ++st.stats.pruned_integral;
        if (node_obj < st.upper_bound) {
            st.upper_bound = node_obj;
            st.incumbent = rounded(res.out.word);
        }
        return;
    }
    if (node_obj >= st.upper_bound) {
        ++st.stats.pruned_bound;
        return;
    }
    const int bit = pick_branch_bit(res.out.word, st.cost);
    if (bit < 0) return;  // numerically integral after all; nothing to branch on
    for (int v = 0; v <= 1; ++v) {
        fixes.push_back({bit, v});
        bb_decode(st, fixes, depth + 1);
        fixes.pop_back();
    }
}

}  // namespace

DecodeOutcome decode_bb(const LinearCode& code0, std::span<const double> cost, int max_depth,
                        const DecodeOptions& options) {
    check_cost_length(code0, cost);
    if (max_depth < 0) throw InvalidParameters("decode_bb: max_depth must be >= 0");
    const auto t0 = Clock::now();

    // adaptation happens once, before the search; nodes reuse the matrix
    const LinearCode code = options.adapt_matrix ? adapt_matrix(code0, cost) : code0;
    DecodeOptions node_options = options;
    node_options.adapt_matrix = false;

    NsaResult root = nsa_run(code, cost, {}, node_options);
    if (!root.feasible) throw NumericalFailure("decode_bb: root relaxation infeasible");

    if (root.out.integral()) {
        DecodeOutcome out = std::move(root.out);
        out.word = rounded(out.word);
        out.ml_certificate = true;
        out.objective = dot(cost, out.word);
        out.stats.wall_time_s = seconds_since(t0);
        return out;
    }

    BbState st;
    st.code = &code;
    st.cost = cost;
    st.node_options = node_options;
    st.max_depth = max_depth;
    st.stats = root.out.stats;

    const int bit = pick_branch_bit(root.out.word, cost);
    std::vector<BranchFix> fixes;
    for (int v = 0; v <= 1; ++v) {
        fixes.assign(1, {bit, v});
        bb_decode(st, fixes, 1);
    }

    DecodeOutcome out;
    out.stats = st.stats;
    out.stats.depth_limit_hit = st.depth_limit_hit;
    if (!st.incumbent.empty()) {
        out.word = st.incumbent;
        out.ml_certificate = !st.depth_limit_hit;
        out.objective = dot(cost, out.word);
    } else {
        out.word = root.out.word;
        out.ml_certificate = false;
        out.objective = root.out.objective;
    }
    out.stats.wall_time_s = seconds_since(t0);
    return out;
}

int default_bb_depth(const LinearCode& code) { return code.name() == "bch_63_36" ? 6 : 4; }

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

DecodeOutcome decode_preset(const std::string& name, const LinearCode& code, std::span<const double> cost,
                            std::span<const double> received, RngStream& rng, const PresetOverrides& ov) {
    DecodeOptions opt;
    opt.distance_space = ov.distance_space;
    opt.trace = ov.trace;
    if (name == "A") {
        opt.adapt_matrix = ov.adapt.value_or(true);
        opt.prune_inactive = ov.prune.value_or(true);
        return decode_diversity(code, cost, received, ov.diversity_attempts.value_or(5), rng, opt);
    }
    if (name == "B") {
        opt.adapt_matrix = ov.adapt.value_or(true);
        opt.prune_inactive = ov.prune.value_or(false);
        return decode_bb(code, cost, ov.bb_depth.value_or(default_bb_depth(code)), opt);
    }
    if (name == "C") {
        opt.adapt_matrix = ov.adapt.value_or(true);
        opt.prune_inactive = ov.prune.value_or(true);
        return decode_nsa(code, cost, {}, opt);
    }
    throw UnknownPreset("decode_preset: unknown preset " + name);
}

// ---------------------------------------------------------------------------
// Tanner-graph diagnostic
// ---------------------------------------------------------------------------

bool fractional_tanner_cycle_exists(const BitMatrix& h, std::span<const double> x, double tol) {
    if (x.size() != h.cols()) throw LengthMismatch("fractional_tanner_cycle_exists: length mismatch");
    std::vector<int> parent(x.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };

    for (std::size_t j = 0; j < h.rows(); ++j) {
        std::vector<int> frac;
        for (std::size_t i : h.row_support(j))
            if (!value_integral(x[i], tol)) frac.push_back(static_cast<int>(i));
        if (frac.size() < 2) continue;
        // connecting >= 2 fractional bits through this check closes a cycle
        // iff any pair is already connected
        for (std::size_t t = 1; t < frac.size(); ++t) {
            const int a = find(frac[0]), b = find(frac[t]);
            if (a == b) return true;
            parent[b] = a;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Worked example
// ---------------------------------------------------------------------------

const std::vector<double>& worked_example_received() {
    static const std::vector<double> r = {0.798337, 1.421758, -1.240177, -0.771128,
                                          -1.745193, 0.554868, 0.983861, -0.404989};
    return r;
}

WorkedExample run_worked_example() {
    WorkedExample ex{builtin_code("hamming_8_4_paper"), worked_example_received(), {}, {}, false};
    std::vector<double> cost(ex.received.size());
    for (std::size_t i = 0; i < cost.size(); ++i) cost[i] = -ex.received[i];
    ex.bb = decode_bb(ex.code, cost, 3);
    ex.ml = decode_ml_bruteforce(ex.code, cost);
    ex.match = ex.bb.integral() && ex.bb.hard_word() == ex.ml.hard_word();
    return ex;
}

}  // namespace hdlp

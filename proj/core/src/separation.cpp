#include "hdlp/separation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <sstream>

#include "hdlp/errors.hpp"

namespace hdlp {

LpConstraint fs_to_lp(const FsCut& cut) {
    if (cut.odd_set.size() % 2 == 0) throw EvenSet("fs_to_lp: |S| must be odd");
    LpConstraint c;
    c.sense = ConstraintSense::less_equal;
    c.rhs = static_cast<double>(cut.odd_set.size()) - 1.0;
    std::set<int> s(cut.odd_set.begin(), cut.odd_set.end());
    for (std::size_t i = 0; i < cut.source_row.size(); ++i) {
        if (!cut.source_row[i]) continue;
        c.coeffs.emplace_back(static_cast<int>(i), s.count(static_cast<int>(i)) ? 1.0 : -1.0);
    }
    for (int i : cut.odd_set)
        if (i < 0 || static_cast<std::size_t>(i) >= cut.source_row.size() || !cut.source_row[i])
            throw InvalidParameters("fs_to_lp: odd set not inside the row support");
    c.origin.kind = cut.kind;
    c.origin.row = cut.source_row_index;
    c.origin.source_row = cut.source_row;
    c.origin.odd_set = cut.odd_set;
    return c;
}

namespace {

/// Left-hand side of the forbidden-set inequality for subset S at point x.
double fs_lhs(std::span<const std::size_t> support, const std::vector<std::uint8_t>& in_s,
              std::span<const double> x) {
    double lhs = 0.0;
    for (std::size_t i : support) lhs += in_s[i] ? (1.0 - x[i]) : x[i];
    return lhs;
}

}  // namespace

std::optional<FsCut> find_fs_cut(std::span<const std::uint8_t> row, std::span<const double> x, int row_index) {
    const std::size_t n = row.size();
    if (x.size() != n) throw LengthMismatch("find_fs_cut: point length != row length");

    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < n; ++i)
        if (row[i]) support.push_back(i);
    if (support.empty()) return std::nullopt;

    std::vector<std::uint8_t> in_s(n, 0);
    std::size_t s_size = 0;
    for (std::size_t i : support) {
        if (x[i] > 0.5) {
            in_s[i] = 1;
            ++s_size;
        }
    }

    if (s_size % 2 == 0) {
        // repair to odd parity: drop the member nearest 1/2 or add the
        // non-member nearest 1/2, whichever leaves the smaller LHS
        std::size_t best_remove = n, best_add = n;
        for (std::size_t i : support) {
            if (in_s[i]) {
                if (best_remove == n || std::fabs(x[i] - 0.5) < std::fabs(x[best_remove] - 0.5)) best_remove = i;
            } else {
                if (best_add == n || std::fabs(x[i] - 0.5) < std::fabs(x[best_add] - 0.5)) best_add = i;
            }
        }
        // removing i adds (2 x_i - 1) to the LHS; adding i adds (1 - 2 x_i)
        const double cost_remove = best_remove == n ? 1e300 : 2.0 * x[best_remove] - 1.0;
        const double cost_add = best_add == n ? 1e300 : 1.0 - 2.0 * x[best_add];
        if (cost_remove <= cost_add) {
            in_s[best_remove] = 0;
            --s_size;
        } else {
            in_s[best_add] = 1;
            ++s_size;
        }
    }

    if (fs_lhs(support, in_s, x) >= 1.0 - kCutViolationTol) return std::nullopt;

    FsCut cut;
    cut.source_row.assign(row.begin(), row.end());
    for (std::size_t i : support)
        if (in_s[i]) cut.odd_set.push_back(static_cast<int>(i));
    cut.source_row_index = row_index;
    return cut;
}

std::vector<FsCut> find_all_fs_cuts(const BitMatrix& h, std::span<const double> x) {
    std::vector<FsCut> cuts;
    for (std::size_t r = 0; r < h.rows(); ++r) {
        if (h.row_is_zero(r)) continue;
        const auto bits = h.row_bits(r);
        if (auto cut = find_fs_cut(bits, x, static_cast<int>(r))) cuts.push_back(std::move(*cut));
    }
    return cuts;
}

std::vector<FsCut> generate_rpc_cuts(const BitMatrix& h, std::span<const double> x, double integrality_tol) {
    if (x.size() != h.cols()) throw LengthMismatch("generate_rpc_cuts: point length != columns");

    std::vector<std::size_t> fractional;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = std::min(std::fabs(x[i]), std::fabs(x[i] - 1.0));
        if (d > integrality_tol) fractional.push_back(i);
    }
    if (fractional.empty()) return {};

    std::stable_sort(fractional.begin(), fractional.end(), [&](std::size_t a, std::size_t b) {
        return std::fabs(x[a] - 0.5) < std::fabs(x[b] - 0.5);
    });

    const BitMatrix reduced = row_reduce(h, fractional);

    std::vector<std::uint8_t> is_fractional(x.size(), 0);
    for (std::size_t i : fractional) is_fractional[i] = 1;

    std::set<std::vector<std::uint8_t>> seen;
    std::vector<FsCut> cuts;
    for (std::size_t r = 0; r < reduced.rows(); ++r) {
        if (reduced.row_is_zero(r)) continue;
        std::size_t frac_in_support = 0;
        for (std::size_t i : reduced.row_support(r)) frac_in_support += is_fractional[i];
        if (frac_in_support != 1) continue;
        auto bits = reduced.row_bits(r);
        if (!seen.insert(bits).second) continue;  // duplicate candidate row
        if (auto cut = find_fs_cut(bits, x, -1)) {
            cut->kind = ConstraintOrigin::Kind::rpc_cut;
            cuts.push_back(std::move(*cut));
        }
    }
    return cuts;
}

std::uint64_t full_fs_count(const BitMatrix& h) {
    std::uint64_t total = 0;
    for (std::size_t r = 0; r < h.rows(); ++r) {
        const std::size_t d = h.row_weight(r);
        if (d == 0) continue;
        if (d > 16) throw DegreeTooLarge("full_fs_count: row degree > 16");
        total += std::uint64_t{1} << (d - 1);
    }
    return total;
}

std::vector<LpConstraint> enumerate_full_fs(const BitMatrix& h) {
    std::vector<LpConstraint> out;
    for (std::size_t r = 0; r < h.rows(); ++r) {
        const auto support = h.row_support(r);
        const std::size_t d = support.size();
        if (d == 0) continue;
        if (d > 16) throw DegreeTooLarge("enumerate_full_fs: row degree > 16");
        const auto bits = h.row_bits(r);
        for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
            if (std::popcount(mask) % 2 == 0) continue;
            FsCut cut;
            cut.source_row = bits;
            cut.source_row_index = static_cast<int>(r);
            for (std::size_t t = 0; t < d; ++t)
                if ((mask >> t) & 1) cut.odd_set.push_back(static_cast<int>(support[t]));
            out.push_back(fs_to_lp(cut));
        }
    }
    return out;
}

std::vector<std::uint64_t> prune_inactive(LpProblem& problem, const LpSolution& sol) {
    if (sol.status != LpStatus::optimal) throw InvalidParameters("prune_inactive: solution not optimal");
    std::vector<std::uint64_t> to_remove;
    for (const auto& c : problem.constraints()) {
        if (!c.origin.prunable()) continue;
        if (c.sense != ConstraintSense::less_equal) continue;
        auto it = sol.slack.find(c.id);
        if (it == sol.slack.end()) continue;  // added after this solve
        if (it->second > kInactiveSlackTol) to_remove.push_back(c.id);
    }
    problem.remove_constraints(to_remove, RemovalPolicy::inactive_pruning);
    return to_remove;
}

std::string ConstraintPool::signature(const LpConstraint& c) {
    std::ostringstream os;
    os << (c.sense == ConstraintSense::equal ? "e" : "l") << c.rhs;
    for (const auto& [v, coef] : c.coeffs) os << '|' << v << ':' << coef;
    return os.str();
}

bool ConstraintPool::contains(const LpConstraint& c) const { return by_signature_.count(signature(c)) != 0; }

void ConstraintPool::insert(const LpConstraint& c) {
    const std::string sig = signature(c);
    if (by_signature_.count(sig)) return;
    by_signature_[sig] = cuts_.size();
    sig_of_id_[c.id] = sig;
    cuts_.push_back(c);
    ++added_;
}

void ConstraintPool::rebind(std::vector<LpConstraint> cuts) {
    cuts_ = std::move(cuts);
    by_signature_.clear();
    sig_of_id_.clear();
    for (std::size_t i = 0; i < cuts_.size(); ++i) {
        const std::string sig = signature(cuts_[i]);
        by_signature_[sig] = i;
        sig_of_id_[cuts_[i].id] = sig;
    }
}

void ConstraintPool::erase_ids(std::span<const std::uint64_t> ids) {
    for (std::uint64_t id : ids) {
        auto it = sig_of_id_.find(id);
        if (it == sig_of_id_.end()) continue;
        const std::size_t pos = by_signature_.at(it->second);
        const std::size_t last = cuts_.size() - 1;
        if (pos != last) {
            cuts_[pos] = std::move(cuts_[last]);
            by_signature_[signature(cuts_[pos])] = pos;
        }
        cuts_.pop_back();
        by_signature_.erase(it->second);
        sig_of_id_.erase(it);
        ++pruned_;
    }
}

}  // namespace hdlp

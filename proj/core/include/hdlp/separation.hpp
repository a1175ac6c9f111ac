#ifndef HDLP_SEPARATION_HPP
#define HDLP_SEPARATION_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "hdlp/bit_matrix.hpp"
#include "hdlp/lp.hpp"

namespace hdlp {

/// Violation threshold below which a candidate cut is not emitted; keeps
/// floating-point noise from producing cut loops.
inline constexpr double kCutViolationTol = 1e-9;

/// A forbidden-set inequality: for a dual word (parity check) with support
/// N and an odd subset S of N,
///     sum_{i in N\S} x_i + sum_{i in S} (1 - x_i) >= 1.
struct FsCut {
    std::vector<std::uint8_t> source_row;  // dual word, length n
    std::vector<int> odd_set;              // S, sorted ascending, |S| odd
    int source_row_index = -1;             // row of H when it came from one

    ConstraintOrigin::Kind kind = ConstraintOrigin::Kind::fs_cut;
};

/// <=-form: sum_{i in S} x_i - sum_{i in N\S} x_i <= |S| - 1.
/// Throws EvenSet when |S| is even.
LpConstraint fs_to_lp(const FsCut& cut);

/// Most-violated odd set for one dual word at the point x: take
/// V = {i in support : x_i > 1/2}; if |V| is even, repair it by removing the
/// member closest to 1/2 or adding the non-member closest to 1/2, whichever
/// leaves the smaller inequality left-hand side (ties: removal first, then
/// lowest index). Returns the cut only when violated by more than the
/// threshold; absence of a cut is a normal outcome.
std::optional<FsCut> find_fs_cut(std::span<const std::uint8_t> row, std::span<const double> x, int row_index = -1);

/// At most one cut per row of H, rows processed top to bottom.
std::vector<FsCut> find_all_fs_cuts(const BitMatrix& h, std::span<const double> x);

/// Redundant-parity-check cuts: Gauss-eliminate a working copy of H pivoting
/// on the fractional coordinates of x nearest 1/2 first; rows of the result
/// whose support contains exactly one fractional index are candidate dual
/// words (they stay in the row space of H). Candidates are deduplicated by
/// bit pattern and passed through find_fs_cut.
std::vector<FsCut> generate_rpc_cuts(const BitMatrix& h, std::span<const double> x,
                                     double integrality_tol = kIntegralityTol);

/// Every FS constraint of every row: count per row is 2^(degree-1).
/// Rows of degree > 16 throw DegreeTooLarge; all-zero rows contribute none.
std::vector<LpConstraint> enumerate_full_fs(const BitMatrix& h);

/// Number of constraints enumerate_full_fs would produce.
std::uint64_t full_fs_count(const BitMatrix& h);

/// Removes every FS/RPC cut with slack above the inactive threshold.
/// Equality rows and branch fixes are never touched. Returns removed ids.
/// Dropping inactive constraints cannot change the optimum, which re-solving
/// verifies in the test suite.
std::vector<std::uint64_t> prune_inactive(LpProblem& problem, const LpSolution& sol);

/// Active cut bookkeeping for a decode: deduplication by constraint
/// signature plus added/pruned counters. Mirrors the cut subset of one
/// LpProblem (or of a sequence of problems, for the permuted-matrix decoder
/// that carries cuts across attempts).
class ConstraintPool {
  public:
    /// True if an identical cut (same coefficients, rhs, sense) is pooled.
    bool contains(const LpConstraint& c) const;
    void insert(const LpConstraint& c);           // after the problem assigned its id
    void erase_ids(std::span<const std::uint64_t> ids);
    /// Replace contents with the same cuts re-added to a fresh problem
    /// (new ids); counters are preserved.
    void rebind(std::vector<LpConstraint> cuts);

    const std::vector<LpConstraint>& cuts() const { return cuts_; }
    int added_total() const { return added_; }
    int pruned_total() const { return pruned_; }

  private:
    static std::string signature(const LpConstraint& c);
    std::vector<LpConstraint> cuts_;
    std::unordered_map<std::string, std::size_t> by_signature_;
    std::unordered_map<std::uint64_t, std::string> sig_of_id_;
    int added_ = 0;
    int pruned_ = 0;
};

}  // namespace hdlp

#endif  // HDLP_SEPARATION_HPP

#ifndef HDLP_DECODERS_HPP
#define HDLP_DECODERS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hdlp/automorphism.hpp"
#include "hdlp/linear_code.hpp"
#include "hdlp/lp.hpp"
#include "hdlp/rng.hpp"
#include "hdlp/separation.hpp"

namespace hdlp {

struct DecodeStats {
    long lp_solves = 0;
    long cuts_fs = 0;
    long cuts_rpc = 0;
    long iterations = 0;
    long bb_nodes = 0;
    long pruned_infeasible = 0;
    long pruned_bound = 0;
    long pruned_integral = 0;
    long constraints_pruned = 0;
    bool depth_limit_hit = false;
    bool iteration_limit_hit = false;
    double wall_time_s = 0.0;

    void merge(const DecodeStats& o);
};

struct DecodeOutcome {
    std::vector<double> word;  // n reals; integral outcomes carry exact 0/1
    bool ml_certificate = false;
    double objective = 0.0;
    DecodeStats stats;

    bool integral(double tol = kIntegralityTol) const;
    std::vector<std::uint8_t> hard_word() const;  // per-coordinate threshold at 1/2
};

struct BranchFix {
    int bit = 0;
    int value = 0;  // 0 or 1
};

/// One LP solve inside a cut loop, for trace-based verification.
struct TraceIteration {
    double objective = 0.0;
    std::vector<double> x;  // bit variables
    int cuts_fs_added = 0;
    int cuts_rpc_added = 0;
    int pruned = 0;
};

/// Optional instrumentation: per-iteration objectives/solutions, copies of
/// every cut emitted, and (when capture_problems is set) full problem/solution
/// snapshots after each solve.
struct DecodeTrace {
    std::vector<TraceIteration> iterations;
    std::vector<LpConstraint> cuts;
    bool capture_problems = false;
    std::vector<std::pair<LpProblem, LpSolution>> snapshots;
};

/// For the diversity decoder's fractional fallback: measure candidate
/// distance to the received word either directly over [0,1]^n (as specified)
/// or after mapping to symbol space x -> 2x - 1.
enum class DistanceSpace { unit_cube, symbol };

struct DecodeOptions {
    bool adapt_matrix = false;
    bool prune_inactive = false;
    int max_iterations = 200;
    DistanceSpace distance_space = DistanceSpace::unit_cube;
    DecodeTrace* trace = nullptr;
};

// ---------------------------------------------------------------------------
// Decoders
// ---------------------------------------------------------------------------

/// Exhaustive argmin of <c, x> over all 2^k codewords; ties go to the
/// lexicographically smallest word. Throws DimensionTooLarge for k > 24.
DecodeOutcome decode_ml_bruteforce(const LinearCode& code, std::span<const double> cost);

/// One LP over the complete FS description plus box bounds.
DecodeOutcome decode_static_lp(const LinearCode& code, std::span<const double> cost);

/// Adaptive LP decoding: solve over box bounds plus the cut pool, add the
/// violated FS inequalities of H, repeat until integral or no cut separates.
/// A caller-supplied pool carries cuts across calls (used by the
/// alternative-representation decoder); pass null for a private pool.
DecodeOutcome decode_alp(const LinearCode& code, std::span<const double> cost, ConstraintPool* pool = nullptr,
                         const DecodeOptions& options = {});

/// Separation decoding on the auxiliary-variable form: equality rows
/// H x - 2 z = 0 with z_j in [0, floor(d_j / 2)], FS cuts first, redundant
/// parity check cuts when no FS cut separates. extra_fixes pin bits via
/// bounds (used by branch and bound). Throws InfeasibleProblem only when
/// fixes are present.
DecodeOutcome decode_nsa(const LinearCode& code, std::span<const double> cost,
                         std::span<const BranchFix> extra_fixes = {}, const DecodeOptions& options = {});

/// Parity-check matrix diversity: up to N separation-decoder attempts, the
/// cost vector permuted by a fresh automorphism between attempts; an integral
/// result is permuted back and certified. If every attempt stays fractional,
/// returns the mapped-back candidate closest to the received word.
/// With sampler == nullptr a default generator set is derived from the code.
DecodeOutcome decode_diversity(const LinearCode& code, std::span<const double> cost,
                               std::span<const double> received, int attempts, RngStream& rng,
                               const DecodeOptions& options = {}, const AutomorphismSampler* sampler = nullptr);

/// Adaptive LP decoding across alternative parity-check representations:
/// after a fractional attempt the columns of H are permuted by a random
/// automorphism and decoding restarts, keeping every constraint generated in
/// previous attempts.
DecodeOutcome decode_alp_perm(const LinearCode& code, std::span<const double> cost, int attempts, RngStream& rng,
                              const DecodeOptions& options = {}, const AutomorphismSampler* sampler = nullptr);

/// Depth-first branch and bound over the separation decoder. Each node
/// re-runs the separation decoder from scratch with only the equality rows
/// and its ancestors' bit fixes. Children fix the fractional bit with the
/// smallest |cost| (zero branch first). Pruning: infeasibility, bound
/// (node objective >= incumbent), integrality. A node deeper than max_depth
/// returns immediately and disqualifies the ML certificate.
DecodeOutcome decode_bb(const LinearCode& code, std::span<const double> cost, int max_depth,
                        const DecodeOptions& options = {});

/// Reliability-based preprocessing: Gauss-eliminate H pivoting on the
/// columns with smallest |cost| first, so the unreliable coordinates meet a
/// sparse (unit) submatrix. Same code, performed once prior to decoding.
LinearCode adapt_matrix(const LinearCode& code, std::span<const double> cost);

struct PresetOverrides {
    std::optional<int> diversity_attempts;  // preset A, default 5
    std::optional<int> bb_depth;            // preset B, default per code
    std::optional<bool> adapt;
    std::optional<bool> prune;
    DistanceSpace distance_space = DistanceSpace::unit_cube;
    DecodeTrace* trace = nullptr;
};

/// Composed decoders:
///   A: diversity (N=5) + matrix adaptation + inactive-constraint pruning
///   B: branch and bound + matrix adaptation (depth 4; 6 for bch_63_36)
///   C: separation decoder + matrix adaptation + inactive-constraint pruning
/// Throws UnknownPreset.
DecodeOutcome decode_preset(const std::string& name, const LinearCode& code, std::span<const double> cost,
                            std::span<const double> received, RngStream& rng, const PresetOverrides& ov = {});

int default_bb_depth(const LinearCode& code);

/// A fractional LP-decoder output forces a cycle in the Tanner graph
/// restricted to fractional bit nodes and their checks; used by tests.
bool fractional_tanner_cycle_exists(const BitMatrix& h, std::span<const double> x,
                                    double tol = kIntegralityTol);

namespace detail {
/// Index of the candidate minimizing Euclidean distance to the received
/// word; ties go to the earliest candidate.
std::size_t min_distance_candidate(const std::vector<std::vector<double>>& candidates,
                                   std::span<const double> received, DistanceSpace space);
}  // namespace detail

// ---------------------------------------------------------------------------
// Built-in worked example (branch-and-bound walkthrough on the [8,4,4] code)
// ---------------------------------------------------------------------------

struct WorkedExample {
    LinearCode code;
    std::vector<double> received;
    DecodeOutcome bb;  // branch and bound, depth 3
    DecodeOutcome ml;  // exhaustive reference
    bool match = false;
};

const std::vector<double>& worked_example_received();
WorkedExample run_worked_example();

}  // namespace hdlp

#endif  // HDLP_DECODERS_HPP

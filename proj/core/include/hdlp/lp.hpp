#ifndef HDLP_LP_HPP
#define HDLP_LP_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace hdlp {

enum class VarKind { bit, auxiliary };

struct LpVariable {
    int index = 0;
    double lower = 0.0;
    double upper = 0.0;
    VarKind kind = VarKind::bit;
};

enum class ConstraintSense { equal, less_equal };

/// Where a constraint came from. Equality rows and branching fixes are
/// structural and must survive inactive-constraint pruning; cuts may not.
struct ConstraintOrigin {
    enum class Kind { equality_row, fs_cut, rpc_cut, branch };
    Kind kind = Kind::equality_row;
    int row = -1;                          // equality_row: parity-check row index
    std::vector<std::uint8_t> source_row;  // fs/rpc: the dual word the cut came from
    std::vector<int> odd_set;              // fs/rpc: the odd subset S
    int bit = -1;                          // branch: fixed bit
    int value = -1;                        // branch: fixed value

    bool prunable() const { return kind == Kind::fs_cut || kind == Kind::rpc_cut; }
};

struct LpConstraint {
    std::uint64_t id = 0;  // assigned by LpProblem::add_constraint
    ConstraintSense sense = ConstraintSense::less_equal;
    std::vector<std::pair<int, double>> coeffs;  // sparse, sorted by variable
    double rhs = 0.0;
    ConstraintOrigin origin;
};

enum class LpStatus { optimal, infeasible };

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    std::vector<double> values;      // all variables
    std::vector<double> bit_values;  // VarKind::bit prefix, convenience copy
    double objective = 0.0;
    std::unordered_map<std::uint64_t, double> slack;  // rhs - lhs for <=, 0 for =
    bool is_vertex = false;
};

enum class RemovalPolicy { any, inactive_pruning };

/// Minimization LP over box-bounded variables. Value-semantic; solving never
/// mutates the problem.
class LpProblem {
  public:
    int add_variable(double lower, double upper, VarKind kind, double objective_coeff = 0.0);

    void set_objective(int var, double coeff);
    void set_bounds(int var, double lower, double upper);

    std::uint64_t add_constraint(LpConstraint c);  // returns assigned id
    std::vector<std::uint64_t> add_constraints(std::vector<LpConstraint> cs);

    /// Throws UnknownConstraintId for missing ids; under the inactive_pruning
    /// policy, throws RemovalForbidden for equality rows and branch fixes,
    /// which are always active by definition.
    void remove_constraints(std::span<const std::uint64_t> ids, RemovalPolicy policy = RemovalPolicy::any);

    std::size_t num_variables() const { return vars_.size(); }
    std::size_t num_bit_variables() const { return n_bits_; }
    const std::vector<LpVariable>& variables() const { return vars_; }
    const std::vector<double>& objective() const { return obj_; }
    const std::vector<LpConstraint>& constraints() const { return constraints_; }
    const LpConstraint& constraint_by_id(std::uint64_t id) const;
    bool has_constraint(std::uint64_t id) const;

  private:
    std::vector<LpVariable> vars_;
    std::vector<double> obj_;
    std::vector<LpConstraint> constraints_;
    std::unordered_map<std::uint64_t, std::size_t> index_of_id_;
    std::uint64_t next_id_ = 1;
    std::size_t n_bits_ = 0;
};

/// Feasibility tolerance of the engine (constraint satisfaction at optima).
inline constexpr double kLpFeasTol = 1e-9;
/// Default integrality tolerance for bit variables.
inline constexpr double kIntegralityTol = 1e-6;
/// A constraint with more slack than this counts as inactive.
inline constexpr double kInactiveSlackTol = 1e-7;

/// Two-phase bounded-variable primal simplex on a dense tableau. Returns a
/// basic feasible optimum (a vertex), with per-constraint slacks; decoder
/// semantics (integrality test, pseudocodeword detection) depend on the
/// vertex property, so no interior-point shortcut is acceptable here.
/// Bland's rule guards against cycling; ratio ties break toward the lowest
/// variable index, which makes the returned vertex reproducible.
/// Throws LpUnbounded (a construction bug for box-bounded decoder LPs) and
/// NumericalFailure.
LpSolution solve(const LpProblem& problem);

/// True iff every bit variable is within tol of an integer.
bool is_integral(const LpSolution& sol, double tol = kIntegralityTol);

/// Debug dump in LP text format (minimize / subject to / bounds sections).
void write_lp_format(const LpProblem& problem, std::ostream& out);

}  // namespace hdlp

#endif  // HDLP_LP_HPP

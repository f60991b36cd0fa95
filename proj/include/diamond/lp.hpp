#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "diamond/channel.hpp"

namespace diamond::lp {

enum class Sense { maximize, minimize };
enum class Relation { less_equal, equal, greater_equal };
enum class Status { optimal, infeasible, unbounded };

inline constexpr double free_variable = -std::numeric_limits<double>::infinity();

/// Dense LP. Variables have lower bound 0 or -infinity and no upper bound.
struct LinearProgram {
    Sense sense = Sense::maximize;
    std::vector<double> objective;
    std::vector<std::vector<double>> constraints;
    std::vector<double> rhs;
    std::vector<Relation> relations;
    std::vector<double> lower_bounds;

    std::size_t num_variables() const { return objective.size(); }
    std::size_t num_rows() const { return constraints.size(); }

    /// Throws StructuralError on any dimension mismatch or unsupported bound.
    void validate() const;
};

struct LpSolution {
    Status status = Status::infeasible;
    double objective_value = 0.0;
    std::vector<double> variables;
    std::vector<std::size_t> active_constraints;
    /// One multiplier per row, in the sign convention of the original problem
    /// (objective = rhs . duals at optimality). Empty unless produced by the simplex.
    std::vector<double> duals;
};

struct StructuralError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SolverFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr double feasibility_tolerance = 1e-9;

/// Two-phase dense tableau simplex with Bland's rule.
/// Limits: 32 variables, 64 rows.
LpSolution solve_simplex(const LinearProgram& lp);

/// Brute force over every basis of n active constraints. Limits: 12 variables, 24 rows.
/// The caller must know the problem is bounded; an unbounded objective is not detected.
LpSolution enumerate_vertices(const LinearProgram& lp);

/// Largest violation of any row or bound at x, measured on rows scaled to unit max-norm.
double max_violation(const LinearProgram& lp, const std::vector<double>& x);

/// Largest complementary-slackness product |y_i * slack_i| and |x_j * reduced_cost_j|
/// for the pair (x, y); also includes any dual sign violation.
double complementary_slackness_residual(const LinearProgram& lp, const std::vector<double>& x,
                                        const std::vector<double>& y);

/// The cut-set program over (t1, t2, t3, t4, R): maximize R subject to the four cuts
/// and t1 + t2 + t3 + t4 = 1.
LinearProgram build_cutset_primal(const LinkCapacities& caps);

/// The dual program over (tau1, .., tau4, R): minimize R subject to R at least each
/// dual row and the tau summing to 1.
LinearProgram build_cutset_dual(const LinkCapacities& caps);

/// The 5x5 matrix A of the primal in the form max c'x, Ax <= b, x >= 0, with the
/// last row holding the time-sharing constraint. The dual has the same matrix.
std::array<std::array<double, 5>, 5> cutset_matrix(const LinkCapacities& caps);

/// The four cut values for schedule t. The cut-set objective at t is their minimum.
std::array<double, 4> cut_values(const LinkCapacities& caps, const std::array<double, 4>& t);

/// The four dual rows for tau. Their maximum upper-bounds the cut-set optimum.
std::array<double, 4> dual_rows(const LinkCapacities& caps, const std::array<double, 4>& tau);

double cutset_optimum(const LinkCapacities& caps);

struct GridResult {
    std::array<double, 4> schedule{};
    double rate = -std::numeric_limits<double>::infinity();
};

/// Exhaustive scan of the 3-simplex at spacing 1/resolution (resolution >= 10).
GridResult grid_search_schedule(const std::function<double(const std::array<double, 4>&)>& rate_fn,
                                int resolution);

}  // namespace diamond::lp

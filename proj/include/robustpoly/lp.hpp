#pragma once

#include <limits>
#include <vector>

namespace robustpoly::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class LPStatus { Optimal, Infeasible, Unbounded, MaxIterations };

/// Dense LP in standard inequality form:
///   minimize objective . v   subject to   constraint_matrix v <= rhs,
/// with optional per-variable bounds (empty vectors mean all free).
struct LPProblem {
  std::vector<double> objective;
  std::vector<std::vector<double>> constraint_matrix;  // one row per constraint
  std::vector<double> rhs;
  std::vector<double> lower;  // -kInf entries for unbounded below
  std::vector<double> upper;  // +kInf entries for unbounded above

  std::size_t rows() const { return constraint_matrix.size(); }
  std::size_t cols() const { return objective.size(); }
};

struct LPSolution {
  LPStatus status = LPStatus::Infeasible;
  std::vector<double> v;
  double objective_value = 0.0;
  long iterations = 0;
};

/// Two-phase dense simplex (Dantzig rule, Bland fallback after
/// 2(rows+cols) pivots, iteration cap 50(rows+cols)).  Tall problems
/// whose variables are all free are solved through their dual so the
/// working tableau stays (cols+2) x rows; the primal solution is read
/// off the dual multipliers.
LPSolution solve(const LPProblem& prob);

/// Equality-form problem, the solver's native computational shape:
///   minimize c . z   subject to   E z = f,  0 <= z <= u  (u may be +inf).
struct EqProblem {
  std::vector<double> c;
  std::vector<std::vector<double>> rows;  // E, one entry per equality
  std::vector<double> f;
  std::vector<double> u;  // empty means all +inf
};

struct EqSolution {
  LPStatus status = LPStatus::Infeasible;
  std::vector<double> z;
  double objective_value = 0.0;
  std::vector<double> duals;  // one multiplier per equality row
  long iterations = 0;
};

/// The simplex core.  Exposed for fits that are naturally expressed in
/// equality form (the weighted least-absolute-deviations dual).
EqSolution solve_equality(const EqProblem& prob, long max_iterations = -1);

}  // namespace robustpoly::lp

#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "robustpoly/cheb.hpp"
#include "robustpoly/partition.hpp"

namespace robustpoly {

struct DegenerateNodesError : std::runtime_error {
  DegenerateNodesError() : std::runtime_error("fewer distinct nodes than degree + 1") {}
};

/// Configuration for the complete recovery procedure.
struct FitConfig {
  int degree = 0;
  double epsilon = 0.25;  // in (0, 1/2)
  double alpha = 0.25;    // in (0, 1/2)
  std::optional<int> m_override;
  std::optional<int> max_rounds;
  // Start the refinement rounds from the zero polynomial instead of the
  // L1 fit.  The round count then tracks the signal-to-noise ratio
  // rather than the degree, so this is exposed for experiments only.
  bool skip_l1 = false;

  /// Default partition size ceil(8 (d+1) / epsilon), never below d+1.
  /// The leading 8 is a measured constant: large enough that bucketed
  /// averages of |p| track the continuous L1 norm within epsilon for
  /// degrees up to ~40.
  int partition_size() const;
  /// ceil(log(4 (d+1)^2) / log(1/epsilon)) + 2 refinement rounds: enough
  /// to contract the initial residual, whose sup norm can exceed its L1
  /// norm by a (d+1)^2 factor, below the target scale.
  int round_count() const;
};

struct RoundStats {
  int index = 0;  // number of refine rounds applied before this snapshot
  double residual_linf_estimate = 0.0;  // max_j |median residual in I_j|
  double residual_l1_estimate = 0.0;    // sum_j |I_j| |median residual in I_j|
};

struct FitReport {
  std::vector<RoundStats> rounds;
  ChebPoly final_poly;
  ChebPoly l1_init_poly;
  bool converged = true;  // false if the estimate rose two rounds in a row
};

/// Weighted least-absolute-deviations fit over degree-d Chebyshev
/// polynomials: argmin_q sum_j (|I_j| / |S_j|) sum_{i in S_j} |y_i - q(x_i)|.
/// Solved as a linear program (box-constrained dual of the slack form).
ChebPoly l1_fit(const SampleSet& s, const Partition& part, int degree);

/// Per-interval medians of y_i - center(x_i) (lower median for even
/// counts), reported at the interval midpoints.
std::vector<std::pair<double, double>> interval_medians(const SampleSet& s,
                                                        const Partition& part,
                                                        const ChebPoly& center);

struct MinimaxFit {
  ChebPoly poly;
  double objective = 0.0;  // max_j |poly(x_j) - y_j|
};

/// Discrete Chebyshev (minimax) fit: minimize max_j |q(x_j) - y_j| over
/// degree-d polynomials, via LP.
MinimaxFit linf_point_fit(const std::vector<std::pair<double, double>>& points,
                          int degree);

/// One refinement round: fit the interval medians of the residual in the
/// minimax sense and add the correction to p_hat.
ChebPoly refine(const SampleSet& s, const Partition& part, const ChebPoly& p_hat,
                int degree);

/// Complete recovery procedure: L1 regression followed by a fixed number
/// of refinement rounds.
FitReport approx(const SampleSet& s, const FitConfig& cfg);

}  // namespace robustpoly

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "robustpoly/cheb.hpp"

namespace robustpoly {

/// Thrown when an operation needs at least one sample per interval.
struct EmptyIntervalError : std::runtime_error {
  explicit EmptyIntervalError(int j)
      : std::runtime_error("interval " + std::to_string(j) + " has no samples"),
        interval(j) {}
  int interval;
};

/// The size-m Chebyshev partition of [-1, 1]: intervals
/// I_j = [cos(pi j / m), cos(pi (j-1) / m)] between consecutive
/// extrema of T_m, indexed j = 1..m from x = 1 downward.
struct Partition {
  int m = 0;
  std::vector<double> boundaries;  // boundaries[j] = cos(pi j / m), j = 0..m
  std::vector<double> lengths;     // lengths[j-1] = |I_j|

  double lower(int j) const { return boundaries[static_cast<std::size_t>(j)]; }
  double upper(int j) const { return boundaries[static_cast<std::size_t>(j) - 1]; }
  double midpoint(int j) const { return 0.5 * (lower(j) + upper(j)); }
  double length(int j) const { return lengths[static_cast<std::size_t>(j) - 1]; }
};

Partition build_partition(int m);

/// Interval index in [1..m] containing x.  Points exactly on an interior
/// boundary go to the lower-j (larger-x) interval; monotone nonincreasing
/// in x.  Rejects |x| > 1 + 1e-12.
int locate(const Partition& part, double x);

/// Samples (x_i, y_i), optionally with ground-truth outlier flags
/// (simulation only).
struct SampleSet {
  std::vector<double> xs;
  std::vector<double> ys;
  std::optional<std::vector<std::uint8_t>> outlier_flags;

  std::size_t size() const { return xs.size(); }
  bool has_flags() const { return outlier_flags.has_value(); }
};

/// Bucket sample indices by interval: result[j-1] holds indices i with
/// x_i in I_j.
std::vector<std::vector<int>> assign(const Partition& part, const SampleSet& s);

struct IntervalStats {
  int count = 0;
  int outlier_count = 0;
  double fraction = 0.0;
};

/// alpha-goodness verdict: every interval nonempty and strictly fewer
/// than an alpha fraction of its samples flagged as outliers.
struct GoodnessReport {
  double alpha = 0.0;
  std::vector<IntervalStats> per_interval;
  bool is_good = false;
  std::vector<int> empty_intervals;  // 1-based indices
};

GoodnessReport goodness(const Partition& part, const SampleSet& s, double alpha);

struct EVector {
  std::vector<double> e;  // e[j-1] for interval j
  double weighted_sum = 0.0;  // sum |I_j| e_j
};

/// Per-interval trimmed residual maxima against p: e_j is the
/// ceil((1-alpha) |S_j|)-th smallest |p(x_i) - y_i| over S_j, i.e. the
/// max over the best (1-alpha) fraction of the bucket.
EVector e_vector(const Partition& part, const SampleSet& s, const ChebPoly& p,
                 double alpha);

/// Piecewise-constant projection r(x) = p(anchor_{locate(x)}).
struct PiecewiseConstant {
  Partition part;
  std::vector<double> values;  // values[j-1] = value on I_j

  double operator()(double x) const {
    return values[static_cast<std::size_t>(locate(part, x)) - 1];
  }
};

/// Requires anchor_j in I_j (closed).  Default anchors elsewhere in the
/// project are interval midpoints.
PiecewiseConstant piecewise_project(const ChebPoly& p, const Partition& part,
                                    const std::vector<double>& anchors);

}  // namespace robustpoly

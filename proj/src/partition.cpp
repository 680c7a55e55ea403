#include "robustpoly/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace robustpoly {

namespace {
constexpr double kClampTol = 1e-12;
}

Partition build_partition(int m) {
  if (m < 1) throw std::invalid_argument("build_partition: m must be >= 1");
  Partition p;
  p.m = m;
  p.boundaries.resize(static_cast<std::size_t>(m) + 1);
  const double pi = std::numbers::pi;
  // Mirror the upper half so the partition is exactly symmetric and the
  // midpoint boundary (when m is even) is exactly zero.
  for (int j = 0; j <= m; ++j) {
    double b;
    if (2 * j == m)
      b = 0.0;
    else if (2 * j < m)
      b = std::cos(pi * j / m);
    else
      b = -std::cos(pi * (m - j) / m);
    p.boundaries[static_cast<std::size_t>(j)] = b;
  }
  p.boundaries.front() = 1.0;
  p.boundaries.back() = -1.0;
  p.lengths.resize(static_cast<std::size_t>(m));
  for (int j = 1; j <= m; ++j)
    p.lengths[static_cast<std::size_t>(j) - 1] =
        p.boundaries[static_cast<std::size_t>(j) - 1] -
        p.boundaries[static_cast<std::size_t>(j)];
  return p;
}

int locate(const Partition& part, double x) {
  if (std::abs(x) > 1.0 + kClampTol)
    throw std::domain_error("locate: x outside [-1,1]");
  x = std::clamp(x, -1.0, 1.0);
  // Boundaries are strictly descending; find the smallest j >= 1 with
  // x >= boundaries[j].  A point equal to boundaries[j] lands in I_j,
  // where it is the lower endpoint.
  int lo = 1, hi = part.m;
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    if (x >= part.boundaries[static_cast<std::size_t>(mid)])
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

std::vector<std::vector<int>> assign(const Partition& part, const SampleSet& s) {
  std::vector<std::vector<int>> buckets(static_cast<std::size_t>(part.m));
  for (std::size_t i = 0; i < s.size(); ++i)
    buckets[static_cast<std::size_t>(locate(part, s.xs[i])) - 1].push_back(
        static_cast<int>(i));
  return buckets;
}

GoodnessReport goodness(const Partition& part, const SampleSet& s, double alpha) {
  if (!s.has_flags())
    throw std::invalid_argument("goodness: sample set has no outlier flags");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("goodness: alpha must be in (0,1)");
  GoodnessReport rep;
  rep.alpha = alpha;
  rep.per_interval.resize(static_cast<std::size_t>(part.m));
  auto buckets = assign(part, s);
  const auto& flags = *s.outlier_flags;
  rep.is_good = true;
  for (int j = 1; j <= part.m; ++j) {
    auto& st = rep.per_interval[static_cast<std::size_t>(j) - 1];
    const auto& idx = buckets[static_cast<std::size_t>(j) - 1];
    st.count = static_cast<int>(idx.size());
    for (int i : idx) st.outlier_count += flags[static_cast<std::size_t>(i)] ? 1 : 0;
    if (st.count == 0) {
      rep.empty_intervals.push_back(j);
      rep.is_good = false;
    } else {
      st.fraction = static_cast<double>(st.outlier_count) / st.count;
      if (!(st.fraction < alpha)) rep.is_good = false;
    }
  }
  return rep;
}

EVector e_vector(const Partition& part, const SampleSet& s, const ChebPoly& p,
                 double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("e_vector: alpha must be in (0,1)");
  auto buckets = assign(part, s);
  EVector out;
  out.e.resize(static_cast<std::size_t>(part.m));
  for (int j = 1; j <= part.m; ++j) {
    auto& idx = buckets[static_cast<std::size_t>(j) - 1];
    if (idx.empty()) throw EmptyIntervalError(j);
    std::vector<double> res;
    res.reserve(idx.size());
    for (int i : idx)
      res.push_back(std::abs(p(s.xs[static_cast<std::size_t>(i)]) -
                             s.ys[static_cast<std::size_t>(i)]));
    // Keep the best (1-alpha) fraction; ceil rounds the kept count up,
    // so a non-integral alpha*|S_j| drops only floor(alpha*|S_j|) points.
    int keep = static_cast<int>(
        std::ceil((1.0 - alpha) * static_cast<double>(idx.size())));
    keep = std::clamp(keep, 1, static_cast<int>(idx.size()));
    std::nth_element(res.begin(), res.begin() + (keep - 1), res.end());
    out.e[static_cast<std::size_t>(j) - 1] = res[static_cast<std::size_t>(keep) - 1];
    out.weighted_sum += part.length(j) * out.e[static_cast<std::size_t>(j) - 1];
  }
  return out;
}

PiecewiseConstant piecewise_project(const ChebPoly& p, const Partition& part,
                                    const std::vector<double>& anchors) {
  if (static_cast<int>(anchors.size()) != part.m)
    throw std::invalid_argument("piecewise_project: need one anchor per interval");
  PiecewiseConstant r;
  r.part = part;
  r.values.resize(anchors.size());
  for (int j = 1; j <= part.m; ++j) {
    double a = anchors[static_cast<std::size_t>(j) - 1];
    if (a < part.lower(j) - kClampTol || a > part.upper(j) + kClampTol)
      throw std::invalid_argument("piecewise_project: anchor outside its interval");
    r.values[static_cast<std::size_t>(j) - 1] = p(std::clamp(a, -1.0, 1.0));
  }
  return r;
}

}  // namespace robustpoly

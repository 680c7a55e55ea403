#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "robustpoly/cheb.hpp"

namespace robustpoly::lowerbounds {

/// Bump polynomial: degree <= d, value 1 at b, sup norm 1, decay
/// |p_b(x)| <= 2 / (d |x - b|).
struct IndicatorSpec {
  int d = 2;
  double b = 0.0;
};

ChebPoly indicator_poly(const IndicatorSpec& spec);

/// Family of sums of squared indicators f_S = sum_{j in S} p_{b_j}^2.
/// Indicators are built at degree floor(d/2) so deg f_S <= d; the center
/// count is floor(indicator_degree * sqrt(alpha) / 2), which keeps each
/// f_S within alpha of its dominant term (the sandwich property).
struct FamilySpec {
  int d = 4;
  double alpha = 1.0 / 3.0;
  std::vector<int> S;  // subset of {1..m}

  int indicator_degree = 0;      // derived
  int m = 0;                     // derived
  std::vector<double> centers;   // derived, b_j = -1 + 2j/m
};

FamilySpec make_family_spec(int d, double alpha, std::vector<int> S);

ChebPoly fs_family(const FamilySpec& spec);

/// Index k in [1..m] minimizing |b_k - x| (ties to the smaller index).
int nearest_center(const FamilySpec& spec, double x);

/// Shifted Chebyshev gadget: f = T_d(x + a/d^2) with a = 4 sqrt(2(C-1)).
/// |f| <= 1 on [-1, 1 - a/d^2] while |f(1)| > 2C, so samples observed as
/// (x, 0) inside the safe region are consistent with both f and zero.
struct UniformLBInstance {
  ChebPoly f;
  ChebPoly g;       // the zero polynomial
  double safe_hi;   // safe region is [-1, safe_hi]
  double alpha;     // the shift scale a
  double f_at_1;
};

UniformLBInstance uniform_lb_instance(int d, double C);

/// Three quadratics within pairwise sup distance 2, yet any single
/// quadratic is more than 1.09 away from one of them.
struct QuadTriple {
  ChebPoly p1, p2, p3;
  double v;  // 1 / (3 + 2 sqrt(2))
};

QuadTriple quad_triple();

/// Discrete Chebyshev center: the degree-d polynomial minimizing the
/// maximum over the given polynomials of the sup distance on the grid.
/// The returned radius is a lower bound on the continuous minimax radius.
struct MinimaxCenter {
  ChebPoly center;
  double radius = 0.0;
};

MinimaxCenter minimax_center(const std::vector<ChebPoly>& polys, int degree,
                             const GridSpec& grid);

/// The projection-gap instance: p = sigma (constant) and the hinge
/// f(x) = (sigma/alpha) max(0, x - (1 - 2 alpha)); |p - f| <= sigma
/// everywhere yet the best degree-1 sup-norm fit to f lands
/// (2 - alpha) sigma away from p.
struct ProjectionInstance {
  double alpha = 0.25;
  double sigma = 1.0;
  double knot = 0.5;           // 1 - 2 alpha
  double predicted_gap = 1.75; // (2 - alpha) sigma
  ChebPoly p;

  double f(double x) const;
};

ProjectionInstance linf_projection_instance(double alpha, double sigma);

struct ProjectionGap {
  ChebPoly q;          // best degree-1 fit to f on the grid
  double fit_error;    // max |f - q| over the grid
  double gap;          // sup |p - q| on [-1, 1]
};

/// Grid LP for the instance; the grid is augmented with the hinge knot
/// and the endpoints, where the extreme residuals of a piecewise-linear
/// function against a line live, so the discrete optimum is exact.
ProjectionGap measure_projection_gap(const ProjectionInstance& inst,
                                     const GridSpec& grid);

/// Bank of translated quadratics forcing ~d oscillations on any
/// single approximant; all pairwise sup distances stay below
/// 1 - 1/(64 d^3).
struct OscillationFamily {
  int d = 2;
  double amplitude;       // A = 1/(2d)
  double spacing;         // c = 1/(4d)
  int t_range;            // translates t in [-t_range, t_range]
  std::vector<ChebPoly> members;  // 4 per translate
  double distance_bound;  // 1 - 1/(64 d^3)
};

OscillationFamily oscillation_family(int d);

double max_pairwise_distance(const OscillationFamily& fam, const GridSpec& grid);

/// The list-decoding adversary: every sample is reported as one of the
/// two extreme family members, f_{} or f_{[m]}.  Inliers get the branch
/// the sandwich guarantees to be within alpha of f_S; outliers get the
/// other one.  Points consistent with both branches follow a global
/// seed-derived coin, so for those the emission never consults S.
std::vector<double> listdecode_adversary(const FamilySpec& spec,
                                         const std::vector<double>& xs,
                                         const std::vector<std::uint8_t>& flags,
                                         std::uint64_t seed);

}  // namespace robustpoly::lowerbounds

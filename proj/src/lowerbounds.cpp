#include "robustpoly/lowerbounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "robustpoly/lp.hpp"
#include "robustpoly/rng.hpp"

namespace robustpoly::lowerbounds {

namespace {

// Coefficients of T_{D+1}(x) / ((D+1) x) for even D, computed exactly on
// Chebyshev coefficients from x T_k = (T_{k+1} + T_{k-1}) / 2 solved from
// the top degree down.  T_{D+1} is odd, so the quotient is a polynomial.
ChebPoly divide_t_next_by_x(int D) {
  std::vector<double> a(static_cast<std::size_t>(D) + 1, 0.0);
  a[static_cast<std::size_t>(D)] = 2.0;
  for (int k = D - 2; k >= 2; k -= 2)
    a[static_cast<std::size_t>(k)] = -a[static_cast<std::size_t>(k) + 2];
  a[0] = -0.5 * a[2];
  return ChebPoly(std::move(a));
}

}  // namespace

ChebPoly indicator_poly(const IndicatorSpec& spec) {
  if (spec.d < 1) throw std::invalid_argument("indicator_poly: d must be >= 1");
  if (std::abs(spec.b) > 1.0)
    throw std::invalid_argument("indicator_poly: center outside [-1, 1]");
  const int D = spec.d % 2 == 0 ? spec.d : spec.d - 1;  // odd d drops one degree
  if (D == 0) return ChebPoly::constant(1.0);
  ChebPoly q = divide_t_next_by_x(D);
  double scale = ((D / 2) % 2 == 0 ? 1.0 : -1.0) / (D + 1);
  ChebPoly p0 = lincomb(scale, q, 0.0, ChebPoly::zero());
  if (spec.b == 0.0) return p0;  // centered: the division result itself
  // p_b(x) = p_0((x - b) / 2); the argument stays within [-1, 1].
  return compose_affine(p0, -0.5 * spec.b, 0.5);
}

FamilySpec make_family_spec(int d, double alpha, std::vector<int> S) {
  if (d < 2) throw std::invalid_argument("family: d must be >= 2");
  if (alpha <= 0.0) throw std::invalid_argument("family: alpha must be positive");
  FamilySpec spec;
  spec.d = d;
  spec.alpha = alpha;
  spec.indicator_degree = d / 2;
  spec.m = static_cast<int>(std::floor(spec.indicator_degree * std::sqrt(alpha) / 2.0));
  if (spec.m < 1)
    throw std::invalid_argument("family: d sqrt(alpha) too small for any center");
  spec.centers.resize(static_cast<std::size_t>(spec.m));
  for (int j = 1; j <= spec.m; ++j)
    spec.centers[static_cast<std::size_t>(j) - 1] = -1.0 + 2.0 * j / spec.m;
  for (int j : S)
    if (j < 1 || j > spec.m)
      throw std::invalid_argument("family: S index out of range");
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  spec.S = std::move(S);
  return spec;
}

ChebPoly fs_family(const FamilySpec& spec) {
  ChebPoly f = ChebPoly::zero();
  for (int j : spec.S) {
    ChebPoly pb = indicator_poly(
        {spec.indicator_degree, spec.centers[static_cast<std::size_t>(j) - 1]});
    f = lincomb(1.0, f, 1.0, mul(pb, pb));
  }
  return f;
}

int nearest_center(const FamilySpec& spec, double x) {
  int best = 1;
  double bestd = std::abs(spec.centers[0] - x);
  for (int j = 2; j <= spec.m; ++j) {
    double dj = std::abs(spec.centers[static_cast<std::size_t>(j) - 1] - x);
    if (dj < bestd) {
      bestd = dj;
      best = j;
    }
  }
  return best;
}

UniformLBInstance uniform_lb_instance(int d, double C) {
  if (d < 4) throw std::invalid_argument("uniform_lb_instance: d must be >= 4");
  if (!(C > 1.0)) throw std::invalid_argument("uniform_lb_instance: C must be > 1");
  UniformLBInstance inst;
  inst.alpha = 4.0 * std::sqrt(2.0 * (C - 1.0));
  double shift = inst.alpha / (static_cast<double>(d) * d);
  inst.f = compose_affine(ChebPoly::basis(d), shift, 1.0);
  inst.g = ChebPoly::zero();
  inst.safe_hi = 1.0 - shift;
  inst.f_at_1 = cheb_eval_unclamped(d, 1.0 + shift);
  return inst;
}

QuadTriple quad_triple() {
  QuadTriple t;
  t.p1 = ChebPoly({1.0, 1.0});   // x + 1
  t.p2 = ChebPoly({1.0, -1.0});  // 1 - x
  double k = (3.0 + 2.0 * std::sqrt(2.0)) / 4.0;  // (3+2sqrt2)/2 * (1-x^2)
  t.p3 = ChebPoly({k, 0.0, -k});
  t.v = 1.0 / (3.0 + 2.0 * std::sqrt(2.0));
  return t;
}

MinimaxCenter minimax_center(const std::vector<ChebPoly>& polys, int degree,
                             const GridSpec& grid) {
  if (polys.empty()) throw std::invalid_argument("minimax_center: no polynomials");
  if (grid.m < 16 * (degree + 1))
    throw std::invalid_argument("minimax_center: grid too coarse for the degree");
  const std::size_t ncoef = static_cast<std::size_t>(degree) + 1;
  auto xs = grid.ascending_nodes();

  lp::LPProblem prob;
  prob.objective.assign(ncoef + 1, 0.0);
  prob.objective[ncoef] = 1.0;
  prob.constraint_matrix.reserve(2 * polys.size() * xs.size());
  prob.rhs.reserve(2 * polys.size() * xs.size());
  for (const ChebPoly& p : polys) {
    for (double x : xs) {
      std::vector<double> row(ncoef + 1, 0.0);
      for (std::size_t k = 0; k < ncoef; ++k)
        row[k] = cheb_eval(static_cast<int>(k), x);
      row[ncoef] = -1.0;
      double px = p(x);
      prob.constraint_matrix.push_back(row);  //  q(x) - t <= p(x)
      prob.rhs.push_back(px);
      for (std::size_t k = 0; k < ncoef; ++k) row[k] = -row[k];
      row[ncoef] = -1.0;
      prob.constraint_matrix.push_back(std::move(row));  // -q(x) - t <= -p(x)
      prob.rhs.push_back(-px);
    }
  }
  lp::LPSolution sol = lp::solve(prob);
  if (sol.status != lp::LPStatus::Optimal)
    throw std::runtime_error("minimax_center: LP solve failed");
  MinimaxCenter out;
  out.center = ChebPoly(std::vector<double>(
      sol.v.begin(), sol.v.begin() + static_cast<std::ptrdiff_t>(ncoef)));
  out.radius = sol.v[ncoef];
  return out;
}

double ProjectionInstance::f(double x) const {
  return sigma / alpha * std::max(0.0, x - knot);
}

ProjectionInstance linf_projection_instance(double alpha, double sigma) {
  if (!(alpha > 0.0 && alpha < 0.5))
    throw std::invalid_argument("linf_projection_instance: alpha must be in (0, 1/2)");
  if (!(sigma > 0.0))
    throw std::invalid_argument("linf_projection_instance: sigma must be positive");
  ProjectionInstance inst;
  inst.alpha = alpha;
  inst.sigma = sigma;
  inst.knot = 1.0 - 2.0 * alpha;
  inst.predicted_gap = (2.0 - alpha) * sigma;
  inst.p = ChebPoly::constant(sigma);
  return inst;
}

ProjectionGap measure_projection_gap(const ProjectionInstance& inst,
                                     const GridSpec& grid) {
  auto xs = grid.ascending_nodes();
  // Against a line, a piecewise-linear function attains its extreme
  // residuals at segment endpoints; adding the knot makes the discrete
  // optimum agree with the continuous one.
  xs.push_back(inst.knot);
  std::sort(xs.begin(), xs.end());

  lp::LPProblem prob;
  prob.objective = {0.0, 0.0, 1.0};
  for (double x : xs) {
    double fx = inst.f(x);
    prob.constraint_matrix.push_back({1.0, x, -1.0});
    prob.rhs.push_back(fx);
    prob.constraint_matrix.push_back({-1.0, -x, -1.0});
    prob.rhs.push_back(-fx);
  }
  lp::LPSolution sol = lp::solve(prob);
  if (sol.status != lp::LPStatus::Optimal)
    throw std::runtime_error("measure_projection_gap: LP solve failed");
  ProjectionGap out;
  out.q = ChebPoly({sol.v[0], sol.v[1]});
  out.fit_error = sol.v[2];
  // p - q has degree <= 1, so its sup is attained at an endpoint.
  out.gap = std::max(std::abs(inst.p(-1.0) - out.q(-1.0)),
                     std::abs(inst.p(1.0) - out.q(1.0)));
  return out;
}

OscillationFamily oscillation_family(int d) {
  if (d < 2) throw std::invalid_argument("oscillation_family: d must be >= 2");
  OscillationFamily fam;
  fam.d = d;
  fam.amplitude = 1.0 / (2.0 * d);
  fam.spacing = 1.0 / (4.0 * d);
  fam.t_range = static_cast<int>(std::ceil(1.5 * d));
  fam.distance_bound = 1.0 - 1.0 / (64.0 * std::pow(static_cast<double>(d), 3));
  const double A = fam.amplitude, c = fam.spacing;
  auto shifted_square = [](double s) {
    // (x - s)^2 in the Chebyshev basis.
    return ChebPoly({0.5 + s * s, -2.0 * s, 0.5});
  };
  for (int t = -fam.t_range; t <= fam.t_range; ++t) {
    double u = 2.0 * c * t;
    ChebPoly cap = lincomb(1.0, ChebPoly::constant(1.0), -A, shifted_square(u));
    fam.members.push_back(cap);
    fam.members.push_back(lincomb(A, shifted_square(u + c), 0.0, ChebPoly::zero()));
    fam.members.push_back(lincomb(A, shifted_square(u - c), 0.0, ChebPoly::zero()));
    fam.members.push_back(lincomb(A, shifted_square(u), 1.0,
                                  ChebPoly::constant(0.5 * A * c * c)));
  }
  return fam;
}

double max_pairwise_distance(const OscillationFamily& fam, const GridSpec& grid) {
  auto xs = grid.ascending_nodes();
  std::vector<std::vector<double>> vals(fam.members.size(),
                                        std::vector<double>(xs.size()));
  for (std::size_t i = 0; i < fam.members.size(); ++i)
    for (std::size_t g = 0; g < xs.size(); ++g) vals[i][g] = fam.members[i](xs[g]);
  double worst = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i)
    for (std::size_t j = i + 1; j < vals.size(); ++j) {
      double dij = 0.0;
      for (std::size_t g = 0; g < xs.size(); ++g)
        dij = std::max(dij, std::abs(vals[i][g] - vals[j][g]));
      worst = std::max(worst, dij);
    }
  return worst;
}

std::vector<double> listdecode_adversary(const FamilySpec& spec,
                                         const std::vector<double>& xs,
                                         const std::vector<std::uint8_t>& flags,
                                         std::uint64_t seed) {
  if (flags.size() != xs.size())
    throw std::invalid_argument("listdecode_adversary: flags length mismatch");
  FamilySpec full = spec;
  full.S.resize(static_cast<std::size_t>(spec.m));
  for (int j = 1; j <= spec.m; ++j) full.S[static_cast<std::size_t>(j) - 1] = j;
  ChebPoly f_empty = ChebPoly::zero();
  ChebPoly f_full = fs_family(full);
  ChebPoly f_s = fs_family(spec);

  const bool coin = (rng::at(seed, rng::kStreamCoin, 0) & 1ull) != 0;
  const double tol = spec.alpha + 1e-12;
  std::vector<double> ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double ve = f_empty(xs[i]);
    double vf = f_full(xs[i]);
    double vs = f_s(xs[i]);
    if (vf <= tol) {
      // Both branches are within alpha of every f_S here (f_full already
      // is), so the global coin decides without consulting S.
      ys[i] = coin ? vf : ve;
      continue;
    }
    // Membership rule: the branch on k_x's side of the sandwich is the
    // consistent one.  Inliers report it, outliers report the other.
    int kx = nearest_center(spec, xs[i]);
    bool in_s = std::find(spec.S.begin(), spec.S.end(), kx) != spec.S.end();
    bool emit_full = in_s != static_cast<bool>(flags[i]);
    ys[i] = emit_full ? vf : ve;
    double emitted_err = std::abs(ys[i] - vs);
    if (!flags[i] && emitted_err > tol)
      throw std::logic_error("listdecode_adversary: sandwich violated");
  }
  return ys;
}

}  // namespace robustpoly::lowerbounds

#include "robustpoly/cheb.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

namespace robustpoly {

namespace {
constexpr double kClampTol = 1e-12;
constexpr double kTrimRel = 1e-14;
}  // namespace

double cheb_eval_unclamped(int k, double x) {
  if (k < 0) throw std::invalid_argument("cheb_eval: negative order");
  if (k == 0) return 1.0;
  double tm1 = 1.0, t = x;
  for (int i = 2; i <= k; ++i) {
    double tn = 2.0 * x * t - tm1;
    tm1 = t;
    t = tn;
  }
  return t;
}

double cheb_eval(int k, double x) {
  if (std::abs(x) > 1.0 + kClampTol)
    throw std::domain_error("cheb_eval: x outside [-1,1]");
  x = std::clamp(x, -1.0, 1.0);
  return cheb_eval_unclamped(k, x);
}

ChebPoly::ChebPoly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_ = {0.0};
}

ChebPoly ChebPoly::basis(int k) {
  if (k < 0) throw std::invalid_argument("ChebPoly::basis: negative order");
  std::vector<double> c(static_cast<std::size_t>(k) + 1, 0.0);
  c.back() = 1.0;
  return ChebPoly(std::move(c));
}

int ChebPoly::trimmed_degree() const {
  double cmax = 0.0;
  for (double c : coeffs_) cmax = std::max(cmax, std::abs(c));
  if (cmax == 0.0) return 0;
  int d = 0;
  for (int k = 0; k < static_cast<int>(coeffs_.size()); ++k)
    if (std::abs(coeffs_[static_cast<std::size_t>(k)]) > kTrimRel * cmax) d = k;
  return d;
}

double ChebPoly::operator()(double x) const {
  if (std::abs(x) > 1.0 + kClampTol)
    throw std::domain_error("ChebPoly::eval: x outside [-1,1]");
  x = std::clamp(x, -1.0, 1.0);
  // Clenshaw backward recurrence.
  double b1 = 0.0, b2 = 0.0;
  for (int k = static_cast<int>(coeffs_.size()) - 1; k >= 1; --k) {
    double b = coeffs_[static_cast<std::size_t>(k)] + 2.0 * x * b1 - b2;
    b2 = b1;
    b1 = b;
  }
  return coeffs_[0] + x * b1 - b2;
}

ChebPoly lincomb(double a, const ChebPoly& p, double b, const ChebPoly& q) {
  std::size_t n = std::max(p.coeffs().size(), q.coeffs().size());
  std::vector<double> c(n, 0.0);
  for (std::size_t k = 0; k < p.coeffs().size(); ++k) c[k] += a * p.coeffs()[k];
  for (std::size_t k = 0; k < q.coeffs().size(); ++k) c[k] += b * q.coeffs()[k];
  return ChebPoly(std::move(c));
}

ChebPoly mul(const ChebPoly& p, const ChebPoly& q) {
  const auto& a = p.coeffs();
  const auto& b = q.coeffs();
  std::vector<double> c(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      double t = 0.5 * a[i] * b[j];
      c[i + j] += t;
      c[static_cast<std::size_t>(std::llabs(static_cast<long long>(i) -
                                            static_cast<long long>(j)))] += t;
    }
  }
  return ChebPoly(std::move(c));
}

ChebPoly derivative(const ChebPoly& p) {
  int d = p.degree();
  if (d == 0) return ChebPoly::zero();
  std::vector<double> out(static_cast<std::size_t>(d), 0.0);
  // c'_{k-1} = c'_{k+1} + 2k c_k, descending from k = d.
  double next2 = 0.0, next1 = 0.0;  // c'_{k+2}, c'_{k+1}
  for (int k = d; k >= 1; --k) {
    double cur = next2 + 2.0 * k * p.coeffs()[static_cast<std::size_t>(k)];
    out[static_cast<std::size_t>(k - 1)] = cur;
    next2 = next1;
    next1 = cur;
  }
  out[0] *= 0.5;
  return ChebPoly(std::move(out));
}

ChebPoly from_samples_extrema(const std::function<double(double)>& f, int n) {
  if (n < 0) throw std::invalid_argument("from_samples_extrema: negative degree");
  if (n == 0) return ChebPoly::constant(f(1.0));
  const double pi = std::numbers::pi;
  std::vector<double> vals(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) vals[static_cast<std::size_t>(j)] = f(std::cos(pi * j / n));
  // DCT-I style quadrature on the extrema grid; exact for degree <= n.
  std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    double s = 0.5 * (vals[0] + (k % 2 == 0 ? vals[static_cast<std::size_t>(n)]
                                            : -vals[static_cast<std::size_t>(n)]));
    for (int j = 1; j < n; ++j)
      s += vals[static_cast<std::size_t>(j)] * std::cos(pi * j * k / n);
    c[static_cast<std::size_t>(k)] = 2.0 * s / n;
  }
  c[0] *= 0.5;
  c[static_cast<std::size_t>(n)] *= 0.5;
  return ChebPoly(std::move(c));
}

ChebPoly compose_affine(const ChebPoly& p, double inner_const, double inner_slope) {
  // Clenshaw with polynomial arithmetic: exact re-expansion of
  // p(inner_const + inner_slope * x) in the Chebyshev basis.
  ChebPoly inner({inner_const, inner_slope});
  ChebPoly b1 = ChebPoly::zero(), b2 = ChebPoly::zero();
  for (int k = p.degree(); k >= 1; --k) {
    ChebPoly b = lincomb(1.0, ChebPoly::constant(p.coeffs()[static_cast<std::size_t>(k)]),
                         2.0, mul(inner, b1));
    b = lincomb(1.0, b, -1.0, b2);
    b2 = b1;
    b1 = b;
  }
  ChebPoly res = lincomb(1.0, ChebPoly::constant(p.coeffs()[0]), 1.0, mul(inner, b1));
  return lincomb(1.0, res, -1.0, b2);
}

std::vector<double> GridSpec::ascending_nodes() const {
  if (m < 1) throw std::invalid_argument("GridSpec: m must be positive");
  std::vector<double> xs(static_cast<std::size_t>(m) + 1);
  if (kind == NodeKind::ChebyshevExtrema) {
    const double pi = std::numbers::pi;
    for (int j = 0; j <= m; ++j)
      xs[static_cast<std::size_t>(j)] = std::cos(pi * (m - j) / m);
    xs.front() = -1.0;
    xs.back() = 1.0;
  } else {
    for (int j = 0; j <= m; ++j)
      xs[static_cast<std::size_t>(j)] = -1.0 + 2.0 * j / m;
    xs.back() = 1.0;
  }
  return xs;
}

GridSpec default_inf_grid(int degree) {
  return GridSpec::extrema(std::max(512, 16 * (degree + 1)));
}

GridSpec default_l1_grid() { return GridSpec::extrema(4096); }

double norm_inf_grid(const std::function<double(double)>& f, const GridSpec& g) {
  double best = 0.0;
  for (double x : g.ascending_nodes()) best = std::max(best, std::abs(f(x)));
  return best;
}

double norm_inf_grid(const ChebPoly& p, const GridSpec& g) {
  return norm_inf_grid([&](double x) { return p(x); }, g);
}

double norm_inf_grid(const ChebPoly& p) {
  return norm_inf_grid(p, default_inf_grid(p.degree()));
}

double norm_1_grid(const std::function<double(double)>& f, const GridSpec& g) {
  auto xs = g.ascending_nodes();
  double prev = std::abs(f(xs[0]));
  double total = 0.0;
  for (std::size_t j = 1; j < xs.size(); ++j) {
    double cur = std::abs(f(xs[j]));
    total += 0.5 * (prev + cur) * (xs[j] - xs[j - 1]);
    prev = cur;
  }
  return total;
}

double norm_1_grid(const ChebPoly& p, const GridSpec& g) {
  return norm_1_grid([&](double x) { return p(x); }, g);
}

double norm_1_grid(const ChebPoly& p) { return norm_1_grid(p, default_l1_grid()); }

}  // namespace robustpoly

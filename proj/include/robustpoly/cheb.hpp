#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace robustpoly {

/// Evaluates the Chebyshev basis polynomial T_k at x via the three-term
/// recurrence.  x is clamped to [-1, 1] when within 1e-12 of the interval.
double cheb_eval(int k, double x);

/// Same recurrence without the domain clamp; valid for any real x.
/// Used by constructions that evaluate T_k just outside [-1, 1].
double cheb_eval_unclamped(int k, double x);

/// A real polynomial on [-1,1] stored by its coefficients in the
/// Chebyshev basis {T_0, ..., T_d}.  Immutable in practice: all
/// operations return new values.
class ChebPoly {
 public:
  ChebPoly() : coeffs_{0.0} {}
  explicit ChebPoly(std::vector<double> coeffs);

  static ChebPoly zero() { return ChebPoly(); }
  static ChebPoly constant(double c) { return ChebPoly({c}); }
  static ChebPoly basis(int k);  // T_k

  const std::vector<double>& coeffs() const { return coeffs_; }
  /// Stored length - 1.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  /// Degree after dropping trailing coefficients below 1e-14 relative
  /// to the largest coefficient magnitude.
  int trimmed_degree() const;

  /// Clenshaw evaluation of sum c_k T_k(x).
  double operator()(double x) const;

  bool operator==(const ChebPoly& o) const { return coeffs_ == o.coeffs_; }

 private:
  std::vector<double> coeffs_;
};

/// Coefficient-wise a*p + b*q, zero-padded to the larger degree.
ChebPoly lincomb(double a, const ChebPoly& p, double b, const ChebPoly& q);

/// Product in the Chebyshev basis (T_i T_j = (T_{i+j} + T_{|i-j|}) / 2).
ChebPoly mul(const ChebPoly& p, const ChebPoly& q);

/// Exact derivative via the descending coefficient recurrence
/// c'_{k-1} = c'_{k+1} + 2k c_k.
ChebPoly derivative(const ChebPoly& p);

/// Interpolates f on the Chebyshev-extrema grid cos(pi*j/n), j = 0..n,
/// returning the degree-n interpolant.  Exact (up to rounding) when f
/// is a polynomial of degree <= n.
ChebPoly from_samples_extrema(const std::function<double(double)>& f, int n);

/// Re-expands p((x - b) / scale_inv) style affine compositions:
/// returns q with q(x) = p(inner(x)) where inner is a degree-1 poly.
ChebPoly compose_affine(const ChebPoly& p, double inner_const, double inner_slope);

/// Evaluation grid on [-1, 1].  Parameter m counts segments: the grid
/// has m + 1 nodes, inclusive of the endpoints.
struct GridSpec {
  enum class NodeKind { ChebyshevExtrema, Uniform };

  int m = 512;
  NodeKind kind = NodeKind::ChebyshevExtrema;

  static GridSpec extrema(int m) { return {m, NodeKind::ChebyshevExtrema}; }
  static GridSpec uniform(int m) { return {m, NodeKind::Uniform}; }

  /// Nodes in ascending order of x.
  std::vector<double> ascending_nodes() const;
};

/// Default grid sizes used throughout.  Extrema grids put the basis
/// extrema on nodes, so near-extremal values of low-degree polynomials
/// land on grid points.
GridSpec default_inf_grid(int degree);
GridSpec default_l1_grid();

/// max |f| over the grid nodes.  A lower bound on the true sup norm;
/// tight to ~1e-3 relative for degree-d polynomials once m >= 8(d+1).
double norm_inf_grid(const std::function<double(double)>& f, const GridSpec& g);
double norm_inf_grid(const ChebPoly& p, const GridSpec& g);
double norm_inf_grid(const ChebPoly& p);  // default grid for p's degree

/// Composite trapezoid estimate of the integral of |f| over [-1, 1].
double norm_1_grid(const std::function<double(double)>& f, const GridSpec& g);
double norm_1_grid(const ChebPoly& p, const GridSpec& g);
double norm_1_grid(const ChebPoly& p);  // default 4096-segment grid

}  // namespace robustpoly

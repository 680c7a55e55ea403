#include "robustpoly/regression.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "robustpoly/lp.hpp"

namespace robustpoly {

int FitConfig::partition_size() const {
  if (m_override) return std::max(*m_override, degree + 1);
  int m = static_cast<int>(std::ceil(8.0 * (degree + 1) / epsilon));
  return std::max(m, degree + 1);
}

int FitConfig::round_count() const {
  double r = std::log(4.0 * (degree + 1.0) * (degree + 1.0)) / std::log(1.0 / epsilon);
  return static_cast<int>(std::ceil(r)) + 2;
}

ChebPoly l1_fit(const SampleSet& s, const Partition& part, int degree) {
  const std::size_t n = s.size();
  if (n < static_cast<std::size_t>(degree) + 1)
    throw std::invalid_argument("l1_fit: need at least degree + 1 samples");
  auto buckets = assign(part, s);
  std::vector<double> w(n, 0.0);
  for (int j = 1; j <= part.m; ++j) {
    const auto& idx = buckets[static_cast<std::size_t>(j) - 1];
    if (idx.empty()) throw EmptyIntervalError(j);
    double wj = part.length(j) / static_cast<double>(idx.size());
    for (int i : idx) w[static_cast<std::size_t>(i)] = wj;
  }

  // The slack formulation (coefficients plus one absolute-value slack
  // per sample) has an equivalent box dual with d+1 equality rows:
  //   max y.z   s.t.  T^T z = 0,  -w <= z <= w,
  // whose row multipliers are the fitted coefficients.  This keeps the
  // tableau at (d+3) x (n + d + 2) regardless of sample count.
  lp::EqProblem dual;
  const std::size_t ncoef = static_cast<std::size_t>(degree) + 1;
  dual.c.resize(n);
  dual.u.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    dual.c[i] = -s.ys[i];
    dual.u[i] = 2.0 * w[i];
  }
  dual.rows.assign(ncoef, std::vector<double>(n, 0.0));
  dual.f.assign(ncoef, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double t0 = 1.0, t1 = s.xs[i];
    for (std::size_t k = 0; k < ncoef; ++k) {
      double tk = k == 0 ? 1.0 : (k == 1 ? t1 : 2.0 * s.xs[i] * t1 - t0);
      if (k >= 2) {
        t0 = t1;
        t1 = tk;
      }
      dual.rows[k][i] = tk;
      dual.f[k] += tk * w[i];
    }
  }

  lp::EqSolution sol = lp::solve_equality(dual);
  if (sol.status != lp::LPStatus::Optimal)
    throw std::runtime_error("l1_fit: LP solve failed");
  std::vector<double> coeffs(ncoef);
  for (std::size_t k = 0; k < ncoef; ++k) coeffs[k] = -sol.duals[k];
  return ChebPoly(std::move(coeffs));
}

std::vector<std::pair<double, double>> interval_medians(const SampleSet& s,
                                                        const Partition& part,
                                                        const ChebPoly& center) {
  auto buckets = assign(part, s);
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(part.m));
  for (int j = 1; j <= part.m; ++j) {
    auto& idx = buckets[static_cast<std::size_t>(j) - 1];
    if (idx.empty()) throw EmptyIntervalError(j);
    std::vector<double> res;
    res.reserve(idx.size());
    for (int i : idx)
      res.push_back(s.ys[static_cast<std::size_t>(i)] -
                    center(s.xs[static_cast<std::size_t>(i)]));
    auto mid = res.begin() + (static_cast<std::ptrdiff_t>(res.size()) - 1) / 2;
    std::nth_element(res.begin(), mid, res.end());  // lower median
    out.emplace_back(part.midpoint(j), *mid);
  }
  return out;
}

MinimaxFit linf_point_fit(const std::vector<std::pair<double, double>>& points,
                          int degree) {
  const std::size_t ncoef = static_cast<std::size_t>(degree) + 1;
  std::set<double> distinct;
  for (auto& [x, y] : points) distinct.insert(x);
  if (distinct.size() < ncoef) throw DegenerateNodesError();

  // Variables (c_0..c_d, t): minimize t subject to |q(x_j) - y_j| <= t.
  lp::LPProblem prob;
  prob.objective.assign(ncoef + 1, 0.0);
  prob.objective[ncoef] = 1.0;
  prob.constraint_matrix.reserve(2 * points.size());
  prob.rhs.reserve(2 * points.size());
  for (auto& [x, y] : points) {
    std::vector<double> row(ncoef + 1, 0.0);
    for (std::size_t k = 0; k < ncoef; ++k) row[k] = cheb_eval(static_cast<int>(k), x);
    row[ncoef] = -1.0;
    prob.constraint_matrix.push_back(row);  //  q(x) - t <= y
    prob.rhs.push_back(y);
    for (std::size_t k = 0; k < ncoef; ++k) row[k] = -row[k];
    row[ncoef] = -1.0;
    prob.constraint_matrix.push_back(std::move(row));  // -q(x) - t <= -y
    prob.rhs.push_back(-y);
  }
  lp::LPSolution sol = lp::solve(prob);
  if (sol.status != lp::LPStatus::Optimal)
    throw std::runtime_error("linf_point_fit: LP solve failed");
  MinimaxFit fit;
  fit.poly = ChebPoly(std::vector<double>(sol.v.begin(), sol.v.begin() + static_cast<std::ptrdiff_t>(ncoef)));
  fit.objective = sol.v[ncoef];
  return fit;
}

ChebPoly refine(const SampleSet& s, const Partition& part, const ChebPoly& p_hat,
                int degree) {
  auto meds = interval_medians(s, part, p_hat);
  MinimaxFit fit = linf_point_fit(meds, degree);
  return lincomb(1.0, p_hat, 1.0, fit.poly);
}

FitReport approx(const SampleSet& s, const FitConfig& cfg) {
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 0.5))
    throw std::invalid_argument("approx: epsilon must be in (0, 1/2)");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 0.5))
    throw std::invalid_argument("approx: alpha must be in (0, 1/2)");
  Partition part = build_partition(cfg.partition_size());

  FitReport rep;
  rep.l1_init_poly = cfg.skip_l1 ? ChebPoly::zero() : l1_fit(s, part, cfg.degree);
  ChebPoly p = rep.l1_init_poly;

  int rounds = cfg.round_count();
  if (cfg.max_rounds) rounds = std::min(rounds, std::max(0, *cfg.max_rounds));

  for (int t = 0; t <= rounds; ++t) {
    auto meds = interval_medians(s, part, p);
    RoundStats st;
    st.index = t;
    for (int j = 1; j <= part.m; ++j) {
      double v = std::abs(meds[static_cast<std::size_t>(j) - 1].second);
      st.residual_linf_estimate = std::max(st.residual_linf_estimate, v);
      st.residual_l1_estimate += part.length(j) * v;
    }
    rep.rounds.push_back(st);
    if (t == rounds) break;
    MinimaxFit fit = linf_point_fit(meds, cfg.degree);
    p = lincomb(1.0, p, 1.0, fit.poly);
  }
  rep.final_poly = p;

  // Flag two consecutive increases of the sup estimate.
  double tol = 1e-9 * (1.0 + rep.rounds.front().residual_linf_estimate);
  for (std::size_t t = 0; t + 2 < rep.rounds.size(); ++t) {
    if (rep.rounds[t + 1].residual_linf_estimate >
            rep.rounds[t].residual_linf_estimate + tol &&
        rep.rounds[t + 2].residual_linf_estimate >
            rep.rounds[t + 1].residual_linf_estimate + tol)
      rep.converged = false;
  }
  return rep;
}

}  // namespace robustpoly

#include "robustpoly/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace robustpoly::lp {

namespace {

constexpr double kPivotEps = 1e-9;
constexpr double kCostEps = 1e-9;

double feas_tol(double rhs_scale) { return 1e-7 * (1.0 + rhs_scale); }

// Bounded-variable two-phase tableau simplex.  Nonbasic variables sit
// at zero in working space; a variable at its upper bound is handled by
// the substitution z = u - w ("flipped" column).  Artificial columns
// are kept through both phases so the row multipliers can be read off
// their reduced costs at the end.
class Simplex {
 public:
  Simplex(const EqProblem& p, long cap) : cap_(cap) {
    K_ = p.rows.size();
    N_ = p.c.size();
    cols_ = N_ + K_;
    if (!p.u.empty() && p.u.size() != N_)
      throw std::invalid_argument("lp: bound vector size mismatch");
    u_ = p.u;
    if (u_.empty()) u_.assign(N_, kInf);
    u_.resize(cols_, kInf);
    flipped_.assign(cols_, false);
    state_.assign(cols_, kNonbasic);
    row_sign_.assign(K_, 1.0);

    tab_.assign(K_, std::vector<double>(cols_ + 1, 0.0));
    for (std::size_t r = 0; r < K_; ++r) {
      if (p.rows[r].size() != N_) throw std::invalid_argument("lp: ragged row");
      double s = p.f[r] < 0.0 ? -1.0 : 1.0;
      row_sign_[r] = s;
      for (std::size_t j = 0; j < N_; ++j) tab_[r][j] = s * p.rows[r][j];
      tab_[r][N_ + r] = 1.0;  // artificial
      tab_[r][cols_] = s * p.f[r];
      rhs_scale_ = std::max(rhs_scale_, std::abs(p.f[r]));
    }

    // Phase-2 reduced costs: structurals carry their own cost, basic
    // artificials cost nothing, so the row starts already reduced.
    cost2_.assign(cols_ + 1, 0.0);
    for (std::size_t j = 0; j < N_; ++j) cost2_[j] = p.c[j];
    // Phase-1 reduced costs for the all-artificial basis.
    cost1_.assign(cols_ + 1, 0.0);
    for (std::size_t j = 0; j < N_; ++j) {
      double s = 0.0;
      for (std::size_t r = 0; r < K_; ++r) s += tab_[r][j];
      cost1_[j] = -s;
    }
    for (std::size_t r = 0; r < K_; ++r) cost1_[cols_] -= tab_[r][cols_];

    basis_.resize(K_);
    for (std::size_t r = 0; r < K_; ++r) {
      basis_[r] = N_ + r;
      state_[N_ + r] = kBasic;
    }
  }

  EqSolution run(const EqProblem& p) {
    EqSolution out;
    // Phase 1: drive the artificial sum to zero.
    LPStatus s1 = iterate(cost1_, /*phase1=*/true);
    out.iterations = iters_;
    if (s1 == LPStatus::MaxIterations) {
      out.status = s1;
      return out;
    }
    double infeas = -cost1_[cols_];
    if (infeas > feas_tol(rhs_scale_)) {
      out.status = LPStatus::Infeasible;
      return out;
    }
    // Pin artificials at zero for phase 2.
    for (std::size_t j = N_; j < cols_; ++j) u_[j] = 0.0;

    LPStatus s2 = iterate(cost2_, /*phase1=*/false);
    out.iterations = iters_;
    out.status = s2;
    if (s2 != LPStatus::Optimal) return out;

    out.z.assign(N_, 0.0);
    for (std::size_t j = 0; j < N_; ++j) {
      double w = 0.0;
      if (state_[j] == kBasic) w = tab_[row_of_[j]][cols_];
      out.z[j] = flipped_[j] ? u_[j] - w : w;
    }
    out.objective_value = 0.0;
    for (std::size_t j = 0; j < N_; ++j) out.objective_value += p.c[j] * out.z[j];
    out.duals.assign(K_, 0.0);
    for (std::size_t r = 0; r < K_; ++r)
      out.duals[r] = -cost2_[N_ + r] * row_sign_[r];
    return out;
  }

 private:
  enum State : unsigned char { kNonbasic = 0, kBasic = 1 };

  void flip(std::size_t j) {
    double uj = u_[j];
    for (std::size_t r = 0; r < K_; ++r) {
      tab_[r][cols_] -= uj * tab_[r][j];
      tab_[r][j] = -tab_[r][j];
    }
    cost1_[cols_] -= uj * cost1_[j];
    cost1_[j] = -cost1_[j];
    cost2_[cols_] -= uj * cost2_[j];
    cost2_[j] = -cost2_[j];
    flipped_[j] = !flipped_[j];
  }

  void pivot(std::size_t r, std::size_t q) {
    double piv = tab_[r][q];
    double inv = 1.0 / piv;
    for (std::size_t j = 0; j <= cols_; ++j) tab_[r][j] *= inv;
    tab_[r][q] = 1.0;
    for (std::size_t i = 0; i < K_; ++i) {
      if (i == r) continue;
      double a = tab_[i][q];
      if (a == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) tab_[i][j] -= a * tab_[r][j];
      tab_[i][q] = 0.0;
    }
    for (auto* cost : {&cost1_, &cost2_}) {
      double a = (*cost)[q];
      if (a == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) (*cost)[j] -= a * tab_[r][j];
      (*cost)[q] = 0.0;
    }
    state_[basis_[r]] = kNonbasic;
    state_[q] = kBasic;
    basis_[r] = q;
    row_of_[q] = r;
  }

  // One simplex phase over the given cost row.
  LPStatus iterate(std::vector<double>& cost, bool phase1) {
    row_of_.assign(cols_, 0);
    for (std::size_t r = 0; r < K_; ++r) row_of_[basis_[r]] = r;
    long bland_after = 2 * static_cast<long>(K_ + cols_);
    while (true) {
      if (iters_ >= cap_) return LPStatus::MaxIterations;
      bool bland = iters_ >= bland_after;

      // Entering column: most negative reduced cost (Dantzig), or the
      // first negative one once the Bland anti-cycling rule kicks in.
      std::size_t q = cols_;
      double best = -kCostEps;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (state_[j] == kBasic) continue;
        if (!phase1 && j >= N_) continue;  // artificials stay out
        if (u_[j] <= 0.0) continue;        // fixed variables never enter
        double cj = cost[j];
        if (cj < best) {
          q = j;
          best = cj;
          if (bland) break;  // first eligible column suffices
        }
      }
      if (q == cols_) return LPStatus::Optimal;

      // Ratio test: entering variable grows from 0 until it hits its
      // own upper bound, a basic variable hits zero, or a basic
      // variable hits its upper bound.
      double theta = u_[q];
      int kind = 0;  // 0: bound flip, 1: basic->lower, 2: basic->upper
      std::size_t rstar = K_;
      for (std::size_t r = 0; r < K_; ++r) {
        double a = tab_[r][q];
        double beta = tab_[r][cols_];
        if (a > kPivotEps) {
          double t = std::max(beta / a, 0.0);
          if (t < theta - 1e-12 ||
              (t < theta + 1e-12 && rstar < K_ && basis_[r] < basis_[rstar])) {
            theta = t;
            kind = 1;
            rstar = r;
          }
        } else if (a < -kPivotEps && u_[basis_[r]] < kInf) {
          double t = std::max((u_[basis_[r]] - beta) / (-a), 0.0);
          if (t < theta - 1e-12 ||
              (t < theta + 1e-12 && rstar < K_ && basis_[r] < basis_[rstar])) {
            theta = t;
            kind = 2;
            rstar = r;
          }
        }
      }
      if (theta == kInf) return LPStatus::Unbounded;
      ++iters_;
      if (kind == 0) {
        flip(q);
      } else if (kind == 1) {
        pivot(rstar, q);
      } else {
        flip(basis_[rstar]);
        pivot(rstar, q);
      }
    }
  }

  std::size_t K_ = 0, N_ = 0, cols_ = 0;
  long cap_ = 0;
  long iters_ = 0;
  double rhs_scale_ = 0.0;
  std::vector<std::vector<double>> tab_;
  std::vector<double> cost1_, cost2_;
  std::vector<double> u_;
  std::vector<double> row_sign_;
  std::vector<std::size_t> basis_, row_of_;
  std::vector<unsigned char> state_;
  std::vector<bool> flipped_;
};

bool all_free(const LPProblem& p) {
  for (double l : p.lower)
    if (l > -kInf) return false;
  for (double h : p.upper)
    if (h < kInf) return false;
  return true;
}

LPSolution solve_direct(const LPProblem& p, long cap) {
  const std::size_t R = p.rows(), V = p.cols();
  // Shift/split variables to the nonnegative working space.
  struct VarMap {
    std::size_t pos;       // index of the (first) working column
    bool split = false;    // free variable: v = z+ - z-
    bool mirrored = false; // only upper bound: v = hi - z
    double shift = 0.0;    // lower bound when present, else hi for mirrored
  };
  std::vector<VarMap> vm(V);
  EqProblem eq;
  std::vector<double> ub;
  std::size_t nz = 0;
  for (std::size_t j = 0; j < V; ++j) {
    double lo = j < p.lower.size() ? p.lower[j] : -kInf;
    double hi = j < p.upper.size() ? p.upper[j] : kInf;
    if (lo > hi) return {LPStatus::Infeasible, {}, 0.0, 0};
    vm[j].pos = nz;
    if (lo > -kInf) {
      vm[j].shift = lo;
      ub.push_back(hi < kInf ? hi - lo : kInf);
      nz += 1;
    } else if (hi < kInf) {
      vm[j].mirrored = true;
      vm[j].shift = hi;
      ub.push_back(kInf);
      nz += 1;
    } else {
      vm[j].split = true;
      ub.push_back(kInf);
      ub.push_back(kInf);
      nz += 2;
    }
  }
  std::size_t slack0 = nz;
  nz += R;  // slack per inequality
  ub.resize(nz, kInf);

  eq.c.assign(nz, 0.0);
  for (std::size_t j = 0; j < V; ++j) {
    double cj = p.objective[j];
    if (vm[j].split) {
      eq.c[vm[j].pos] = cj;
      eq.c[vm[j].pos + 1] = -cj;
    } else {
      eq.c[vm[j].pos] = vm[j].mirrored ? -cj : cj;
    }
  }
  eq.rows.assign(R, std::vector<double>(nz, 0.0));
  eq.f.assign(R, 0.0);
  for (std::size_t r = 0; r < R; ++r) {
    if (p.constraint_matrix[r].size() != V)
      throw std::invalid_argument("lp: ragged constraint matrix");
    double rhs = p.rhs[r];
    for (std::size_t j = 0; j < V; ++j) {
      double a = p.constraint_matrix[r][j];
      if (vm[j].split) {
        eq.rows[r][vm[j].pos] = a;
        eq.rows[r][vm[j].pos + 1] = -a;
      } else if (vm[j].mirrored) {
        eq.rows[r][vm[j].pos] = -a;
        rhs -= a * vm[j].shift;
      } else {
        eq.rows[r][vm[j].pos] = a;
        rhs -= a * vm[j].shift;
      }
    }
    eq.rows[r][slack0 + r] = 1.0;
    eq.f[r] = rhs;
  }
  eq.u = std::move(ub);

  EqSolution es = solve_equality(eq, cap);
  LPSolution out;
  out.status = es.status;
  out.iterations = es.iterations;
  if (es.status != LPStatus::Optimal) return out;
  out.v.assign(V, 0.0);
  for (std::size_t j = 0; j < V; ++j) {
    if (vm[j].split)
      out.v[j] = es.z[vm[j].pos] - es.z[vm[j].pos + 1];
    else if (vm[j].mirrored)
      out.v[j] = vm[j].shift - es.z[vm[j].pos];
    else
      out.v[j] = vm[j].shift + es.z[vm[j].pos];
  }
  out.objective_value = 0.0;
  for (std::size_t j = 0; j < V; ++j) out.objective_value += p.objective[j] * out.v[j];
  return out;
}

// Tall, all-free problems: solve  min b.u  s.t.  A^T u = -c, u >= 0.
// The multipliers of the equality rows are an optimal primal point.
LPSolution solve_via_dual(const LPProblem& p, long cap) {
  const std::size_t R = p.rows(), V = p.cols();
  EqProblem dual;
  dual.c = p.rhs;
  dual.f.assign(V, 0.0);
  for (std::size_t j = 0; j < V; ++j) dual.f[j] = -p.objective[j];
  dual.rows.assign(V, std::vector<double>(R, 0.0));
  for (std::size_t r = 0; r < R; ++r)
    for (std::size_t j = 0; j < V; ++j) dual.rows[j][r] = p.constraint_matrix[r][j];

  EqSolution es = solve_equality(dual, cap);
  LPSolution out;
  out.iterations = es.iterations;
  switch (es.status) {
    case LPStatus::MaxIterations:
      out.status = LPStatus::MaxIterations;
      return out;
    case LPStatus::Unbounded:
      // Dual feasible but unbounded: the primal has no feasible point.
      out.status = LPStatus::Infeasible;
      return out;
    case LPStatus::Infeasible: {
      // Either the primal is unbounded or both are infeasible; a Farkas
      // certificate (w >= 0, A^T w = 0, b.w < 0, normalized) decides.
      EqProblem farkas;
      farkas.c = p.rhs;
      farkas.f.assign(V + 1, 0.0);
      farkas.f[V] = 1.0;
      farkas.rows.assign(V + 1, std::vector<double>(R, 0.0));
      for (std::size_t r = 0; r < R; ++r) {
        for (std::size_t j = 0; j < V; ++j)
          farkas.rows[j][r] = p.constraint_matrix[r][j];
        farkas.rows[V][r] = 1.0;
      }
      EqSolution fs = solve_equality(farkas, cap);
      double scale = 1.0;
      for (double b : p.rhs) scale = std::max(scale, std::abs(b));
      if (fs.status == LPStatus::Optimal && fs.objective_value < -1e-9 * scale)
        out.status = LPStatus::Infeasible;
      else
        out.status = LPStatus::Unbounded;
      return out;
    }
    case LPStatus::Optimal:
      break;
  }
  out.status = LPStatus::Optimal;
  out.v = es.duals;
  out.objective_value = 0.0;
  for (std::size_t j = 0; j < V; ++j) out.objective_value += p.objective[j] * out.v[j];
  return out;
}

}  // namespace

EqSolution solve_equality(const EqProblem& prob, long max_iterations) {
  if (prob.f.size() != prob.rows.size())
    throw std::invalid_argument("lp: rhs size mismatch");
  for (double v : prob.c)
    if (!std::isfinite(v)) throw std::invalid_argument("lp: non-finite objective");
  for (double v : prob.f)
    if (!std::isfinite(v)) throw std::invalid_argument("lp: non-finite rhs");
  long cap = max_iterations > 0
                 ? max_iterations
                 : 50 * static_cast<long>(prob.rows.size() + prob.c.size());
  Simplex s(prob, cap);
  return s.run(prob);
}

LPSolution solve(const LPProblem& prob) {
  if (prob.rhs.size() != prob.rows())
    throw std::invalid_argument("lp: rhs size mismatch");
  for (const auto& row : prob.constraint_matrix)
    for (double a : row)
      if (!std::isfinite(a)) throw std::invalid_argument("lp: non-finite entry");
  long cap = 50 * static_cast<long>(prob.rows() + prob.cols());
  if (all_free(prob) && prob.rows() >= 2 * prob.cols() + 16)
    return solve_via_dual(prob, cap);
  return solve_direct(prob, cap);
}

}  // namespace robustpoly::lp

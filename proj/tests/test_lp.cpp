#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "robustpoly/lp.hpp"
#include "robustpoly/rng.hpp"

using namespace robustpoly;
using lp::LPProblem;
using lp::LPSolution;
using lp::LPStatus;

namespace {

// Brute-force oracle: enumerate all vertex candidates (square subsystems
// of active constraints), keep the feasible ones, return the best value.
double vertex_enumeration_min(const LPProblem& p) {
  const std::size_t R = p.rows(), V = p.cols();
  std::vector<std::size_t> idx(V);
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> comb;
  comb.reserve(V);

  auto solve_square = [&](const std::vector<std::size_t>& rows_sel,
                          std::vector<double>& x) {
    std::vector<std::vector<double>> a(V, std::vector<double>(V + 1, 0.0));
    for (std::size_t r = 0; r < V; ++r) {
      for (std::size_t c = 0; c < V; ++c)
        a[r][c] = p.constraint_matrix[rows_sel[r]][c];
      a[r][V] = p.rhs[rows_sel[r]];
    }
    for (std::size_t c = 0; c < V; ++c) {
      std::size_t piv = c;
      for (std::size_t r = c + 1; r < V; ++r)
        if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
      if (std::abs(a[piv][c]) < 1e-10) return false;
      std::swap(a[c], a[piv]);
      for (std::size_t r = 0; r < V; ++r) {
        if (r == c) continue;
        double f = a[r][c] / a[c][c];
        for (std::size_t k = c; k <= V; ++k) a[r][k] -= f * a[c][k];
      }
    }
    x.resize(V);
    for (std::size_t c = 0; c < V; ++c) x[c] = a[c][V] / a[c][c];
    return true;
  };

  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (comb.size() == V) {
      std::vector<double> x;
      if (!solve_square(comb, x)) return;
      for (std::size_t r = 0; r < R; ++r) {
        double lhs = 0.0;
        for (std::size_t c = 0; c < V; ++c) lhs += p.constraint_matrix[r][c] * x[c];
        if (lhs > p.rhs[r] + 1e-7) return;
      }
      double obj = 0.0;
      for (std::size_t c = 0; c < V; ++c) obj += p.objective[c] * x[c];
      best = std::min(best, obj);
      return;
    }
    for (std::size_t r = start; r < R; ++r) {
      comb.push_back(r);
      rec(r + 1);
      comb.pop_back();
    }
  };
  rec(0);
  return best;
}

LPProblem random_box_lp(std::size_t rows, std::size_t vars, std::uint64_t seed) {
  LPProblem p;
  p.objective.resize(vars);
  for (std::size_t j = 0; j < vars; ++j)
    p.objective[j] = 2.0 * rng::uniform(seed, 1, j) - 1.0;
  p.constraint_matrix.assign(rows, std::vector<double>(vars, 0.0));
  p.rhs.assign(rows, 0.0);
  std::uint64_t c = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t j = 0; j < vars; ++j)
      p.constraint_matrix[r][j] = 2.0 * rng::uniform(seed, 2, c++) - 1.0;
    p.rhs[r] = 0.5 + rng::uniform(seed, 3, r);  // 0 is feasible
  }
  // Box rows keep it bounded.
  for (std::size_t j = 0; j < vars; ++j) {
    std::vector<double> row(vars, 0.0);
    row[j] = 1.0;
    p.constraint_matrix.push_back(row);
    p.rhs.push_back(1.0);
    row[j] = -1.0;
    p.constraint_matrix.push_back(row);
    p.rhs.push_back(1.0);
  }
  return p;
}

}  // namespace

TEST_CASE("one-variable toys") {
  LPProblem p;
  p.objective = {1.0};
  p.constraint_matrix = {{-1.0}};
  p.rhs = {-1.0};
  LPSolution s = lp::solve(p);  // min v s.t. v >= 1
  REQUIRE(s.status == LPStatus::Optimal);
  CHECK(s.v[0] == doctest::Approx(1.0));
  CHECK(s.objective_value == doctest::Approx(1.0));

  p.constraint_matrix = {{1.0}, {-1.0}};
  p.rhs = {0.0, -1.0};  // v <= 0 and v >= 1
  CHECK(lp::solve(p).status == LPStatus::Infeasible);

  p.constraint_matrix = {{1.0}};
  p.rhs = {3.0};  // min v s.t. v <= 3
  CHECK(lp::solve(p).status == LPStatus::Unbounded);
}

TEST_CASE("variable bounds participate") {
  LPProblem p;
  p.objective = {1.0, 1.0};
  p.constraint_matrix = {{-1.0, -1.0}};
  p.rhs = {-1.0};  // x + y >= 1
  p.lower = {0.25, -lp::kInf};
  p.upper = {lp::kInf, 0.5};
  LPSolution s = lp::solve(p);
  REQUIRE(s.status == LPStatus::Optimal);
  CHECK(s.objective_value == doctest::Approx(1.0));
  CHECK(s.v[0] >= 0.25 - 1e-9);
  CHECK(s.v[1] <= 0.5 + 1e-9);
}

TEST_CASE("random LP matches the vertex-enumeration oracle") {
  LPProblem p = random_box_lp(5, 8, 3);
  LPSolution s = lp::solve(p);
  REQUIRE(s.status == LPStatus::Optimal);
  double oracle = vertex_enumeration_min(p);
  CHECK(s.objective_value == doctest::Approx(oracle).epsilon(1e-7));
  // And a larger instance stays consistent on feasibility and weak duality.
  LPProblem big = random_box_lp(20, 40, 3);
  LPSolution sb = lp::solve(big);
  REQUIRE(sb.status == LPStatus::Optimal);
  for (std::size_t r = 0; r < big.rows(); ++r) {
    double lhs = 0.0;
    for (std::size_t c = 0; c < big.cols(); ++c)
      lhs += big.constraint_matrix[r][c] * sb.v[c];
    CHECK(lhs <= big.rhs[r] + 1e-7 * (1.0 + std::abs(big.rhs[r])));
  }
}

TEST_CASE("weak duality spot-check: feasible points never beat the optimum") {
  LPProblem p = random_box_lp(12, 6, 11);
  LPSolution s = lp::solve(p);
  REQUIRE(s.status == LPStatus::Optimal);
  for (int t = 0; t < 2000; ++t) {
    std::vector<double> x(p.cols());
    for (std::size_t j = 0; j < x.size(); ++j)
      x[j] = 2.0 * rng::uniform(500 + t, 4, j) - 1.0;
    bool feasible = true;
    for (std::size_t r = 0; r < p.rows() && feasible; ++r) {
      double lhs = 0.0;
      for (std::size_t c = 0; c < p.cols(); ++c)
        lhs += p.constraint_matrix[r][c] * x[c];
      feasible = lhs <= p.rhs[r];
    }
    if (!feasible) continue;
    double obj = 0.0;
    for (std::size_t c = 0; c < p.cols(); ++c) obj += p.objective[c] * x[c];
    CHECK(obj >= s.objective_value - 1e-7);
  }
}

TEST_CASE("solver is deterministic") {
  LPProblem p = random_box_lp(20, 40, 9);
  LPSolution a = lp::solve(p);
  LPSolution b = lp::solve(p);
  REQUIRE(a.status == LPStatus::Optimal);
  CHECK(a.v == b.v);  // identical bits
  CHECK(a.objective_value == b.objective_value);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("scaling b and c by 10 scales the objective, same vertex") {
  LPProblem p = random_box_lp(10, 5, 21);
  LPSolution base = lp::solve(p);
  REQUIRE(base.status == LPStatus::Optimal);
  LPProblem scaled = p;
  for (double& v : scaled.objective) v *= 10.0;
  for (double& v : scaled.rhs) v *= 10.0;
  LPSolution s = lp::solve(scaled);
  REQUIRE(s.status == LPStatus::Optimal);
  CHECK(s.objective_value ==
        doctest::Approx(100.0 * base.objective_value).epsilon(1e-9));
  for (std::size_t j = 0; j < p.cols(); ++j)
    CHECK(s.v[j] == doctest::Approx(10.0 * base.v[j]).epsilon(1e-8));
}

TEST_CASE("tall problems route through the dual and agree with the direct path") {
  // minimize t s.t. |y_g - (c0 + c1 x_g)| <= t on a grid: tall and all-free.
  LPProblem p;
  p.objective = {0.0, 0.0, 1.0};
  for (int g = 0; g <= 100; ++g) {
    double x = -1.0 + 0.02 * g;
    double y = 1.0 + 0.5 * x + 0.25 * (2.0 * x * x - 1.0);
    p.constraint_matrix.push_back({1.0, x, -1.0});
    p.rhs.push_back(y);
    p.constraint_matrix.push_back({-1.0, -x, -1.0});
    p.rhs.push_back(-y);
  }
  LPSolution s = lp::solve(p);  // 202 rows, 3 cols: dual path
  REQUIRE(s.status == LPStatus::Optimal);
  // The T_2 component is orthogonal to lines in the minimax sense, so the
  // best line is 1 + 0.5 x with equioscillation level 0.25.
  CHECK(s.objective_value == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(s.v[0] == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(s.v[1] == doctest::Approx(0.5).epsilon(1e-5));

  // Tall infeasible: v <= -1 and v >= 1, replicated.
  LPProblem bad;
  bad.objective = {1.0};
  for (int i = 0; i < 40; ++i) {
    bad.constraint_matrix.push_back({1.0});
    bad.rhs.push_back(-1.0);
    bad.constraint_matrix.push_back({-1.0});
    bad.rhs.push_back(-1.0);
  }
  CHECK(lp::solve(bad).status == LPStatus::Infeasible);

  // Tall but unbounded: many copies of v <= 1, minimize v.
  LPProblem unb;
  unb.objective = {1.0};
  for (int i = 0; i < 40; ++i) {
    unb.constraint_matrix.push_back({1.0});
    unb.rhs.push_back(1.0);
  }
  CHECK(lp::solve(unb).status == LPStatus::Unbounded);
}

TEST_CASE("randomized agreement with the vertex-enumeration oracle") {
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    LPProblem p = random_box_lp(6, 3, seed);
    LPSolution s = lp::solve(p);
    REQUIRE(s.status == LPStatus::Optimal);
    double oracle = vertex_enumeration_min(p);
    CHECK(s.objective_value == doctest::Approx(oracle).epsilon(1e-7));
  }
}

TEST_CASE("random infeasible and unbounded instances are classified") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    // x <= a and x >= a + gap: infeasible for positive gap.
    double a = rng::uniform(seed, 1, 0);
    LPProblem bad;
    bad.objective = {1.0, rng::uniform(seed, 1, 1)};
    bad.constraint_matrix = {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}};
    bad.rhs = {a, -(a + 0.5), 1.0};
    CHECK(lp::solve(bad).status == LPStatus::Infeasible);

    // Minimize an uncontained direction.
    LPProblem unb;
    unb.objective = {-1.0, 0.0};
    unb.constraint_matrix = {{-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
    unb.rhs = {rng::uniform(seed, 2, 0), 1.0, 1.0};
    CHECK(lp::solve(unb).status == LPStatus::Unbounded);
  }
}

TEST_CASE("dual path agrees with the direct path on tall problems") {
  // The same minimax-style system solved all-free (dual route) and with
  // finite boxes far wider than the optimum (direct route) must agree.
  for (std::uint64_t seed = 7; seed < 12; ++seed) {
    LPProblem p;
    p.objective = {0.0, 0.0, 0.0, 1.0};
    for (int g = 0; g <= 60; ++g) {
      double x = -1.0 + g / 30.0;
      double y = 2.0 * rng::uniform(seed, 5, static_cast<std::uint64_t>(g)) - 1.0;
      p.constraint_matrix.push_back({1.0, x, 2.0 * x * x - 1.0, -1.0});
      p.rhs.push_back(y);
      p.constraint_matrix.push_back({-1.0, -x, -(2.0 * x * x - 1.0), -1.0});
      p.rhs.push_back(-y);
    }
    LPSolution tall = lp::solve(p);
    REQUIRE(tall.status == LPStatus::Optimal);

    LPProblem boxed = p;
    boxed.lower.assign(4, -100.0);
    boxed.upper.assign(4, 100.0);
    LPSolution direct = lp::solve(boxed);
    REQUIRE(direct.status == LPStatus::Optimal);
    CHECK(tall.objective_value ==
          doctest::Approx(direct.objective_value).epsilon(1e-7));
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(std::abs(tall.v[j] - direct.v[j]) <= 1e-6);
  }
}

TEST_CASE("equality-form core handles upper bounds and duals") {
  // min -z1 - z2 s.t. z1 + z2 = 1.5, 0 <= z <= 1: optimum 1.5 split.
  lp::EqProblem eq;
  eq.c = {-1.0, -1.0};
  eq.rows = {{1.0, 1.0}};
  eq.f = {1.5};
  eq.u = {1.0, 1.0};
  lp::EqSolution s = lp::solve_equality(eq);
  REQUIRE(s.status == LPStatus::Optimal);
  CHECK(s.z[0] + s.z[1] == doctest::Approx(1.5));
  CHECK(s.objective_value == doctest::Approx(-1.5));
  // Multiplier: relaxing the row by delta changes the optimum by -delta.
  CHECK(s.duals[0] == doctest::Approx(-1.0));
}

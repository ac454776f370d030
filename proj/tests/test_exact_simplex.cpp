#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "rankineq/errors.hpp"
#include "rankineq/exact_simplex.hpp"

using namespace rankineq;

namespace {

using Dense = std::vector<std::vector<Rational>>;

StandardFormLp from_dense(const Dense& a, const std::vector<Rational>& b, const std::vector<Rational>& c) {
  StandardFormLp lp;
  lp.rows = a.size();
  lp.rhs = b;
  lp.cost = c;
  lp.columns.resize(c.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j)
      if (a[i][j] != 0) lp.columns[j].emplace_back(i, a[i][j]);
  return lp;
}

// min c.x s.t. A x >= b, x free, as  A x+ - A x- - s = b.
StandardFormLp inequality_form(const Dense& a, const std::vector<Rational>& b, const std::vector<Rational>& c) {
  const std::size_t m = a.size(), n = c.size();
  Dense big(m, std::vector<Rational>(2 * n + m, 0));
  std::vector<Rational> cost(2 * n + m, 0);
  for (std::size_t j = 0; j < n; ++j) {
    cost[j] = c[j];
    cost[n + j] = -c[j];
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      big[i][j] = a[i][j];
      big[i][n + j] = -a[i][j];
    }
    big[i][2 * n + i] = -1;
  }
  return from_dense(big, b, cost);
}

void expect_certificates(const StandardFormLp& lp, const SimplexResult& r) {
  ASSERT_EQ(r.status, SimplexStatus::optimal);
  Rational obj = 0, dual = 0;
  for (std::size_t j = 0; j < lp.columns.size(); ++j) {
    EXPECT_GE(r.x[j], 0);
    obj += lp.cost[j] * r.x[j];
    Rational reduced = lp.cost[j];
    for (const auto& [row, v] : lp.columns[j]) reduced -= r.multipliers[row] * v;
    EXPECT_GE(reduced, 0);
  }
  for (std::size_t i = 0; i < lp.rows; ++i) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < lp.columns.size(); ++j)
      for (const auto& [row, v] : lp.columns[j])
        if (row == i) lhs += v * r.x[j];
    EXPECT_EQ(lhs, lp.rhs[i]);
    dual += lp.rhs[i] * r.multipliers[i];
  }
  EXPECT_EQ(obj, r.objective);
  EXPECT_EQ(dual, r.objective);
}

}  // namespace

TEST(Simplex, SmallTextbookProgram) {
  // min -x - y  s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
  auto lp = from_dense({{1, 2, 1, 0}, {3, 1, 0, 1}}, {4, 6}, {-1, -1, 0, 0});
  auto r = solve_standard_form(lp);
  EXPECT_EQ(r.objective, Rational(-14, 5));
  EXPECT_EQ(r.x[0], Rational(8, 5));
  EXPECT_EQ(r.x[1], Rational(6, 5));
  expect_certificates(lp, r);
}

TEST(Simplex, NegativeRightHandSidesAndRedundantRows) {
  auto lp = from_dense({{-1, -1, 1}, {-2, -2, 2}, {1, 0, 0}}, {-2, -4, 1}, {1, 2, 0});
  auto r = solve_standard_form(lp);
  EXPECT_EQ(r.objective, Rational(3));
  expect_certificates(lp, r);
}

TEST(Simplex, InfeasibleAndUnbounded) {
  EXPECT_EQ(solve_standard_form(from_dense({{1, 1}}, {-1}, {0, 0})).status, SimplexStatus::infeasible);
  EXPECT_EQ(solve_standard_form(from_dense({{1, -1}}, {0}, {-1, 0})).status, SimplexStatus::unbounded);
}

// Beale's example cycles under the textbook largest-coefficient rule.
TEST(Simplex, BealeCyclingExampleTerminates) {
  Dense a = {{Rational(1, 4), -8, -1, 9, 1, 0, 0}, {Rational(1, 2), -12, Rational(-1, 2), 3, 0, 1, 0},
             {0, 0, 1, 0, 0, 0, 1}};
  auto lp = from_dense(a, {0, 0, 1}, {Rational(-3, 4), 20, Rational(-1, 2), 6, 0, 0, 0});
  auto r = solve_standard_form(lp);
  EXPECT_EQ(r.objective, Rational(-5, 4));
  expect_certificates(lp, r);
}

TEST(Simplex, PivotLimitAndShapeErrors) {
  auto lp = from_dense({{1, 2, 1, 0}, {3, 1, 0, 1}}, {4, 6}, {-1, -1, 0, 0});
  EXPECT_EQ(solve_standard_form(lp, {1}).status, SimplexStatus::pivot_limit);
  auto bad = lp;
  bad.columns[0].emplace_back(5, Rational(1));
  EXPECT_THROW(solve_standard_form(bad), ShapeError);
  bad = lp;
  bad.rhs.pop_back();
  EXPECT_THROW(solve_standard_form(bad), ShapeError);
}

TEST(Simplex, MatchesVertexEnumerationOnRandomBoxedPrograms) {
  std::mt19937_64 rng(5);
  auto draw = [&](int lo, int hi) { return Rational(std::uniform_int_distribution<int>(lo, hi)(rng)); };
  int feasible = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 1 + trial % 3, m = 1 + (trial / 3) % 4;
    std::vector<std::vector<mpq_class>> a;
    std::vector<mpq_class> b, c(n);
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<mpq_class> row(n);
      for (auto& v : row) v = draw(-3, 3);
      a.push_back(row);
      b.push_back(draw(-4, 2));
    }
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<mpq_class> lo(n, 0), hi(n, 0);
      lo[j] = 1;
      hi[j] = -1;
      a.push_back(lo);
      b.push_back(-5);
      a.push_back(hi);
      b.push_back(-5);
      c[j] = draw(-4, 4);
    }
    auto want = oracle::brute_force_lp_min(a, b, c);
    auto lp = inequality_form(a, b, c);
    auto got = solve_standard_form(lp);
    if (!want) {
      EXPECT_EQ(got.status, SimplexStatus::infeasible) << trial;
      continue;
    }
    ++feasible;
    ASSERT_EQ(got.status, SimplexStatus::optimal) << trial;
    EXPECT_EQ(got.objective, *want) << trial;
    expect_certificates(lp, got);
  }
  EXPECT_GT(feasible, 200);
}

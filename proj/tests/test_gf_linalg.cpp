#include <gtest/gtest.h>

#include <sstream>

#include "generators.hpp"
#include "oracles.hpp"
#include "rankineq/errors.hpp"
#include "rankineq/gf_linalg.hpp"

using namespace rankineq;

namespace {

PrimeFieldMatrix mat(std::uint32_t p, std::vector<std::vector<std::int64_t>> rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  return PrimeFieldMatrix::from_rows(PrimeField(p), cols, rows);
}

Subspace span(std::uint32_t p, std::vector<std::vector<std::int64_t>> rows) { return Subspace::span(mat(p, rows)); }

std::vector<oracle::Vec> rows_of(const PrimeFieldMatrix& m) {
  std::vector<oracle::Vec> out;
  for (std::size_t r = 0; r < m.rows(); ++r) out.emplace_back(m.row(r).begin(), m.row(r).end());
  return out;
}

}  // namespace

TEST(PrimeField, RejectsNonPrimesAndLargeModuli) {
  EXPECT_THROW(PrimeField(1), InvalidArgument);
  EXPECT_THROW(PrimeField(4), InvalidArgument);
  EXPECT_THROW(PrimeField(65537), InvalidArgument);
  EXPECT_NO_THROW(PrimeField(65521));
}

TEST(PrimeField, InverseAndReduction) {
  PrimeField f(13);
  for (FieldElement a = 1; a < 13; ++a) EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
  EXPECT_THROW(f.inv(0), InvalidArgument);
  EXPECT_EQ(f.reduce(-1), 12u);
  EXPECT_EQ(f.reduce(27), 1u);
}

TEST(Matrix, ShapeChecks) {
  PrimeField f(3);
  std::vector<std::int64_t> v = {1, 2, 3};
  EXPECT_THROW(PrimeFieldMatrix(f, 2, 2, v), ShapeError);
  EXPECT_THROW(mat(3, {{1, 0}}).stack(mat(3, {{1, 0, 0}})), DimensionMismatch);
}

TEST(Rref, SpecExamples) {
  EXPECT_EQ(rank(mat(2, {{1, 1}, {1, 1}})), 1u);
  EXPECT_EQ(rank(PrimeFieldMatrix::identity(PrimeField(5), 3)), 3u);
  EXPECT_EQ(rank(mat(2, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}})), 2u);
}

TEST(Rref, MatchesEnumerationAndIsIdempotent) {
  gen::Rng rng(11);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    PrimeField f(p);
    for (int trial = 0; trial < 150; ++trial) {
      const auto rows = gen::uniform(rng, 0, 4), cols = gen::uniform(rng, 1, 4);
      auto m = gen::random_matrix(f, rows, cols, rng);
      auto red = rref_rank(m);
      EXPECT_EQ(red.rank, oracle::dim_by_enumeration(rows_of(m), p, cols));
      EXPECT_EQ(rref_rank(red.rref).rref, red.rref);
      EXPECT_EQ(Subspace::span(red.rref), Subspace::span(m));
    }
  }
}

TEST(Kernel, SpecExamples) {
  EXPECT_EQ(kernel_basis(mat(2, {{1, 1, 1}})).dim(), 2u);
  EXPECT_EQ(kernel_basis(mat(3, {{1, 1}, {0, 1}})).dim(), 0u);
  auto k = kernel_basis(mat(2, {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
  EXPECT_EQ(k, span(2, {{1, 1, 1}}));
}

TEST(Kernel, AnnihilatesAndHasComplementaryDimension) {
  gen::Rng rng(12);
  PrimeField f(7);
  for (int trial = 0; trial < 200; ++trial) {
    auto m = gen::random_matrix(f, gen::uniform(rng, 1, 4), gen::uniform(rng, 1, 5), rng);
    auto k = kernel_basis(m);
    EXPECT_EQ(k.dim(), m.cols() - rank(m));
    if (k.dim()) EXPECT_EQ(rank(m.multiply(k.basis().transpose())), 0u);
  }
}

TEST(SubspaceSum, SpecExamples) {
  EXPECT_EQ(subspace_sum(span(2, {{1, 0, 0}}), span(2, {{1, 1, 0}})).dim(), 2u);
  auto u = span(5, {{1, 2, 3}, {0, 1, 4}});
  EXPECT_EQ(subspace_sum(u, u), u);
  std::vector<Subspace> bs = {span(2, {{0, 1, 1}}), span(2, {{1, 0, 1}}), span(2, {{1, 1, 0}})};
  EXPECT_EQ(subspace_sum(bs).dim(), 2u);
  EXPECT_THROW(subspace_sum(span(2, {{1, 0}}), span(2, {{1, 0, 0}})), DimensionMismatch);
  EXPECT_THROW(subspace_sum(span(2, {{1, 0}}), span(3, {{1, 0}})), DimensionMismatch);
}

TEST(SubspaceIntersect, SpecExamples) {
  EXPECT_EQ(subspace_intersect(span(3, {{1, 0, 0}, {0, 1, 0}}), span(3, {{0, 1, 0}, {0, 0, 1}})), span(3, {{0, 1, 0}}));
  auto u = span(3, {{1, 2, 0}});
  EXPECT_EQ(subspace_intersect(u, Subspace::zero(PrimeField(3), 3)).dim(), 0u);
  auto even = span(2, {{1, 1, 0}, {0, 1, 1}});
  EXPECT_EQ(subspace_intersect(span(2, {{1, 1, 1}}), even).dim(), 0u);
}

TEST(SubspaceIntersect, MatchesEnumeration) {
  gen::Rng rng(13);
  for (std::uint32_t p : {2u, 3u}) {
    PrimeField f(p);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = gen::uniform(rng, 1, 4);
      auto u = gen::random_subspace(f, n, 3, rng), v = gen::random_subspace(f, n, 3, rng);
      EXPECT_EQ(subspace_intersect(u, v).dim(),
                oracle::intersection_dim_by_enumeration(rows_of(u.basis()), rows_of(v.basis()), p, n));
      auto w = subspace_intersect(u, v);
      EXPECT_TRUE(u.contains(w));
      EXPECT_TRUE(v.contains(w));
    }
  }
}

TEST(SubspaceIntersect, ModularDimensionLaw) {
  gen::Rng rng(14);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    PrimeField f(p);
    for (int trial = 0; trial < 500; ++trial) {
      const std::size_t n = gen::uniform(rng, 1, 7);
      auto u = gen::random_subspace(f, n, 4, rng), v = gen::random_subspace(f, n, 4, rng);
      EXPECT_EQ(subspace_sum(u, v).dim() + subspace_intersect(u, v).dim(), u.dim() + v.dim());
    }
  }
}

TEST(SolveLeft, ReconstructsMembersAndRejectsOutsiders) {
  auto g = mat(3, {{1, 0, 1}, {0, 1, 1}});
  std::vector<FieldElement> inside = {2, 1, 0};
  auto lambda = solve_left(g, inside);
  ASSERT_TRUE(lambda);
  EXPECT_EQ((*lambda)[0], 2u);
  EXPECT_EQ((*lambda)[1], 1u);
  std::vector<FieldElement> outside = {1, 0, 0};
  EXPECT_FALSE(solve_left(g, outside));
}

TEST(ComplementaryTuple, ValidAndInvalid) {
  PrimeField f(2);
  std::vector<Subspace> parts = {span(2, {{1, 0, 0}}), span(2, {{0, 1, 0}}), span(2, {{0, 0, 1}})};
  EXPECT_NO_THROW(ComplementaryTuple(parts, span(2, {{1, 1, 1}})));
  EXPECT_THROW(ComplementaryTuple(parts, span(2, {{1, 1, 0}})), InvalidTuple);
  std::vector<Subspace> overlapping = {span(2, {{1, 0, 0}}), span(2, {{1, 0, 0}})};
  EXPECT_TRUE(ComplementaryTuple::check(overlapping, Subspace::zero(f, 3)).has_value());
}

TEST(Projection, SpecExamples) {
  ComplementaryTuple t({span(5, {{1, 0}}), span(5, {{0, 1}})}, span(5, {{1, 1}}));
  std::vector<std::size_t> first = {0}, both = {0, 1};
  EXPECT_EQ(project_component(t, first), span(5, {{1, 0}}));
  EXPECT_EQ(project_component(t, both), t.extra());
  std::vector<std::size_t> bad = {2};
  EXPECT_THROW(project_component(t, bad), InvalidArgument);
}

TEST(Projection, PreservesDimensionOnRandomTuples) {
  gen::Rng rng(15);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    PrimeField f(p);
    for (int trial = 0; trial < 200; ++trial) {
      auto s = gen::random_complementary_tuple(f, rng);
      ComplementaryTuple t(s.parts, s.extra);
      const std::size_t n = s.parts.size();
      for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
          if (mask >> i & 1) idx.push_back(i);
        EXPECT_EQ(project_component(t, idx).dim(), s.extra.dim());
      }
      for (const auto& a : s.parts) EXPECT_LE(s.extra.dim(), a.dim());
    }
  }
}

TEST(Refinement, SpecExamples) {
  std::vector<Subspace> parts = {span(2, {{1, 0}}), span(2, {{0, 1}})};
  auto out = complementary_refinement(parts, span(2, {{1, 1}}));
  EXPECT_EQ(out, parts);

  auto zero = complementary_refinement(parts, Subspace::zero(PrimeField(2), 2));
  for (const auto& a : zero) EXPECT_EQ(a.dim(), 0u);

  std::vector<Subspace> p3 = {span(3, {{1, 0, 0}, {0, 1, 0}}), span(3, {{0, 0, 1}})};
  auto r = complementary_refinement(p3, span(3, {{1, 0, 1}}));
  EXPECT_EQ(r[0], span(3, {{1, 0, 0}}));
  EXPECT_EQ(r[1], span(3, {{0, 0, 1}}));
}

TEST(Refinement, ReportsFailingIndex) {
  std::vector<Subspace> parts = {span(3, {{1, 0, 0}}), span(3, {{1, 0, 0}, {0, 1, 0}})};
  try {
    complementary_refinement(parts, span(3, {{1, 1, 0}}));
    FAIL() << "expected a precondition violation";
  } catch (const PreconditionViolation& e) {
    EXPECT_EQ(e.index(), 0u);
  }
  try {
    complementary_refinement(parts, span(3, {{0, 0, 1}}));
    FAIL() << "expected a precondition violation";
  } catch (const PreconditionViolation& e) {
    EXPECT_EQ(e.index(), parts.size());
  }
}

TEST(Refinement, InvariantsOnRandomInputs) {
  gen::Rng rng(16);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    PrimeField f(p);
    for (int trial = 0; trial < 200; ++trial) {
      auto s = gen::random_refinement_input(f, rng);
      auto bars = complementary_refinement(s.parts, s.extra);
      ASSERT_EQ(bars.size(), s.parts.size());
      for (std::size_t k = 0; k < bars.size(); ++k) {
        EXPECT_TRUE(s.parts[k].contains(bars[k]));
        EXPECT_EQ(bars[k].dim(), s.extra.dim());
        std::vector<Subspace> others;
        for (std::size_t i = 0; i < s.parts.size(); ++i)
          if (i != k) others.push_back(s.parts[i]);
        if (!others.empty()) EXPECT_EQ(subspace_intersect(bars[k], subspace_sum(others)).dim(), 0u);
      }
      EXPECT_FALSE(ComplementaryTuple::check(bars, s.extra).has_value());
    }
  }
}

TEST(MatrixText, RoundTripAndErrors) {
  auto m = mat(7, {{1, 2, 3}, {4, 5, 6}});
  std::ostringstream out;
  write_matrix_text(out, m);
  std::istringstream in("# comment\n\n" + out.str());
  EXPECT_EQ(read_matrix_text(in), m);
  std::istringstream bad("7 2 2\n1 2\n3\n");
  EXPECT_THROW(read_matrix_text(bad), ParseError);
  std::istringstream empty("");
  EXPECT_THROW(read_matrix_text(empty), ParseError);
}

#include <gtest/gtest.h>

#include <map>

#include "generators.hpp"
#include "oracles.hpp"
#include "rankineq/errors.hpp"
#include "rankineq/verifier.hpp"

using namespace rankineq;

namespace {

using L = VariableLabel;

std::vector<std::int64_t> vec(std::initializer_list<std::int64_t> v) { return v; }

// Evaluates joint entropies by enumerating every vector of each span.
Rational enumerated_value(const std::vector<EntropyTerm>& terms, const std::map<L, oracle::Vec>& gens,
                          std::uint32_t p, std::size_t n) {
  Rational total = 0;
  for (const auto& t : terms) {
    std::vector<oracle::Vec> g;
    for (const auto& v : t.vars) g.push_back(gens.at(v));
    total += t.coeff * static_cast<long>(oracle::dim_by_enumeration(g, p, n));
  }
  return total;
}

// Fano witness vectors written out by hand.
std::map<L, oracle::Vec> fano_witness(std::uint32_t p) {
  std::map<L, oracle::Vec> g;
  g[L::a(1)] = {1, 0, 0};
  g[L::a(2)] = {0, 1, 0};
  g[L::a(3)] = {0, 0, 1};
  g[L::b(1)] = {0, 1, 1};
  g[L::b(2)] = {1, 0, 1};
  g[L::b(3)] = {1, 1, 0};
  g[L::c()] = {1, 1, 1};
  for (auto& [label, v] : g)
    for (auto& x : v) x %= p;
  return g;
}

std::vector<std::uint32_t> primes_2357 = {2, 3, 5, 7};

}  // namespace

TEST(Evaluate, SpecExamples) {
  PrimeField f(3);
  Assignment a(f, 3);
  a.set(L::c(), Subspace::of_vector(f, vec({1, 1, 0})));
  EXPECT_EQ(evaluate_expression(canonicalize({{1, {L::c()}}}), a), 1);

  a.set(L::b(1), a.at(L::c()));
  InfoExpression self;
  self.mutual(1, {L::c()}, {L::b(1)});
  EXPECT_EQ(evaluate_expression(expand_to_joint_entropies(self), a), 1);

  Assignment same(f, 3);
  for (std::size_t i = 1; i <= 4; ++i) same.set(L::a(i), Subspace::of_vector(f, vec({1, 0, 0})));
  auto r = check_inequality(ingleton_inequality(), same);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.slack, 0);

  EXPECT_THROW(evaluate_expression(canonicalize({{1, {L::a(9)}}}), a), UnmappedVariable);
  EXPECT_THROW(a.set(L::a(1), Subspace::zero(f, 4)), DimensionMismatch);
  EXPECT_THROW(a.set(L::a(1), Subspace::zero(PrimeField(5), 3)), DimensionMismatch);
}

TEST(Canonical, FanoVectors) {
  auto seed = family_matrix(7, 2);
  for (std::uint32_t p : primes_2357) {
    auto a = canonical_counterexample(seed, p);
    EXPECT_EQ(a.ambient_dim(), 3u);
    auto want = fano_witness(p);
    ASSERT_EQ(a.map().size(), want.size());
    for (const auto& [label, v] : want) {
      EXPECT_EQ(a.at(label).dim(), 1u);
      EXPECT_TRUE(a.at(label).contains(std::span<const FieldElement>(v))) << label.name() << " p=" << p;
    }
  }
}

TEST(Canonical, EveryAssignedSubspaceIsALine) {
  for (long n = 7; n <= 13; ++n)
    for (long t = 2; family_parameters_valid(n, t); ++t) {
      auto a = canonical_counterexample(family_matrix(n, t), 5);
      for (const auto& [label, s] : a.map()) EXPECT_EQ(s.dim(), 1u);
    }
}

TEST(Check, FanoCharacteristicSplit) {
  auto [nd, dv] = family_pair(7, 2);
  auto seed = family_matrix(7, 2);

  auto r2 = check_inequality(nd, canonical_counterexample(seed, 2));
  EXPECT_FALSE(r2.holds);
  EXPECT_EQ(r2.lhs_value, 1);
  EXPECT_EQ(r2.rhs_value, Rational(3, 4));
  EXPECT_EQ(r2.rhs_value, enumerated_value(nd.rhs, fano_witness(2), 2, 3));

  auto r3 = check_inequality(nd, canonical_counterexample(seed, 3));
  EXPECT_TRUE(r3.holds);
  EXPECT_EQ(r3.rhs_value, enumerated_value(nd.rhs, fano_witness(3), 3, 3));
  EXPECT_EQ(r3.rhs_value - r2.rhs_value, 1);

  // The dividing inequality flips the other way.
  EXPECT_TRUE(check_inequality(dv, canonical_counterexample(seed, 2)).holds);
  for (std::uint32_t p : {3u, 5u, 7u}) {
    auto r = check_inequality(dv, canonical_counterexample(seed, p));
    EXPECT_FALSE(r.holds) << p;
    EXPECT_EQ(r.rhs_value, enumerated_value(dv.rhs, fano_witness(p), p, 3));
  }
}

TEST(Check, ZeroAssignmentHasZeroSlack) {
  auto [nd, dv] = family_pair(9, 3);
  auto ing = ingleton_inequality();
  for (const auto* ineq : {&nd, &dv, &ing}) {
    Assignment z(PrimeField(7), 4);
    for (const auto& v : ineq->variables()) z.set(v, Subspace::zero(z.field(), 4));
    auto r = check_inequality(*ineq, z);
    EXPECT_TRUE(r.holds);
    EXPECT_EQ(r.slack, 0);
    EXPECT_EQ(r.lhs_value, 0);
  }
}

TEST(Check, CanonicalViolatesOverNonconformingPrimesOnGrid) {
  for (long n = 7; n <= 13; ++n)
    for (long t = 2; family_parameters_valid(n, t); ++t) {
      auto seed = family_matrix(n, t);
      auto [nd, dv] = family_pair(n, t);
      for (std::uint32_t p : primes_2357) {
        auto a = canonical_counterexample(seed, p);
        EXPECT_EQ(check_inequality(nd, a).holds, nd.conforms(p)) << n << "," << t << " p=" << p;
        EXPECT_EQ(check_inequality(dv, a).holds, dv.conforms(p)) << n << "," << t << " p=" << p;
      }
    }
}

TEST(Sample, DeterministicAndBounded) {
  std::map<L, std::size_t> dims = {{L::a(1), 2}, {L::a(2), 2}, {L::c(), 2}};
  auto x = sample_assignment(5, 4, dims, 99), y = sample_assignment(5, 4, dims, 99);
  EXPECT_EQ(x.digest(), y.digest());
  EXPECT_NE(x.digest(), sample_assignment(5, 4, dims, 100).digest());
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    auto a = sample_assignment(5, 4, dims, seed);
    for (const auto& [label, s] : a.map()) {
      EXPECT_LE(s.dim(), 2u);
      EXPECT_EQ(s.dim(), rank(s.basis()));
    }
  }
  auto zero = sample_assignment(3, 3, {{L::a(1), 0}}, 1);
  EXPECT_EQ(zero.at(L::a(1)).dim(), 0u);
  EXPECT_THROW(sample_assignment(3, 2, {{L::a(1), 3}}, 1), InvalidArgument);
}

TEST(Rng, BelowIsInRangeAndRoughlyUniform) {
  DeterministicRng g(5);
  std::vector<int> hist(7, 0);
  for (int i = 0; i < 70000; ++i) ++hist[g.below(7)];
  for (int h : hist) EXPECT_NEAR(h, 10000, 500);
  DeterministicRng a(11), b(11);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
}

// sum dim(A_i) - dim(cap A_i) <= sum_{i>1} dim(A_1 + A_i)
TEST(Property, DimensionSubadditivity) {
  gen::Rng rng(41);
  for (int trial = 0; trial < 3000; ++trial) {
    PrimeField f(trial % 2 ? 2 : 3);
    const auto n = gen::uniform(rng, 2, 5), ambient = gen::uniform(rng, 2, 6);
    std::vector<Subspace> a;
    for (std::size_t i = 0; i < n; ++i) a.push_back(gen::random_subspace(f, ambient, 3, rng));
    long lhs = 0, rhs = 0;
    for (const auto& s : a) lhs += static_cast<long>(s.dim());
    lhs -= static_cast<long>(subspace_intersect_all(a).dim());
    for (std::size_t i = 1; i < n; ++i) rhs += static_cast<long>(subspace_sum(a[0], a[i]).dim());
    EXPECT_LE(lhs, rhs);
  }
}

TEST(Property, IngletonOnRandomSubspaces) {
  auto ing = ingleton_inequality();
  for (std::uint32_t p : primes_2357)
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
      DeterministicRng g(seed * 31 + p);
      std::map<L, std::size_t> dims;
      for (std::size_t i = 1; i <= 4; ++i) dims[L::a(i)] = g.between(0, 3);
      EXPECT_TRUE(check_inequality(ing, sample_assignment(p, 4, dims, seed)).holds);
    }
}

TEST(Property, EvaluationIsLinear) {
  auto [nd, dv] = family_pair(9, 2);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    std::map<L, std::size_t> dims;
    for (const auto& v : set_union(nd.variables(), dv.variables())) dims[v] = seed % 3 + 1;
    auto a = sample_assignment(3, 5, dims, seed);
    std::vector<EntropyTerm> both = nd.terms;
    both.insert(both.end(), dv.terms.begin(), dv.terms.end());
    EXPECT_EQ(evaluate_expression(both, a), evaluate_expression(nd.terms, a) + evaluate_expression(dv.terms, a));
  }
}

TEST(Property, ClearedTermsAreScaledSlack) {
  auto [nd, dv] = family_pair(11, 3);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::map<L, std::size_t> dims;
    for (const auto& v : nd.variables()) dims[v] = 2;
    auto a = sample_assignment(5, 6, dims, seed);
    auto r = check_inequality(nd, a);
    EXPECT_EQ(evaluate_expression(nd.terms, a), r.slack * nd.scale);
  }
}

TEST(Campaign, FanoSeparation) {
  auto seed = family_matrix(7, 2);
  auto [nd, dv] = family_pair(7, 2);
  auto s = fuzz_campaign(nd, primes_2357, 300, 7, seed);
  EXPECT_FALSE(s.conforming_violation());
  EXPECT_TRUE(s.unexpected_canonical_holds().empty());
  ASSERT_EQ(s.per_prime.size(), 4u);
  const auto& p2 = s.per_prime[0];
  EXPECT_FALSE(p2.conforming);
  EXPECT_GE(p2.violations, 1u);
  ASSERT_TRUE(p2.first_violation);
  EXPECT_EQ(p2.first_violation->trial, 0u);
  EXPECT_EQ(p2.first_violation->kind, "canonical");
  EXPECT_EQ(p2.first_violation->lhs, 1);
  EXPECT_EQ(p2.first_violation->rhs, Rational(3, 4));
  for (std::size_t i = 1; i < 4; ++i) {
    EXPECT_TRUE(s.per_prime[i].conforming);
    EXPECT_EQ(s.per_prime[i].violations, 0u);
    EXPECT_EQ(s.per_prime[i].trials, 300u);
  }

  auto d = fuzz_campaign(dv, primes_2357, 300, 7, seed);
  EXPECT_FALSE(d.conforming_violation());
  EXPECT_EQ(d.per_prime[0].violations, 0u);
  for (std::size_t i = 1; i < 4; ++i) EXPECT_GE(d.per_prime[i].violations, 1u);
}

TEST(Campaign, IngletonNeverViolated) {
  auto s = fuzz_campaign(ingleton_inequality(), primes_2357, 500, 3);
  EXPECT_FALSE(s.conforming_violation());
  for (const auto& p : s.per_prime) {
    EXPECT_TRUE(p.conforming);
    EXPECT_EQ(p.violations, 0u);
    EXPECT_FALSE(p.canonical);
  }
}

TEST(Campaign, ThreadCountDoesNotChangeResults) {
  auto seed = family_matrix(9, 3);
  auto [nd, dv] = family_pair(9, 3);
  CampaignOptions one, four;
  four.threads = 4;
  auto a = fuzz_campaign(dv, primes_2357, 200, 12, seed, one);
  auto b = fuzz_campaign(dv, primes_2357, 200, 12, seed, four);
  for (std::size_t i = 0; i < a.per_prime.size(); ++i) {
    EXPECT_EQ(a.per_prime[i].violations, b.per_prime[i].violations);
    EXPECT_EQ(a.per_prime[i].min_slack, b.per_prime[i].min_slack);
    ASSERT_EQ(a.per_prime[i].first_violation.has_value(), b.per_prime[i].first_violation.has_value());
    if (a.per_prime[i].first_violation)
      EXPECT_EQ(a.per_prime[i].first_violation->assignment.digest(), b.per_prime[i].first_violation->assignment.digest());
  }
}

TEST(Campaign, ReproducesFirstViolation) {
  auto seed = family_matrix(9, 3);
  auto [nd, dv] = family_pair(9, 3);
  auto s = fuzz_campaign(nd, std::vector<std::uint32_t>{3}, 100, 5, seed);
  ASSERT_TRUE(s.per_prime[0].first_violation);
  const auto& v = *s.per_prime[0].first_violation;
  auto r = check_inequality(nd, v.assignment);
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.lhs_value, v.lhs);
  EXPECT_EQ(r.rhs_value, v.rhs);
}

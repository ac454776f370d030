#pragma once

// Exact evaluation of entropy forms on subspace assignments (H = dim of the
// sum) plus counterexample and randomized soundness campaigns.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rankineq/gf_linalg.hpp"
#include "rankineq/ineq_gen.hpp"
#include "rankineq/rational.hpp"
#include "rankineq/seed_matrix.hpp"

namespace rankineq {

class Assignment {
 public:
  Assignment(PrimeField field, std::size_t ambient_dim) : field_(field), ambient_dim_(ambient_dim) {}

  // Throws DimensionMismatch when the subspace lives elsewhere.
  void set(const VariableLabel& label, Subspace s);
  // Throws UnmappedVariable.
  const Subspace& at(const VariableLabel& label) const;
  bool has(const VariableLabel& label) const { return map_.count(label) != 0; }

  const PrimeField& field() const { return field_; }
  std::size_t ambient_dim() const { return ambient_dim_; }
  const std::map<VariableLabel, Subspace>& map() const { return map_; }

  // dim of the sum of the mapped subspaces; 0 for the empty set.
  std::size_t joint_dim(const VariableSet& vars) const;

  // FNV-1a over modulus, ambient dimension, labels and canonical bases.
  std::string digest() const;

 private:
  PrimeField field_;
  std::size_t ambient_dim_;
  std::map<VariableLabel, Subspace> map_;
};

Rational evaluate_expression(std::span<const EntropyTerm> terms, const Assignment& a);

// A_i = <e_i>, B_j = <e_{S_j}> for intermediate columns, C = <sum e_i> in GF(p)^n.
Assignment canonical_counterexample(const SeedMatrix& seed, std::uint32_t p);

struct CheckReport {
  bool holds = false;
  Rational lhs_value;
  Rational rhs_value;
  Rational slack;  // rhs - lhs
  std::string assignment_digest;
};

// Sides come from the retained two-sided form; an inequality given only by
// its cleared terms is reported as 0 <= sum(terms).
CheckReport check_inequality(const EntropyInequality& ineq, const Assignment& a);

// Splittable deterministic generator (splitmix64) with unbiased bounded draws;
// identical seeds give identical streams on every platform.
class DeterministicRng {
 public:
  explicit DeterministicRng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  // Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  // Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

  static std::uint64_t mix(std::uint64_t a, std::uint64_t b);

 private:
  std::uint64_t state_;
};

// Row space of a uniformly random dims[v] x ambient_dim matrix per variable.
// Throws InvalidArgument if some dims[v] exceeds ambient_dim.
Assignment sample_assignment(std::uint32_t p, std::size_t ambient_dim,
                             const std::map<VariableLabel, std::size_t>& dims, std::uint64_t rng_seed);

struct AmbientRange {
  std::size_t ambient_min = 3;
  std::size_t ambient_max = 8;
  std::size_t dim_min = 1;
  std::size_t dim_max = 3;
};

struct Violation {
  std::size_t trial = 0;
  std::string kind;  // "canonical", "uniform", "pooled", "canonical-image"
  Assignment assignment;
  Rational lhs;
  Rational rhs;
};

struct PrimeSummary {
  std::uint32_t p = 0;
  bool conforming = false;
  std::size_t trials = 0;
  std::size_t violations = 0;
  std::optional<Violation> first_violation;  // lowest trial index
  std::optional<Rational> min_slack;
  // Canonical witness outcome, when a seed was supplied.
  std::optional<CheckReport> canonical;
};

struct CampaignSummary {
  std::vector<PrimeSummary> per_prime;
  bool conforming_violation() const;
  // Nonconforming primes whose canonical witness was not violated.
  std::vector<std::uint32_t> unexpected_canonical_holds() const;
};

struct CampaignOptions {
  AmbientRange range;
  unsigned threads = 1;
};

// Trial 0 is the canonical counterexample of `seed` (when given); the rest mix
// uniform samples, samples drawn from a shared vector pool, and images of the
// canonical configuration under random linear maps. Each trial is seeded
// from (rng_seed, p, trial index), so results do not depend on threading.
CampaignSummary fuzz_campaign(const EntropyInequality& ineq, std::span<const std::uint32_t> primes,
                              std::size_t trials, std::uint64_t rng_seed,
                              const std::optional<SeedMatrix>& seed = std::nullopt,
                              const CampaignOptions& options = {});

}  // namespace rankineq

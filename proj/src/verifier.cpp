#include "rankineq/verifier.hpp"

#include <algorithm>
#include <cstdio>
#include <thread>

#include "rankineq/errors.hpp"

namespace rankineq {

void Assignment::set(const VariableLabel& label, Subspace s) {
  if (s.field() != field_ || s.ambient_dim() != ambient_dim_)
    throw DimensionMismatch("subspace for " + label.name() + " lives in a different space");
  map_.insert_or_assign(label, std::move(s));
}

const Subspace& Assignment::at(const VariableLabel& label) const {
  auto it = map_.find(label);
  if (it == map_.end()) throw UnmappedVariable("variable " + label.name() + " is not assigned");
  return it->second;
}

std::size_t Assignment::joint_dim(const VariableSet& vars) const {
  if (vars.empty()) return 0;
  if (vars.size() == 1) return at(vars.front()).dim();
  PrimeFieldMatrix stacked(field_, 0, ambient_dim_);
  for (const auto& v : vars) {
    const auto& b = at(v).basis();
    for (std::size_t r = 0; r < b.rows(); ++r) stacked.append_row(b.row(r));
  }
  return rank(stacked);
}

std::string Assignment::digest() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto feed = [&h](std::uint64_t value) {
    for (int i = 0; i < 8; ++i) {
      h ^= (value >> (8 * i)) & 0xff;
      h *= 0x100000001b3ull;
    }
  };
  feed(field_.modulus());
  feed(ambient_dim_);
  for (const auto& [label, s] : map_) {
    feed(static_cast<std::uint64_t>(label.kind));
    feed(label.index);
    feed(s.dim());
    for (auto e : s.basis().entries()) feed(e);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Rational evaluate_expression(std::span<const EntropyTerm> terms, const Assignment& a) {
  Rational total = 0;
  for (const auto& term : terms) total += term.coeff * static_cast<long>(a.joint_dim(term.vars));
  return total;
}

Assignment canonical_counterexample(const SeedMatrix& seed, std::uint32_t p) {
  PrimeField field(p);
  const std::size_t n = seed.size();
  Assignment a(field, n);
  std::vector<std::int64_t> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(v.begin(), v.end(), 0);
    v[i] = 1;
    a.set(VariableLabel::a(i + 1), Subspace::of_vector(field, v));
  }
  for (auto j : seed.class_prime()) {
    for (std::size_t i = 0; i < n; ++i) v[i] = seed.entries()[i][j];
    a.set(VariableLabel::b(j + 1), Subspace::of_vector(field, v));
  }
  std::fill(v.begin(), v.end(), 1);
  a.set(VariableLabel::c(), Subspace::of_vector(field, v));
  return a;
}

CheckReport check_inequality(const EntropyInequality& ineq, const Assignment& a) {
  CheckReport r;
  if (ineq.lhs.empty() && ineq.rhs.empty()) {
    r.lhs_value = 0;
    r.rhs_value = evaluate_expression(ineq.terms, a);
  } else {
    r.lhs_value = evaluate_expression(ineq.lhs, a);
    r.rhs_value = evaluate_expression(ineq.rhs, a);
  }
  r.slack = r.rhs_value - r.lhs_value;
  r.holds = r.slack >= 0;
  r.assignment_digest = a.digest();
  return r;
}

std::uint64_t DeterministicRng::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t DeterministicRng::below(std::uint64_t bound) {
  if (bound == 0) throw InvalidArgument("empty range");
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    auto r = next();
    if (r >= threshold) return r % bound;
  }
}

std::uint64_t DeterministicRng::mix(std::uint64_t a, std::uint64_t b) {
  DeterministicRng g(a ^ (b * 0xd1b54a32d192ed03ull + 0x8cb92ba72f3d8dd7ull));
  g.next();
  return g.next() ^ b;
}

namespace {

Subspace random_span(const PrimeField& field, std::size_t ambient, std::size_t rows, DeterministicRng& rng) {
  PrimeFieldMatrix m(field, rows, ambient);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < ambient; ++c) m.set(r, c, static_cast<std::int64_t>(rng.below(field.modulus())));
  return Subspace::span(m);
}

std::size_t draw_dim(const AmbientRange& range, std::size_t ambient, DeterministicRng& rng) {
  auto hi = std::min(range.dim_max, ambient);
  auto lo = std::min(range.dim_min, hi);
  return static_cast<std::size_t>(rng.between(lo, hi));
}

// Each variable spans a few vectors drawn from a small shared pool, which
// makes coincidences, containments and direct sums common.
Assignment pooled_assignment(const PrimeField& field, std::size_t ambient, const VariableSet& vars,
                             const AmbientRange& range, DeterministicRng& rng) {
  const std::size_t pool_size = ambient + 2;
  PrimeFieldMatrix pool(field, pool_size, ambient);
  for (std::size_t r = 0; r < pool_size; ++r)
    for (std::size_t c = 0; c < ambient; ++c) pool.set(r, c, static_cast<std::int64_t>(rng.below(field.modulus())));
  Assignment a(field, ambient);
  for (const auto& v : vars) {
    const auto k = draw_dim(range, ambient, rng);
    PrimeFieldMatrix gens(field, 0, ambient);
    for (std::size_t i = 0; i < k; ++i) gens.append_row(pool.row(rng.below(pool_size)));
    a.set(v, Subspace::span(gens));
  }
  return a;
}

// The canonical witness pushed through a random linear map into GF(p)^m,
// with roughly a quarter of the variables resampled.
Assignment canonical_image(const SeedMatrix& seed, const PrimeField& field, std::size_t ambient,
                           const VariableSet& vars, const AmbientRange& range, DeterministicRng& rng) {
  const auto base = canonical_counterexample(seed, field.modulus());
  const std::size_t n = seed.size();
  PrimeFieldMatrix map(field, n, ambient);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < ambient; ++c) map.set(r, c, static_cast<std::int64_t>(rng.below(field.modulus())));
  Assignment a(field, ambient);
  for (const auto& v : vars) {
    if (base.has(v) && rng.below(4) != 0) {
      a.set(v, Subspace::span(base.at(v).basis().multiply(map)));
    } else {
      a.set(v, random_span(field, ambient, draw_dim(range, ambient, rng), rng));
    }
  }
  return a;
}

struct TrialOutcome {
  std::string kind;
  std::optional<Assignment> assignment;
  CheckReport report;
};

TrialOutcome run_trial(const EntropyInequality& ineq, const VariableSet& vars, std::uint32_t p,
                       std::size_t index, std::uint64_t rng_seed, const std::optional<SeedMatrix>& seed,
                       const AmbientRange& range) {
  PrimeField field(p);
  DeterministicRng rng(DeterministicRng::mix(DeterministicRng::mix(rng_seed, p), index));
  TrialOutcome out;
  if (index == 0 && seed) {
    out.kind = "canonical";
    out.assignment = canonical_counterexample(*seed, p);
  } else {
    const auto ambient = static_cast<std::size_t>(rng.between(range.ambient_min, range.ambient_max));
    switch (index % 3) {
      case 1:
        out.kind = "pooled";
        out.assignment = pooled_assignment(field, ambient, vars, range, rng);
        break;
      case 2:
        if (seed) {
          out.kind = "canonical-image";
          out.assignment = canonical_image(*seed, field, ambient, vars, range, rng);
          break;
        }
        [[fallthrough]];
      default: {
        out.kind = "uniform";
        std::map<VariableLabel, std::size_t> dims;
        for (const auto& v : vars) dims[v] = draw_dim(range, ambient, rng);
        out.assignment = sample_assignment(p, ambient, dims, rng.next());
      }
    }
  }
  out.report = check_inequality(ineq, *out.assignment);
  if (out.report.holds) out.assignment.reset();
  return out;
}

}  // namespace

Assignment sample_assignment(std::uint32_t p, std::size_t ambient_dim,
                             const std::map<VariableLabel, std::size_t>& dims, std::uint64_t rng_seed) {
  PrimeField field(p);
  DeterministicRng rng(rng_seed);
  Assignment a(field, ambient_dim);
  for (const auto& [label, d] : dims) {
    if (d > ambient_dim) throw InvalidArgument("target dimension exceeds the ambient dimension for " + label.name());
    a.set(label, random_span(field, ambient_dim, d, rng));
  }
  return a;
}

bool CampaignSummary::conforming_violation() const {
  return std::any_of(per_prime.begin(), per_prime.end(),
                     [](const PrimeSummary& s) { return s.conforming && s.violations > 0; });
}

std::vector<std::uint32_t> CampaignSummary::unexpected_canonical_holds() const {
  std::vector<std::uint32_t> out;
  for (const auto& s : per_prime)
    if (!s.conforming && s.canonical && s.canonical->holds) out.push_back(s.p);
  return out;
}

CampaignSummary fuzz_campaign(const EntropyInequality& ineq, std::span<const std::uint32_t> primes,
                              std::size_t trials, std::uint64_t rng_seed,
                              const std::optional<SeedMatrix>& seed, const CampaignOptions& options) {
  const auto& range = options.range;
  if (range.ambient_min == 0 || range.ambient_min > range.ambient_max || range.dim_min > range.dim_max)
    throw InvalidArgument("invalid ambient or dimension range");
  const auto vars = ineq.variables();
  CampaignSummary summary;
  for (auto p : primes) {
    PrimeField field(p);  // validates p
    std::vector<TrialOutcome> outcomes(trials);
    const unsigned workers = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(trials)));
    auto work = [&](unsigned w) {
      for (std::size_t i = w; i < trials; i += workers)
        outcomes[i] = run_trial(ineq, vars, p, i, rng_seed, seed, range);
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
      for (auto& th : pool) th.join();
    }

    PrimeSummary s;
    s.p = p;
    s.conforming = ineq.conforms(p);
    s.trials = trials;
    for (std::size_t i = 0; i < trials; ++i) {
      auto& o = outcomes[i];
      if (!s.min_slack || o.report.slack < *s.min_slack) s.min_slack = o.report.slack;
      if (i == 0 && seed) s.canonical = o.report;
      if (o.report.holds) continue;
      ++s.violations;
      if (!s.first_violation)
        s.first_violation = Violation{i, o.kind, std::move(*o.assignment), o.report.lhs_value, o.report.rhs_value};
    }
    summary.per_prime.push_back(std::move(s));
  }
  return summary;
}

}  // namespace rankineq

#include "rankineq/cli.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "rankineq/access_structure.hpp"
#include "rankineq/errors.hpp"
#include "rankineq/ineq_gen.hpp"
#include "rankineq/json_io.hpp"
#include "rankineq/lp_bounds.hpp"
#include "rankineq/seed_matrix.hpp"
#include "rankineq/verifier.hpp"

namespace rankineq {

namespace {

class FileNotFound : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  if (!std::filesystem::exists(path)) throw FileNotFound("file not found: " + path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFound("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<SeedMatrix> load_seed(const RunConfig& cfg) {
  if (cfg.family) return family_matrix(cfg.family->first, cfg.family->second);
  if (cfg.input) {
    std::istringstream in(read_file(*cfg.input));
    return classify_columns(read_binary_matrix_text(in));
  }
  return std::nullopt;
}

LinearScheme load_scheme(const RunConfig& cfg) {
  if (cfg.figure2) {
    if (cfg.figure2->second <= 0) throw UsageError("--figure2 needs a positive prime q");
    return figure2_representation(cfg.figure2->first, static_cast<std::uint32_t>(cfg.figure2->second));
  }
  if (cfg.input) {
    std::istringstream in(read_file(*cfg.input));
    return read_scheme_text(in, cfg.dealer);
  }
  throw UsageError("need --input SCHEME or --figure2 T Q");
}

AccessStructure load_structure(const RunConfig& cfg) {
  if (cfg.structure) return access_structure_from_json(parse_json(read_file(*cfg.structure)));
  return matroid_port(load_scheme(cfg));
}

// "seed=011/101/110" inside a provenance string, if present and valid.
std::optional<SeedMatrix> seed_from_provenance(const std::string& provenance) {
  auto pos = provenance.find("seed=");
  if (pos == std::string::npos) return std::nullopt;
  auto sig = provenance.substr(pos + 5);
  sig = sig.substr(0, sig.find(' '));
  IntMatrix m(1);
  for (char ch : sig) {
    if (ch == '/') {
      m.emplace_back();
    } else if (ch == '0' || ch == '1') {
      m.back().push_back(ch - '0');
    } else {
      return std::nullopt;
    }
  }
  try {
    return classify_columns(m);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::vector<EntropyInequality> select(std::vector<EntropyInequality> all, const std::string& which) {
  if (which == "all") return all;
  if (!which.empty() && std::all_of(which.begin(), which.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    auto idx = std::stoul(which);
    if (idx == 0 || idx > all.size()) throw UsageError("--which index out of range");
    return {all[idx - 1]};
  }
  auto cond = parse_char_condition(which);
  std::vector<EntropyInequality> out;
  for (auto& e : all)
    if (e.char_condition == cond) out.push_back(std::move(e));
  if (out.empty()) throw UsageError("no inequality matches --which " + which);
  return out;
}

EntropyInequality builtin_by_name(const std::string& name) {
  if (name == "ingleton") return ingleton_inequality();
  if (name == "char-not-2") return char_not_two_inequality();
  throw UsageError("unknown builtin '" + name + "' (expected ingleton or char-not-2)");
}

struct Source {
  EntropyInequality ineq;
  std::optional<SeedMatrix> seed;
};

std::vector<Source> load_inequalities(const RunConfig& cfg, bool allow_seed) {
  std::vector<Source> out;
  if (cfg.ineq) {
    for (auto& e : select(inequalities_from_json(parse_json(read_file(*cfg.ineq))), cfg.which)) {
      auto seed = seed_from_provenance(e.provenance);
      out.push_back({std::move(e), std::move(seed)});
    }
  }
  for (const auto& b : cfg.builtins) out.push_back({builtin_by_name(b), std::nullopt});
  if (allow_seed && out.empty()) {
    if (auto seed = load_seed(cfg)) {
      std::size_t k = seed->class_prime().front();
      if (cfg.k) k = static_cast<std::size_t>(*cfg.k - 1);
      for (auto& e : select({generate_nondividing(*seed), generate_dividing(*seed, k)}, cfg.which))
        out.push_back({std::move(e), seed});
    }
  }
  return out;
}

void emit(const RunConfig& cfg, const Json& j, const std::string& table, std::ostream& out) {
  if (cfg.output) {
    std::ofstream f(*cfg.output, std::ios::binary);
    if (!f) throw FileNotFound("cannot write " + *cfg.output);
    f << dump_json(j);
  }
  if (cfg.format == "json") {
    if (!cfg.output) out << dump_json(j);
  } else {
    out << table;
  }
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : sep) + s;
  return out;
}

std::string one_based(const std::vector<std::size_t>& v) {
  std::vector<std::string> s;
  for (auto i : v) s.push_back(std::to_string(i + 1));
  return "{" + join(s, ",") + "}";
}

int cmd_seed(const RunConfig& cfg, std::ostream& out) {
  auto seed = load_seed(cfg);
  if (!seed) throw UsageError("seed needs --input MATRIX or --family N T");
  std::ostringstream t;
  for (const auto& row : seed->entries()) {
    for (auto v : row) t << v << ' ';
    t << '\n';
  }
  t << "|det|            " << seed->det_abs().get_str() << '\n';
  t << "intermediate     " << one_based(seed->class_prime()) << '\n';
  t << "single           " << one_based(seed->class_single()) << '\n';
  for (std::size_t i = 0; i < seed->size(); ++i)
    t << "row " << std::setw(2) << i + 1 << " witnesses " << one_based(seed->row_witness()[i]) << '\n';
  t << "witness total    " << seed->witness_total() << '\n';
  emit(cfg, seed_to_json(*seed), t.str(), out);
  return exit_code::ok;
}

int cmd_gen(const RunConfig& cfg, std::ostream& out) {
  auto seed = load_seed(cfg);
  if (!seed) throw UsageError("gen needs --input MATRIX or --family N T");
  std::size_t k = seed->class_prime().front();
  if (cfg.k) k = static_cast<std::size_t>(*cfg.k - 1);
  auto a = generate_nondividing(*seed);
  auto b = generate_dividing(*seed, k);
  std::ostringstream t;
  for (const auto* e : {&a, &b}) {
    t << e->provenance << "  [char " << to_string(e->char_condition) << " " << e->t << "]\n";
    t << "  " << render(*e) << "\n\n";
  }
  emit(cfg, pair_to_json(*seed, a, b), t.str(), out);
  return exit_code::ok;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.rng_seed) throw UsageError("verify requires --rng-seed for reproducibility");
  auto sources = load_inequalities(cfg, true);
  if (sources.empty()) throw UsageError("verify needs --family, --input, --ineq or --builtin");
  Json runs = Json::array();
  std::ostringstream t;
  bool violation = false;
  CampaignOptions opts;
  opts.threads = cfg.threads;
  for (const auto& src : sources) {
    auto summary = fuzz_campaign(src.ineq, cfg.primes, cfg.trials, *cfg.rng_seed, src.seed, opts);
    violation |= summary.conforming_violation();
    auto j = campaign_to_json(src.ineq, summary);
    Json unexpected = Json::array();
    for (auto p : summary.unexpected_canonical_holds()) {
      unexpected.push_back(p);
      err << "warning: canonical counterexample satisfies " << src.ineq.provenance << " at p=" << p << '\n';
    }
    j["canonical_not_violated"] = unexpected;
    runs.push_back(std::move(j));

    t << src.ineq.provenance << "  [char " << to_string(src.ineq.char_condition) << " " << src.ineq.t << "]\n";
    t << "  " << std::left << std::setw(7) << "p" << std::setw(12) << "conforming" << std::setw(8) << "trials"
      << std::setw(12) << "violations" << std::setw(26) << "min slack" << "canonical lhs vs rhs\n";
    for (const auto& p : summary.per_prime) {
      t << "  " << std::setw(7) << p.p << std::setw(12) << (p.conforming ? "yes" : "no") << std::setw(8) << p.trials
        << std::setw(12) << p.violations << std::setw(26) << (p.min_slack ? to_display_string(*p.min_slack) : "-");
      if (p.canonical)
        t << to_fraction_string(p.canonical->lhs_value) << " vs " << to_fraction_string(p.canonical->rhs_value)
          << (p.canonical->holds ? " (holds)" : " (violated)");
      t << '\n';
      if (p.conforming && p.first_violation)
        t << "  !! conforming violation at trial " << p.first_violation->trial << " (" << p.first_violation->kind
          << "), digest " << p.first_violation->assignment.digest() << '\n';
    }
    t << std::right << '\n';
  }
  t << "(~ marks rounded decimal approximations)\n";
  emit(cfg, Json{{"campaigns", runs}, {"rng_seed", *cfg.rng_seed}, {"trials", cfg.trials}}, t.str(), out);
  return violation ? exit_code::failure : exit_code::ok;
}

int cmd_port(const RunConfig& cfg, std::ostream& out) {
  auto s = matroid_port(load_scheme(cfg));
  std::ostringstream t;
  t << "participants " << join(s.participants(), " ") << ", dealer " << s.dealer() << '\n';
  t << "minimal qualified sets (" << s.minimal_qualified().size() << "):\n";
  for (auto m : s.minimal_qualified()) t << "  {" << join(s.labels_of(m), ",") << "}\n";
  emit(cfg, access_structure_to_json(s), t.str(), out);
  return exit_code::ok;
}

int cmd_scheme(const RunConfig& cfg, std::ostream& out) {
  auto scheme = load_scheme(cfg);
  auto rep = simulate_scheme_exhaustive(scheme);
  auto rf = scheme_rank_function(scheme);
  auto j = scheme_report_to_json(scheme, rep);
  j["rank_monotone"] = rf.monotone;
  j["rank_submodular"] = rf.submodular;
  const bool ok = rep.ok() && rf.monotone && rf.submodular;
  std::ostringstream t;
  t << "deals enumerated     " << rep.deals << '\n'
    << "subsets checked      " << rep.subsets_checked << '\n'
    << "correctness          " << (rep.correctness ? "pass" : "FAIL") << '\n'
    << "uniform privacy      " << (rep.privacy ? "pass" : "FAIL") << '\n'
    << "agrees with rank     " << (rep.matches_rank_port ? "pass" : "FAIL") << '\n'
    << "entropy equals rank  " << (rep.entropy_matches_rank ? "pass" : "FAIL") << '\n'
    << "rank monotone        " << (rf.monotone ? "pass" : "FAIL") << '\n'
    << "rank submodular      " << (rf.submodular ? "pass" : "FAIL") << '\n'
    << "information ratio    " << to_display_string(rep.information_ratio) << '\n';
  emit(cfg, j, t.str(), out);
  return ok ? exit_code::ok : exit_code::failure;
}

int cmd_bound(const RunConfig& cfg, std::ostream& out) {
  auto s = load_structure(cfg);
  auto ground = lp_ground(s);
  std::vector<ExtraInequality> extras;
  for (const auto& src : load_inequalities(cfg, false)) {
    if (cfg.map == "natural") {
      extras.push_back({src.ineq, natural_role_map(src.ineq, s)});
    } else if (cfg.map == "all") {
      for (auto& m : injective_role_maps(src.ineq, ground)) extras.push_back({src.ineq, std::move(m)});
    } else {
      extras.push_back({src.ineq, role_map_from_json(parse_json(read_file(cfg.map)))});
    }
  }
  auto problem = build_kappa_problem(s, extras);
  auto rep = solve_exact_lp(problem);
  std::ostringstream t;
  t << "kind            " << rep.kind << '\n'
    << "char condition  " << rep.char_condition << '\n'
    << "status          " << to_string(rep.status) << '\n';
  if (rep.status == LpStatus::optimal) t << "optimum         " << to_display_string(rep.optimum) << '\n';
  t << "LP size         " << problem.variable_count() << " variables, " << problem.constraints.size()
    << " constraints (" << rep.reduced_rows << " x " << rep.reduced_columns << " after presolve)\n"
    << "pivots          " << rep.pivots << '\n'
    << "re-substitution " << (rep.resubstitution_passed ? "pass" : "n/a") << '\n';
  if (!rep.binding.empty()) {
    t << "binding constraints (dual multiplier):\n";
    for (const auto& b : rep.binding) t << "  " << to_fraction_string(b.multiplier) << "  " << b.provenance << '\n';
  }
  t << "(~ marks rounded decimal approximations)\n";
  emit(cfg, lp_report_to_json(rep, ground, cfg.primal), t.str(), out);
  return rep.status == LpStatus::optimal ? exit_code::ok : exit_code::failure;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.format != "table" && cfg.format != "json") throw UsageError("--format must be table or json");
    if (cfg.input && cfg.family) throw UsageError("give exactly one input source");
    if (cfg.subcommand == "seed") return cmd_seed(cfg, out);
    if (cfg.subcommand == "gen") return cmd_gen(cfg, out);
    if (cfg.subcommand == "verify") return cmd_verify(cfg, out, err);
    if (cfg.subcommand == "port") return cmd_port(cfg, out);
    if (cfg.subcommand == "scheme") return cmd_scheme(cfg, out);
    if (cfg.subcommand == "bound") return cmd_bound(cfg, out);
    throw UsageError("unknown subcommand '" + cfg.subcommand + "'");
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_code::usage;
  } catch (const FileNotFound& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::file_not_found;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return exit_code::parse_error;
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << '\n';
    return exit_code::cap_exceeded;
  } catch (const SeedValidationError& e) {
    err << "invalid seed: " << e.what() << '\n';
    return exit_code::failure;
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_code::usage;
  } catch (const UnknownParticipant& e) {
    err << "parse error: " << e.what() << '\n';
    return exit_code::parse_error;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::failure;
  }
}

}  // namespace rankineq

#include <iostream>

#include "CLI11.hpp"
#include "rankineq/cli.hpp"

namespace {

void add_common(CLI::App* sub, rankineq::RunConfig& cfg) {
  sub->add_option("--format", cfg.format, "table or json")->check(CLI::IsMember({"table", "json"}));
  sub->add_option("--output", cfg.output, "write the JSON report to this file");
}

}  // namespace

int main(int argc, char** argv) {
  rankineq::RunConfig cfg;
  CLI::App app{"Characteristic-dependent linear rank inequalities and secret-sharing bounds"};
  app.require_subcommand(1);

  std::pair<long, long> family, figure2;

  auto* seed = app.add_subcommand("seed", "validate and classify a seed matrix");
  auto* gen = app.add_subcommand("gen", "emit both inequalities of a seed");
  auto* verify = app.add_subcommand("verify", "counterexample and fuzz campaign");
  auto* port = app.add_subcommand("port", "matroid port of a representation");
  auto* scheme = app.add_subcommand("scheme", "exhaustive ideal-scheme simulation");
  auto* bound = app.add_subcommand("bound", "exact kappa LP");

  for (auto* sub : {seed, gen, verify}) {
    sub->add_option("--family", family, "family parameters N T");
    sub->add_option("--input", cfg.input, "0/1 seed matrix text file");
  }
  for (auto* sub : {gen, verify}) sub->add_option("--k", cfg.k, "dividing column (1-based, intermediate)");
  for (auto* sub : {port, scheme, bound}) {
    sub->add_option("--figure2", figure2, "representation parameters T Q");
    sub->add_option("--input", cfg.input, "scheme file: column names line, then matrix text");
    sub->add_option("--dealer", cfg.dealer, "dealer column name in the scheme file");
  }
  for (auto* sub : {verify, bound}) {
    sub->add_option("--ineq", cfg.ineq, "inequality JSON file");
    sub->add_option("--which", cfg.which, "all, not_divides, divides or a 1-based index");
    sub->add_option("--builtin", cfg.builtins, "ingleton or char-not-2")->take_all();
  }
  verify->add_option("--primes", cfg.primes, "comma-separated primes")->delimiter(',');
  verify->add_option("--trials", cfg.trials, "trials per prime");
  verify->add_option("--rng-seed", cfg.rng_seed, "campaign seed (required)");
  verify->add_option("--threads", cfg.threads, "worker threads");
  bound->add_option("--structure", cfg.structure, "access structure JSON file");
  bound->add_option("--map", cfg.map, "natural, all, or a role-map JSON file");
  bound->add_flag("--primal", cfg.primal, "include the full primal in the JSON report");
  for (auto* sub : {seed, gen, verify, port, scheme, bound}) add_common(sub, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : rankineq::exit_code::usage;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  auto* active = app.get_subcommands().front();
  if (active->get_option_no_throw("--family") && active->count("--family")) cfg.family = family;
  if (active->get_option_no_throw("--figure2") && active->count("--figure2")) cfg.figure2 = figure2;
  return rankineq::run(cfg, std::cout, std::cerr);
}

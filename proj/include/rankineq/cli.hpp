#pragma once

// Command-line front end. run() holds the whole behaviour so tests can drive
// it without a process; tools/rankineq_cli.cpp only parses flags.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rankineq {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;  // validation failure or conforming-prime violation
inline constexpr int usage = 2;
inline constexpr int file_not_found = 3;
inline constexpr int parse_error = 4;
inline constexpr int cap_exceeded = 5;
}  // namespace exit_code

struct RunConfig {
  std::string subcommand;  // seed | gen | verify | port | scheme | bound
  std::optional<std::string> input;      // seed matrix or scheme text
  std::optional<std::string> structure;  // access structure JSON
  std::optional<std::string> ineq;       // inequality JSON
  std::vector<std::string> builtins;     // "ingleton", "char-not-2"
  std::optional<std::pair<long, long>> family;
  std::optional<std::pair<long, long>> figure2;  // (t, q)
  std::optional<long> k;                         // 1-based dividing column
  std::string which = "all";                     // all | not_divides | divides | 1-based index
  std::string map = "natural";                   // natural | all | role-map JSON path
  std::optional<std::string> dealer;
  std::vector<std::uint32_t> primes = {2, 3, 5, 7};
  std::size_t trials = 1000;
  std::optional<std::uint64_t> rng_seed;
  unsigned threads = 1;
  std::string format = "table";  // table | json
  std::optional<std::string> output;
  bool primal = false;
};

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace rankineq

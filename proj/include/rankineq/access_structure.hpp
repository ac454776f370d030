#pragma once

// Access structures on small participant sets, ports of GF(q)-represented
// matroids, and exhaustive simulation of the induced ideal linear schemes.
//
// Subsets of participants are bitmasks: bit i is participants()[i].

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rankineq/gf_linalg.hpp"
#include "rankineq/rational.hpp"

namespace rankineq {

using SubsetMask = std::uint32_t;

inline constexpr std::size_t max_port_participants = 20;

class AccessStructure {
 public:
  // Throws InvalidArgument on duplicate labels, a dealer among the
  // participants, more than max_port_participants, or a non-antichain.
  AccessStructure(std::vector<std::string> participants, std::string dealer,
                  std::vector<SubsetMask> minimal_qualified);

  // Throws UnknownParticipant for labels outside P.
  static AccessStructure from_labels(std::vector<std::string> participants, std::string dealer,
                                     const std::vector<std::vector<std::string>>& minimal_qualified);

  const std::vector<std::string>& participants() const { return participants_; }
  const std::string& dealer() const { return dealer_; }
  // Sorted by cardinality, then by mask value.
  const std::vector<SubsetMask>& minimal_qualified() const { return minimal_; }

  std::size_t index_of(std::string_view label) const;  // throws UnknownParticipant
  SubsetMask mask_of(const std::vector<std::string>& labels) const;
  std::vector<std::string> labels_of(SubsetMask mask) const;

  bool is_qualified(SubsetMask x) const;
  bool is_qualified(const std::vector<std::string>& labels) const;

  bool operator==(const AccessStructure&) const = default;

 private:
  std::vector<std::string> participants_;
  std::string dealer_;
  std::vector<SubsetMask> minimal_;
};

inline bool is_subset(SubsetMask small, SubsetMask big) { return (small & ~big) == 0; }

// Ideal linear scheme over GF(q): one column of GF(q)^m per participant plus
// the dealer column, which is stored last.
class LinearScheme {
 public:
  // columns is m x (|P|+1), dealer last. Throws InvalidArgument on a zero
  // dealer column or a label count mismatch.
  LinearScheme(std::vector<std::string> participants, std::string dealer, PrimeFieldMatrix columns);

  const PrimeField& field() const { return columns_.field(); }
  const std::vector<std::string>& participants() const { return participants_; }
  const std::string& dealer() const { return dealer_; }
  const PrimeFieldMatrix& columns() const { return columns_; }
  std::size_t share_space_dim() const { return columns_.rows(); }

  // Column of participant i (0-based); i == participants().size() is the dealer.
  std::vector<FieldElement> column(std::size_t i) const;

 private:
  std::vector<std::string> participants_;
  std::string dealer_;
  PrimeFieldMatrix columns_;
};

// First non-comment line names the columns; the rest is the matrix text
// format ("p rows cols" header, then rows). The dealer column defaults to the
// last one. Throws ParseError, UnknownParticipant.
LinearScheme read_scheme_text(std::istream& in, const std::optional<std::string>& dealer = std::nullopt);
void write_scheme_text(std::ostream& out, const LinearScheme& s);

// Rank of the participant columns in `mask`.
std::size_t columns_rank(const LinearScheme& s, SubsetMask mask, bool with_dealer);

// X qualified iff the dealer column lies in the span of X's columns.
// Throws CapExceeded above max_port_participants.
AccessStructure matroid_port(const LinearScheme& s);

// a_i = e_i, b_i = c - e_i, c = sum e_i in GF(q)^{t+1}; participants
// a1..a{t+1}, b1..b{t+1}, dealer c. Throws InvalidArgument for t < 2.
LinearScheme figure2_representation(long t, std::uint32_t q);

struct SchemeSimulationReport {
  std::size_t deals = 0;            // q^m
  std::size_t subsets_checked = 0;  // 2^|P|
  bool correctness = true;          // qualified sets determine the secret
  bool privacy = true;              // unqualified sets see a uniform secret
  bool matches_rank_port = true;    // tabulation verdicts equal the rank criterion
  bool entropy_matches_rank = true; // log_q #(share tuples) == rank for every X
  Rational information_ratio;       // max share entropy / secret entropy
  std::optional<SubsetMask> first_failure;
  bool ok() const { return correctness && privacy && matches_rank_port && entropy_matches_rank; }
};

inline constexpr std::uint64_t max_simulation_deals = 1u << 20;
inline constexpr std::uint64_t max_simulation_work = 1ull << 28;

// Enumerates every randomness vector r in GF(q)^m; share of x is <col_x, r>.
// Throws CapExceeded when q^m > max_simulation_deals or the subset-by-deal
// work exceeds max_simulation_work.
SchemeSimulationReport simulate_scheme_exhaustive(const LinearScheme& s);

// f(X) for X over P plus the dealer (bit |P|).
struct RankFunction {
  std::size_t ground_size = 0;
  std::vector<std::size_t> values;
  bool monotone = false;
  bool submodular = false;

  std::size_t operator()(SubsetMask x) const { return values[x]; }
  // Participants X with f(X + dealer) == f(X), as minimal sets.
  AccessStructure port(const std::vector<std::string>& participants, const std::string& dealer) const;
};

RankFunction scheme_rank_function(const LinearScheme& s);

}  // namespace rankineq

#pragma once

// Joint-entropy linear forms and the seed-driven rank inequality generator.
//
// Every inequality is stored as  sum(terms) >= 0  over joint entropies
// H(X) of variable sets X. Generated inequalities keep both the cleared form
// (integer coefficients) and the rational two-sided form it came from:
//   terms == scale * (rhs - lhs).

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rankineq/rational.hpp"
#include "rankineq/seed_matrix.hpp"

namespace rankineq {

// A-row i (A1..An), B-column j (indexed by the seed column, 1-based), or the dealer C.
struct VariableLabel {
  enum class Kind : unsigned char { a_row, b_column, dealer };
  Kind kind = Kind::dealer;
  std::size_t index = 0;  // 1-based for A and B, 0 for C

  static VariableLabel a(std::size_t one_based) { return {Kind::a_row, one_based}; }
  static VariableLabel b(std::size_t one_based) { return {Kind::b_column, one_based}; }
  static VariableLabel c() { return {Kind::dealer, 0}; }

  // "A3", "B2", "C"
  std::string name() const;
  // Throws ParseError.
  static VariableLabel parse(std::string_view text);

  auto operator<=>(const VariableLabel&) const = default;
};

// Sorted, deduplicated, nonempty.
using VariableSet = std::vector<VariableLabel>;

VariableSet make_set(std::vector<VariableLabel> labels);
VariableSet set_union(const VariableSet& x, const VariableSet& y);

struct EntropyTerm {
  Rational coeff;
  VariableSet vars;
  bool operator==(const EntropyTerm&) const = default;
};

// Orders variable sets by size, then lexicographically.
bool variable_set_less(const VariableSet& x, const VariableSet& y);

// Merges like terms, drops zero coefficients and sorts by variable set.
std::vector<EntropyTerm> canonicalize(std::vector<EntropyTerm> terms);

// Weighted sum of entropies, conditional entropies and (conditional) mutual
// informations over variable lists.
class InfoExpression {
 public:
  enum class Kind { entropy, conditional_entropy, mutual_information, conditional_mutual_information };
  struct Item {
    Rational coeff;
    Kind kind;
    VariableSet x, y, z;  // H(x), H(x|y), I(x;y), I(x;y|z)
  };

  InfoExpression& entropy(const Rational& c, VariableSet x);
  InfoExpression& conditional(const Rational& c, VariableSet x, VariableSet given);
  InfoExpression& mutual(const Rational& c, VariableSet x, VariableSet y);
  InfoExpression& mutual(const Rational& c, VariableSet x, VariableSet y, VariableSet given);

  const std::vector<Item>& items() const { return items_; }

 private:
  std::vector<Item> items_;
};

// H(X|Y) -> H(XY) - H(Y);  I(X;Y) -> H(X) + H(Y) - H(XY);
// I(X;Y|Z) -> H(XZ) + H(YZ) - H(XYZ) - H(Z). Throws InvalidArgument on
// an empty variable list. Result is canonical.
std::vector<EntropyTerm> expand_to_joint_entropies(const InfoExpression& expr);

enum class CharCondition { divides, not_divides, all };

std::string to_string(CharCondition c);
CharCondition parse_char_condition(std::string_view text);

struct EntropyInequality {
  std::vector<EntropyTerm> terms;
  CharCondition char_condition = CharCondition::all;
  long t = 0;
  std::string provenance;

  Rational scale = 1;
  std::vector<EntropyTerm> lhs;
  std::vector<EntropyTerm> rhs;

  // True when the inequality is claimed over fields of characteristic p.
  bool conforms(std::uint32_t p) const;
  VariableSet variables() const;

  bool operator==(const EntropyInequality&) const = default;
};

// Builds an inequality  lhs <= rhs  (both canonicalized). `scale` must make
// every coefficient of scale * (rhs - lhs) an integer.
EntropyInequality make_inequality(std::vector<EntropyTerm> lhs, std::vector<EntropyTerm> rhs,
                                  const Rational& scale, CharCondition cond, long t,
                                  std::string provenance);

// Compact row-string form of a seed, e.g. "011/101/110".
std::string seed_signature(const SeedMatrix& seed);

// Valid over fields whose characteristic does not divide t = |det|.
EntropyInequality generate_nondividing(const SeedMatrix& seed);

// Valid over fields whose characteristic divides t; k (0-based) must be an
// intermediate column. Throws InvalidArgument otherwise.
EntropyInequality generate_dividing(const SeedMatrix& seed, std::size_t k);

// Both inequalities for family_matrix(n, t), dividing one with k = first
// intermediate column.
std::pair<EntropyInequality, EntropyInequality> family_pair(long n, long t);

EntropyInequality ingleton_inequality();
// The seven-variable inequality valid in every characteristic except 2.
EntropyInequality char_not_two_inequality();
std::vector<EntropyInequality> builtin_inequalities();

// Human-readable two-sided rendering.
std::string render(const EntropyInequality& ineq);

}  // namespace rankineq

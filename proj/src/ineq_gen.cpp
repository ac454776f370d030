#include "rankineq/ineq_gen.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "rankineq/errors.hpp"

namespace rankineq {

std::string VariableLabel::name() const {
  switch (kind) {
    case Kind::a_row: return "A" + std::to_string(index);
    case Kind::b_column: return "B" + std::to_string(index);
    case Kind::dealer: return "C";
  }
  return "?";
}

VariableLabel VariableLabel::parse(std::string_view text) {
  if (text == "C") return c();
  if (text.size() >= 2 && (text[0] == 'A' || text[0] == 'B')) {
    std::size_t value = 0;
    for (char ch : text.substr(1)) {
      if (!std::isdigit(static_cast<unsigned char>(ch))) throw ParseError("bad variable label '" + std::string(text) + "'");
      value = value * 10 + static_cast<std::size_t>(ch - '0');
    }
    if (value == 0 || text[1] == '0') throw ParseError("variable index must be positive in '" + std::string(text) + "'");
    return text[0] == 'A' ? a(value) : b(value);
  }
  throw ParseError("bad variable label '" + std::string(text) + "'");
}

VariableSet make_set(std::vector<VariableLabel> labels) {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return labels;
}

VariableSet set_union(const VariableSet& x, const VariableSet& y) {
  VariableSet out;
  std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

bool variable_set_less(const VariableSet& x, const VariableSet& y) {
  if (x.size() != y.size()) return x.size() < y.size();
  return x < y;
}

std::vector<EntropyTerm> canonicalize(std::vector<EntropyTerm> terms) {
  auto less = [](const VariableSet& x, const VariableSet& y) { return variable_set_less(x, y); };
  std::map<VariableSet, Rational, decltype(less)> merged(less);
  for (auto& term : terms) {
    if (term.vars.empty()) throw InvalidArgument("entropy term with an empty variable set");
    merged[make_set(std::move(term.vars))] += term.coeff;
  }
  std::vector<EntropyTerm> out;
  for (auto& [vars, coeff] : merged)
    if (coeff != 0) out.push_back({coeff, vars});
  return out;
}

// ---------------------------------------------------------------------------
// Shorthand expansion

namespace {

VariableSet require_nonempty(VariableSet v, const char* what) {
  if (v.empty()) throw InvalidArgument(std::string("empty variable list in ") + what);
  return make_set(std::move(v));
}

}  // namespace

InfoExpression& InfoExpression::entropy(const Rational& c, VariableSet x) {
  items_.push_back({c, Kind::entropy, require_nonempty(std::move(x), "H(.)"), {}, {}});
  return *this;
}

InfoExpression& InfoExpression::conditional(const Rational& c, VariableSet x, VariableSet given) {
  items_.push_back({c, Kind::conditional_entropy, require_nonempty(std::move(x), "H(.|.)"),
                    require_nonempty(std::move(given), "H(.|.)"), {}});
  return *this;
}

InfoExpression& InfoExpression::mutual(const Rational& c, VariableSet x, VariableSet y) {
  items_.push_back({c, Kind::mutual_information, require_nonempty(std::move(x), "I(.;.)"),
                    require_nonempty(std::move(y), "I(.;.)"), {}});
  return *this;
}

InfoExpression& InfoExpression::mutual(const Rational& c, VariableSet x, VariableSet y, VariableSet given) {
  items_.push_back({c, Kind::conditional_mutual_information, require_nonempty(std::move(x), "I(.;.|.)"),
                    require_nonempty(std::move(y), "I(.;.|.)"), require_nonempty(std::move(given), "I(.;.|.)")});
  return *this;
}

std::vector<EntropyTerm> expand_to_joint_entropies(const InfoExpression& expr) {
  std::vector<EntropyTerm> out;
  for (const auto& it : expr.items()) {
    const Rational& c = it.coeff;
    switch (it.kind) {
      case InfoExpression::Kind::entropy:
        out.push_back({c, it.x});
        break;
      case InfoExpression::Kind::conditional_entropy:
        out.push_back({c, set_union(it.x, it.y)});
        out.push_back({-c, it.y});
        break;
      case InfoExpression::Kind::mutual_information:
        out.push_back({c, it.x});
        out.push_back({c, it.y});
        out.push_back({-c, set_union(it.x, it.y)});
        break;
      case InfoExpression::Kind::conditional_mutual_information:
        out.push_back({c, set_union(it.x, it.z)});
        out.push_back({c, set_union(it.y, it.z)});
        out.push_back({-c, set_union(set_union(it.x, it.y), it.z)});
        out.push_back({-c, it.z});
        break;
    }
  }
  return canonicalize(std::move(out));
}

// ---------------------------------------------------------------------------
// Inequalities

std::string to_string(CharCondition c) {
  switch (c) {
    case CharCondition::divides: return "divides";
    case CharCondition::not_divides: return "not_divides";
    case CharCondition::all: return "all";
  }
  return "?";
}

CharCondition parse_char_condition(std::string_view text) {
  if (text == "divides") return CharCondition::divides;
  if (text == "not_divides") return CharCondition::not_divides;
  if (text == "all") return CharCondition::all;
  throw ParseError("unknown char_condition '" + std::string(text) + "'");
}

bool EntropyInequality::conforms(std::uint32_t p) const {
  switch (char_condition) {
    case CharCondition::divides: return t % static_cast<long>(p) == 0;
    case CharCondition::not_divides: return t % static_cast<long>(p) != 0;
    case CharCondition::all: return true;
  }
  return false;
}

VariableSet EntropyInequality::variables() const {
  VariableSet all;
  for (const auto* side : {&terms, &lhs, &rhs})
    for (const auto& term : *side) all = set_union(all, term.vars);
  return all;
}

EntropyInequality make_inequality(std::vector<EntropyTerm> lhs, std::vector<EntropyTerm> rhs,
                                  const Rational& scale, CharCondition cond, long t,
                                  std::string provenance) {
  EntropyInequality ineq;
  ineq.lhs = canonicalize(std::move(lhs));
  ineq.rhs = canonicalize(std::move(rhs));
  ineq.scale = scale;
  std::vector<EntropyTerm> cleared;
  for (const auto& term : ineq.rhs) cleared.push_back({scale * term.coeff, term.vars});
  for (const auto& term : ineq.lhs) cleared.push_back({-scale * term.coeff, term.vars});
  ineq.terms = canonicalize(std::move(cleared));
  for (const auto& term : ineq.terms)
    if (term.coeff.get_den() != 1) throw InvalidArgument("scale does not clear every denominator");
  ineq.char_condition = cond;
  ineq.t = t;
  ineq.provenance = std::move(provenance);
  return ineq;
}

std::string seed_signature(const SeedMatrix& seed) {
  std::string out;
  for (std::size_t i = 0; i < seed.size(); ++i) {
    if (i) out += '/';
    for (auto v : seed.entries()[i]) out += static_cast<char>('0' + v);
  }
  return out;
}

namespace {

using Label = VariableLabel;

VariableSet all_a(std::size_t n) {
  VariableSet out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(Label::a(i));
  return out;
}

// Variable standing for column j: B_{j+1} for intermediate columns, the A
// variable of the unit row for single columns.
Label column_variable(const SeedMatrix& seed, std::size_t j) {
  if (seed.is_intermediate(j)) return Label::b(j + 1);
  return Label::a(seed.single_row(j) + 1);
}

VariableSet column_variables(const SeedMatrix& seed, std::size_t skip = static_cast<std::size_t>(-1)) {
  VariableSet out;
  for (std::size_t j = 0; j < seed.size(); ++j)
    if (j != skip) out.push_back(column_variable(seed, j));
  return make_set(std::move(out));
}

bool in_support(const SeedMatrix& seed, std::size_t col, std::size_t row) {
  return seed.entries()[row][col] == 1;
}

// A variables of rows outside (or inside) the support of column j.
VariableSet a_rows(const SeedMatrix& seed, std::size_t j, bool inside, std::size_t skip_row) {
  VariableSet out;
  for (std::size_t i = 0; i < seed.size(); ++i)
    if (in_support(seed, j, i) == inside && i != skip_row) out.push_back(Label::a(i + 1));
  return out;
}

VariableSet with(VariableSet set, Label extra) {
  set.push_back(extra);
  return make_set(std::move(set));
}

// Slack blocks shared by both templates.
void add_common_slack(const SeedMatrix& seed, InfoExpression& e) {
  const std::size_t n = seed.size();
  const VariableSet c = {Label::c()};
  const VariableSet a = all_a(n);
  const std::size_t none = static_cast<std::size_t>(-1);
  e.conditional(1, c, a);
  for (std::size_t i = 0; i < n; ++i) {
    VariableSet rest;
    for (std::size_t k = 0; k < n; ++k)
      if (k != i) rest.push_back(Label::a(k + 1));
    e.mutual(1, c, rest);
  }
  for (auto h : seed.class_prime())
    for (std::size_t i = 0; i < n; ++i)
      if (!in_support(seed, h, i)) e.mutual(1, c, with(a_rows(seed, h, false, i), Label::b(h + 1)));
  for (auto j : seed.class_prime()) {
    e.conditional(1, c, with(a_rows(seed, j, false, none), Label::b(j + 1)));
    e.mutual(1, c, with(a_rows(seed, j, true, none), Label::b(j + 1)));
  }
}

}  // namespace

EntropyInequality generate_nondividing(const SeedMatrix& seed) {
  const std::size_t n = seed.size();
  const Rational denom = 1 + static_cast<long>(seed.witness_total());
  InfoExpression e;
  for (std::size_t i = 0; i < n; ++i) {
    const auto w = seed.row_witness()[i].size();
    if (w) e.entropy(Rational(static_cast<long>(w)) / denom, {Label::a(i + 1)});
  }
  e.mutual(1, {Label::c()}, column_variables(seed));
  add_common_slack(seed, e);
  return make_inequality({{1, {Label::c()}}}, expand_to_joint_entropies(e), denom,
                         CharCondition::not_divides, seed.t(),
                         "seed-nondividing seed=" + seed_signature(seed));
}

EntropyInequality generate_dividing(const SeedMatrix& seed, std::size_t k) {
  if (k >= seed.size() || !seed.is_intermediate(k))
    throw InvalidArgument("column " + std::to_string(k + 1) + " is not an intermediate column of the seed");
  const std::size_t n = seed.size();
  const Rational denom = 2 + static_cast<long>(seed.witness_total());
  InfoExpression e;
  for (std::size_t i = 0; i < n; ++i) {
    const auto w = seed.row_witness()[i].size();
    if (w) e.entropy(Rational(static_cast<long>(w)) / denom, {Label::a(i + 1)});
  }
  e.entropy(1 / denom, {Label::b(k + 1)});
  e.conditional(1, {Label::c()}, column_variables(seed));
  add_common_slack(seed, e);
  for (std::size_t i = 0; i < n; ++i) e.mutual(1, {Label::c()}, column_variables(seed, i));
  return make_inequality({{1, {Label::c()}}}, expand_to_joint_entropies(e), denom,
                         CharCondition::divides, seed.t(),
                         "seed-dividing k=" + std::to_string(k + 1) + " seed=" + seed_signature(seed));
}

std::pair<EntropyInequality, EntropyInequality> family_pair(long n, long t) {
  auto seed = family_matrix(n, t);
  return {generate_nondividing(seed), generate_dividing(seed, seed.class_prime().front())};
}

EntropyInequality ingleton_inequality() {
  const auto a = [](std::size_t i) { return VariableSet{Label::a(i)}; };
  InfoExpression lhs, rhs;
  lhs.mutual(1, a(1), a(2));
  rhs.mutual(1, a(1), a(2), a(3)).mutual(1, a(1), a(2), a(4)).mutual(1, a(3), a(4));
  return make_inequality(expand_to_joint_entropies(lhs), expand_to_joint_entropies(rhs), 1,
                         CharCondition::all, 0, "builtin-ingleton");
}

EntropyInequality char_not_two_inequality() {
  const auto a = [](std::size_t i) { return Label::a(i); };
  const auto b = [](std::size_t i) { return Label::b(i); };
  const auto c = Label::c();
  InfoExpression lhs, rhs;
  lhs.entropy(2, {a(1)}).entropy(1, {a(2)}).entropy(2, {a(3)});
  rhs.entropy(1, {b(1)}).entropy(1, {b(2)}).entropy(1, {b(3)}).entropy(1, {c});
  rhs.conditional(2, {a(1)}, {b(1), c});
  rhs.conditional(1, {a(2)}, {b(2), c});
  rhs.conditional(2, {a(3)}, {a(1), b(2)});
  rhs.conditional(3, {b(2)}, {b(1), b(3)});
  rhs.conditional(3, {c}, {a(3), b(3)});
  rhs.conditional(5, {b(3)}, {a(1), a(2)});
  rhs.conditional(5, {b(1)}, {a(2), a(3)});
  rhs.entropy(5, {a(1)}).entropy(5, {a(2)}).entropy(5, {a(3)}).entropy(-5, {a(1), a(2), a(3)});
  return make_inequality(expand_to_joint_entropies(lhs), expand_to_joint_entropies(rhs), 1,
                         CharCondition::not_divides, 2, "builtin-char-not-2");
}

std::vector<EntropyInequality> builtin_inequalities() {
  return {ingleton_inequality(), char_not_two_inequality()};
}

namespace {

std::string render_side(const std::vector<EntropyTerm>& side) {
  if (side.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& term : side) {
    Rational mag = abs(term.coeff);
    out << (first ? (term.coeff < 0 ? "-" : "") : (term.coeff < 0 ? " - " : " + "));
    if (mag != 1) out << mag.get_str() << " ";
    out << "H(";
    for (std::size_t i = 0; i < term.vars.size(); ++i) out << (i ? "," : "") << term.vars[i].name();
    out << ")";
    first = false;
  }
  return out.str();
}

}  // namespace

std::string render(const EntropyInequality& ineq) {
  if (ineq.lhs.empty() && ineq.rhs.empty()) return "0 <= " + render_side(ineq.terms);
  return render_side(ineq.lhs) + " <= " + render_side(ineq.rhs);
}

}  // namespace rankineq

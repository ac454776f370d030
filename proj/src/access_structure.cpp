#include "rankineq/access_structure.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "rankineq/errors.hpp"

namespace rankineq {

namespace {

void sort_masks(std::vector<SubsetMask>& masks) {
  std::sort(masks.begin(), masks.end(), [](SubsetMask x, SubsetMask y) {
    auto px = std::popcount(x), py = std::popcount(y);
    return px != py ? px < py : x < y;
  });
}

void require_port_size(std::size_t n) {
  if (n > max_port_participants)
    throw CapExceeded(std::to_string(n) + " participants exceed the limit of " +
                      std::to_string(max_port_participants));
}

}  // namespace

AccessStructure::AccessStructure(std::vector<std::string> participants, std::string dealer,
                                 std::vector<SubsetMask> minimal_qualified)
    : participants_(std::move(participants)), dealer_(std::move(dealer)), minimal_(std::move(minimal_qualified)) {
  if (participants_.size() > max_port_participants)
    throw InvalidArgument("too many participants (limit " + std::to_string(max_port_participants) + ")");
  std::set<std::string> seen;
  for (const auto& p : participants_) {
    if (p.empty()) throw InvalidArgument("empty participant label");
    if (!seen.insert(p).second) throw InvalidArgument("duplicate participant '" + p + "'");
  }
  if (seen.count(dealer_)) throw InvalidArgument("dealer '" + dealer_ + "' is also a participant");
  const SubsetMask full = participants_.empty() ? 0 : static_cast<SubsetMask>((1ull << participants_.size()) - 1);
  sort_masks(minimal_);
  for (std::size_t i = 0; i < minimal_.size(); ++i) {
    if (minimal_[i] & ~full) throw InvalidArgument("minimal set refers to an unknown participant");
    for (std::size_t j = 0; j < i; ++j)
      if (is_subset(minimal_[j], minimal_[i]))
        throw InvalidArgument("minimal qualified sets are not an antichain");
  }
}

AccessStructure AccessStructure::from_labels(std::vector<std::string> participants, std::string dealer,
                                             const std::vector<std::vector<std::string>>& minimal_qualified) {
  AccessStructure probe(participants, dealer, {});
  std::vector<SubsetMask> masks;
  for (const auto& set : minimal_qualified) masks.push_back(probe.mask_of(set));
  return AccessStructure(std::move(participants), std::move(dealer), std::move(masks));
}

std::size_t AccessStructure::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < participants_.size(); ++i)
    if (participants_[i] == label) return i;
  throw UnknownParticipant("unknown participant '" + std::string(label) + "'");
}

SubsetMask AccessStructure::mask_of(const std::vector<std::string>& labels) const {
  SubsetMask m = 0;
  for (const auto& l : labels) m |= SubsetMask{1} << index_of(l);
  return m;
}

std::vector<std::string> AccessStructure::labels_of(SubsetMask mask) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < participants_.size(); ++i)
    if (mask >> i & 1) out.push_back(participants_[i]);
  return out;
}

bool AccessStructure::is_qualified(SubsetMask x) const {
  return std::any_of(minimal_.begin(), minimal_.end(), [x](SubsetMask m) { return is_subset(m, x); });
}

bool AccessStructure::is_qualified(const std::vector<std::string>& labels) const {
  return is_qualified(mask_of(labels));
}

LinearScheme::LinearScheme(std::vector<std::string> participants, std::string dealer, PrimeFieldMatrix columns)
    : participants_(std::move(participants)), dealer_(std::move(dealer)), columns_(std::move(columns)) {
  if (columns_.cols() != participants_.size() + 1)
    throw InvalidArgument("scheme needs one column per participant plus the dealer column");
  bool nonzero = false;
  for (std::size_t r = 0; r < columns_.rows(); ++r) nonzero |= columns_.at(r, participants_.size()) != 0;
  if (!nonzero) throw InvalidArgument("dealer column is zero");
  std::set<std::string> seen(participants_.begin(), participants_.end());
  if (seen.size() != participants_.size()) throw InvalidArgument("duplicate participant label");
  if (seen.count(dealer_)) throw InvalidArgument("dealer label repeats a participant");
}

std::vector<FieldElement> LinearScheme::column(std::size_t i) const {
  std::vector<FieldElement> out(columns_.rows());
  for (std::size_t r = 0; r < columns_.rows(); ++r) out[r] = columns_.at(r, i);
  return out;
}

LinearScheme read_scheme_text(std::istream& in, const std::optional<std::string>& dealer) {
  std::vector<std::string> names;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string name;
    while (ls >> name) names.push_back(name);
    if (!names.empty()) break;
  }
  if (names.empty()) throw ParseError("scheme file has no column-name line");
  auto m = read_matrix_text(in);
  if (m.cols() != names.size())
    throw ParseError("scheme names " + std::to_string(names.size()) + " columns but the matrix has " +
                     std::to_string(m.cols()));
  std::size_t d = names.size() - 1;
  if (dealer) {
    auto it = std::find(names.begin(), names.end(), *dealer);
    if (it == names.end()) throw UnknownParticipant("dealer column '" + *dealer + "' not found");
    d = static_cast<std::size_t>(it - names.begin());
  }
  std::vector<std::string> participants;
  std::vector<std::size_t> order;
  for (std::size_t j = 0; j < names.size(); ++j)
    if (j != d) {
      participants.push_back(names[j]);
      order.push_back(j);
    }
  order.push_back(d);
  PrimeFieldMatrix cols(m.field(), m.rows(), names.size());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t j = 0; j < order.size(); ++j) cols.set(r, j, m.at(r, order[j]));
  return LinearScheme(std::move(participants), names[d], std::move(cols));
}

void write_scheme_text(std::ostream& out, const LinearScheme& s) {
  for (const auto& p : s.participants()) out << p << ' ';
  out << s.dealer() << '\n';
  write_matrix_text(out, s.columns());
}

std::size_t columns_rank(const LinearScheme& s, SubsetMask mask, bool with_dealer) {
  const std::size_t n = s.participants().size();
  const auto& cols = s.columns();
  PrimeFieldMatrix rows(s.field(), 0, cols.rows());
  std::vector<FieldElement> v(cols.rows());
  auto add = [&](std::size_t j) {
    for (std::size_t r = 0; r < cols.rows(); ++r) v[r] = cols.at(r, j);
    rows.append_row(v);
  };
  for (std::size_t j = 0; j < n; ++j)
    if (mask >> j & 1) add(j);
  if (with_dealer) add(n);
  return rank(rows);
}

AccessStructure matroid_port(const LinearScheme& s) {
  const std::size_t n = s.participants().size();
  require_port_size(n);
  const SubsetMask total = static_cast<SubsetMask>(1ull << n);
  std::vector<char> qualified(total, 0);
  std::vector<SubsetMask> minimal;
  // Increasing mask order visits every proper subset first.
  for (SubsetMask x = 0; x < total; ++x) {
    bool inherited = false;
    for (SubsetMask rest = x; rest && !inherited; rest &= rest - 1)
      inherited = qualified[x & ~(rest & -rest)];
    if (inherited) {
      qualified[x] = 1;
      continue;
    }
    if (columns_rank(s, x, false) == columns_rank(s, x, true)) {
      qualified[x] = 1;
      minimal.push_back(x);
    }
  }
  return AccessStructure(s.participants(), s.dealer(), std::move(minimal));
}

LinearScheme figure2_representation(long t, std::uint32_t q) {
  if (t < 2) throw InvalidArgument("figure-2 representation needs t >= 2");
  PrimeField field(q);
  const auto m = static_cast<std::size_t>(t + 1);
  PrimeFieldMatrix cols(field, m, 2 * m + 1);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < m; ++i) names.push_back("a" + std::to_string(i + 1));
  for (std::size_t i = 0; i < m; ++i) names.push_back("b" + std::to_string(i + 1));
  for (std::size_t r = 0; r < m; ++r) {
    cols.set(r, r, 1);
    for (std::size_t i = 0; i < m; ++i) cols.set(r, m + i, r == i ? 0 : 1);
    cols.set(r, 2 * m, 1);
  }
  return LinearScheme(std::move(names), "c", std::move(cols));
}

SchemeSimulationReport simulate_scheme_exhaustive(const LinearScheme& s) {
  const std::size_t n = s.participants().size();
  require_port_size(n);
  const std::uint64_t q = s.field().modulus();
  const std::size_t m = s.share_space_dim();
  std::uint64_t deals = 1;
  for (std::size_t i = 0; i < m; ++i) {
    deals *= q;
    if (deals > max_simulation_deals)
      throw CapExceeded("q^m exceeds the enumeration limit of " + std::to_string(max_simulation_deals) + " deals");
  }
  const std::uint64_t subsets = 1ull << n;
  if (subsets * deals > max_simulation_work)
    throw CapExceeded("exhaustive simulation would need " + std::to_string(subsets * deals) +
                      " share evaluations (limit " + std::to_string(max_simulation_work) + ")");

  // shares[j][d]: share of column j in deal d, d read as base-q digits of r.
  std::vector<std::vector<std::uint16_t>> shares(n + 1, std::vector<std::uint16_t>(deals));
  std::vector<FieldElement> r(m, 0);
  for (std::uint64_t d = 0; d < deals; ++d) {
    for (std::size_t j = 0; j <= n; ++j) {
      FieldElement acc = 0;
      for (std::size_t k = 0; k < m; ++k) acc = s.field().add(acc, s.field().mul(s.columns().at(k, j), r[k]));
      shares[j][d] = static_cast<std::uint16_t>(acc);
    }
    for (std::size_t k = 0; k < m && ++r[k] == q; ++k) r[k] = 0;
  }

  SchemeSimulationReport rep;
  rep.deals = deals;
  rep.subsets_checked = subsets;
  std::size_t max_share_entropy = 0;
  auto fail = [&rep](SubsetMask x) {
    if (!rep.first_failure) rep.first_failure = x;
  };
  std::unordered_map<std::string, std::vector<std::uint32_t>> table;
  std::string key;
  for (SubsetMask x = 0; x < subsets; ++x) {
    table.clear();
    for (std::uint64_t d = 0; d < deals; ++d) {
      key.clear();
      for (std::size_t j = 0; j < n; ++j)
        if (x >> j & 1) {
          key.push_back(static_cast<char>(shares[j][d] & 0xff));
          key.push_back(static_cast<char>(shares[j][d] >> 8));
        }
      auto& counts = table[key];
      if (counts.empty()) counts.assign(q, 0);
      ++counts[shares[n][d]];
    }
    bool determined = true, uniform = true;
    for (const auto& [k, counts] : table) {
      const auto nonzero = std::count_if(counts.begin(), counts.end(), [](auto c) { return c != 0; });
      determined &= nonzero == 1;
      uniform &= std::all_of(counts.begin(), counts.end(), [&](auto c) { return c == counts.front(); });
    }
    const auto rk = columns_rank(s, x, false);
    const bool rank_qualified = rk == columns_rank(s, x, true);
    std::uint64_t expected = 1;
    for (std::size_t i = 0; i < rk; ++i) expected *= q;
    if (table.size() != expected) {
      rep.entropy_matches_rank = false;
      fail(x);
    }
    if (rank_qualified && !determined) {
      rep.correctness = false;
      fail(x);
    }
    if (!rank_qualified && !uniform) {
      rep.privacy = false;
      fail(x);
    }
    if (determined != rank_qualified || uniform == rank_qualified) {
      rep.matches_rank_port = false;
      fail(x);
    }
    if (std::popcount(x) == 1) max_share_entropy = std::max(max_share_entropy, rk);
  }
  // The secret is uniform on GF(q) because the dealer column is nonzero.
  rep.information_ratio = Rational(static_cast<long>(max_share_entropy));
  return rep;
}

RankFunction scheme_rank_function(const LinearScheme& s) {
  const std::size_t n = s.participants().size();
  require_port_size(n);
  RankFunction f;
  f.ground_size = n + 1;
  const SubsetMask total = static_cast<SubsetMask>(1ull << (n + 1));
  const SubsetMask dealer_bit = SubsetMask{1} << n;
  f.values.resize(total);
  for (SubsetMask x = 0; x < total; ++x) f.values[x] = columns_rank(s, x & ~dealer_bit, x & dealer_bit);

  f.monotone = true;
  f.submodular = true;
  for (SubsetMask x = 0; x < total; ++x)
    for (std::size_t i = 0; i <= n; ++i) {
      const SubsetMask bi = SubsetMask{1} << i;
      if (x & bi) continue;
      if (f.values[x | bi] < f.values[x]) f.monotone = false;
      for (std::size_t j = i + 1; j <= n; ++j) {
        const SubsetMask bj = SubsetMask{1} << j;
        if (x & bj) continue;
        if (f.values[x | bi] + f.values[x | bj] < f.values[x | bi | bj] + f.values[x]) f.submodular = false;
      }
    }
  return f;
}

AccessStructure RankFunction::port(const std::vector<std::string>& participants, const std::string& dealer) const {
  const std::size_t n = ground_size - 1;
  if (participants.size() != n) throw InvalidArgument("participant count does not match the rank function");
  const SubsetMask total = static_cast<SubsetMask>(1ull << n);
  const SubsetMask dealer_bit = SubsetMask{1} << n;
  std::vector<char> qualified(total, 0);
  std::vector<SubsetMask> minimal;
  for (SubsetMask x = 0; x < total; ++x) {
    qualified[x] = values[x | dealer_bit] == values[x];
    if (!qualified[x]) continue;
    bool is_min = true;
    for (SubsetMask rest = x; rest && is_min; rest &= rest - 1) is_min = !qualified[x & ~(rest & -rest)];
    if (is_min) minimal.push_back(x);
  }
  return AccessStructure(participants, dealer, std::move(minimal));
}

}  // namespace rankineq

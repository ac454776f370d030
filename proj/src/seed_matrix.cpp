#include "rankineq/seed_matrix.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <string>

#include "rankineq/errors.hpp"

namespace rankineq {

BigInt integer_determinant(const IntMatrix& m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw ShapeError("determinant of a non-square matrix");
  if (n == 0) return 1;
  std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<long>(m[i][j]);
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

bool SeedMatrix::is_intermediate(std::size_t col) const {
  return std::binary_search(class_prime_.begin(), class_prime_.end(), col);
}

std::size_t SeedMatrix::single_row(std::size_t col) const {
  if (supports_.at(col).size() != 1) throw InvalidArgument("column " + std::to_string(col + 1) + " is not a unit column");
  return supports_[col].front();
}

std::size_t SeedMatrix::witness_total() const {
  std::size_t total = 0;
  for (const auto& w : row_witness_) total += w.size();
  return total;
}

SeedMatrix classify_columns(const IntMatrix& b) {
  using Reason = SeedValidationError::Reason;
  const std::size_t n = b.size();
  for (const auto& row : b)
    if (row.size() != n)
      throw SeedValidationError(Reason::not_square, "seed matrix must be square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (b[i][j] != 0 && b[i][j] != 1)
        throw SeedValidationError(Reason::non_binary_entry, "entry (" + std::to_string(i + 1) + "," +
                                                                std::to_string(j + 1) + ") is not 0 or 1");
  SeedMatrix s;
  s.entries_ = b;
  s.supports_.assign(n, {});
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (b[i][j] == 1) s.supports_[j].push_back(i);
  for (std::size_t j = 0; j < n; ++j) {
    const auto size = s.supports_[j].size();
    if (size == n)
      throw SeedValidationError(Reason::has_full_support_column,
                                "column " + std::to_string(j + 1) + " has full support");
    if (size == 1) s.class_single_.push_back(j);
    else if (size > 1) s.class_prime_.push_back(j);
  }
  s.det_abs_ = abs(integer_determinant(b));
  if (s.det_abs_ <= 1)
    throw SeedValidationError(Reason::det_abs_too_small,
                              "|det| = " + s.det_abs_.get_str() + ", a seed needs |det| > 1");
  s.row_witness_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i)
    for (auto j : s.class_prime_)
      if (b[i][j] == 0) s.row_witness_[i].push_back(j);
  return s;
}

bool family_parameters_valid(long n, long t) {
  return n >= 7 && t >= 2 && t <= (n - 1) / 2 - 1;
}

std::size_t family_size(long n, long t) { return static_cast<std::size_t>(n - t - 2); }

SeedMatrix family_matrix(long n, long t) {
  if (!family_parameters_valid(n, t))
    throw InvalidArgument("family parameters (n, t) = (" + std::to_string(n) + ", " + std::to_string(t) +
                          ") out of range: need n >= 7 and 2 <= t <= floor((n-1)/2) - 1");
  const std::size_t m = family_size(n, t);
  IntMatrix b(m, std::vector<long long>(m, 0));
  for (std::size_t j = 0; j < m; ++j) {
    if (j <= static_cast<std::size_t>(t)) {
      for (std::size_t i = 0; i < m; ++i) b[i][j] = i == j ? 0 : 1;
    } else {
      b[j][j] = 1;
    }
  }
  return classify_columns(b);
}

IntMatrix read_binary_matrix_text(std::istream& in) {
  IntMatrix rows;
  std::string line;
  while (std::getline(in, line)) {
    auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    std::istringstream ss(line);
    std::vector<long long> row;
    std::string token;
    while (ss >> token) {
      try {
        std::size_t used = 0;
        long long v = std::stoll(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        row.push_back(v);
      } catch (const std::logic_error&) {
        throw ParseError("binary matrix: malformed entry '" + token + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("binary matrix: no rows");
  return rows;
}

}  // namespace rankineq

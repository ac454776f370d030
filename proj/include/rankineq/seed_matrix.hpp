#pragma once

// Square 0/1 seed matrices: exact determinant, column classification and the
// parametric family built from all-ones-minus-unit and unit columns.
//
// Indices are 0-based in this API. Column j has support S_j (the rows holding
// a one). A column is "intermediate" when 1 < |S_j| < n and "single" when
// |S_j| == 1; full-support columns are rejected.

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "rankineq/rational.hpp"

namespace rankineq {

using IntMatrix = std::vector<std::vector<long long>>;

// Fraction-free Bareiss elimination over arbitrary-precision integers.
// Throws ShapeError for a non-square (or ragged) matrix.
BigInt integer_determinant(const IntMatrix& m);

class SeedMatrix {
 public:
  std::size_t size() const { return entries_.size(); }
  const IntMatrix& entries() const { return entries_; }
  const BigInt& det_abs() const { return det_abs_; }
  // det_abs as a machine integer (seeds in scope are small).
  long t() const { return det_abs_.get_si(); }

  const std::vector<std::vector<std::size_t>>& supports() const { return supports_; }
  const std::vector<std::size_t>& class_prime() const { return class_prime_; }
  const std::vector<std::size_t>& class_single() const { return class_single_; }
  // For row i: intermediate columns j with i outside S_j.
  const std::vector<std::vector<std::size_t>>& row_witness() const { return row_witness_; }

  bool is_intermediate(std::size_t col) const;
  // The unique row of a single column.
  std::size_t single_row(std::size_t col) const;
  std::size_t witness_total() const;

  friend SeedMatrix classify_columns(const IntMatrix& b);

 private:
  IntMatrix entries_;
  BigInt det_abs_;
  std::vector<std::vector<std::size_t>> supports_;
  std::vector<std::size_t> class_prime_;
  std::vector<std::size_t> class_single_;
  std::vector<std::vector<std::size_t>> row_witness_;
};

// Throws SeedValidationError (not_square, non_binary_entry, det_abs_too_small,
// has_full_support_column). Zero columns count as single-free and fail the
// determinant check.
SeedMatrix classify_columns(const IntMatrix& b);

// True iff 7 <= n and 2 <= t <= floor((n-1)/2) - 1.
bool family_parameters_valid(long n, long t);
// Size of the family matrix, n - t - 2.
std::size_t family_size(long n, long t);

// Columns 0..t are (all ones) - e_j, the remaining columns are e_j.
// Throws InvalidArgument when the parameters are out of range.
SeedMatrix family_matrix(long n, long t);

// Rows of space-separated 0/1 entries; blank lines and '#' comments skipped.
IntMatrix read_binary_matrix_text(std::istream& in);

}  // namespace rankineq

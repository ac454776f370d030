#pragma once

// Dense linear algebra over prime fields GF(p), p < 2^16.
//
// Subspaces are kept in canonical form: the reduced row-echelon basis with
// no zero rows. Two subspaces are equal iff their canonical bases are equal.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rankineq {

using FieldElement = std::uint32_t;

class PrimeField {
 public:
  static constexpr std::uint32_t max_modulus = 1u << 16;

  // Throws InvalidArgument unless p is a prime below max_modulus.
  explicit PrimeField(std::uint32_t p);

  std::uint32_t modulus() const { return p_; }

  FieldElement reduce(std::int64_t value) const {
    auto r = value % static_cast<std::int64_t>(p_);
    return static_cast<FieldElement>(r < 0 ? r + p_ : r);
  }
  FieldElement add(FieldElement a, FieldElement b) const { return (a + b) % p_; }
  FieldElement sub(FieldElement a, FieldElement b) const { return (a + p_ - b) % p_; }
  FieldElement neg(FieldElement a) const { return a == 0 ? 0 : p_ - a; }
  FieldElement mul(FieldElement a, FieldElement b) const {
    return static_cast<FieldElement>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  // Throws InvalidArgument for a == 0.
  FieldElement inv(FieldElement a) const;

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint32_t n);

class PrimeFieldMatrix {
 public:
  PrimeFieldMatrix(PrimeField field, std::size_t rows, std::size_t cols);
  // Row-major values, reduced mod p. Throws ShapeError on a length mismatch.
  PrimeFieldMatrix(PrimeField field, std::size_t rows, std::size_t cols,
                   std::span<const std::int64_t> values);

  static PrimeFieldMatrix from_rows(PrimeField field, std::size_t cols,
                                    const std::vector<std::vector<std::int64_t>>& rows);
  static PrimeFieldMatrix identity(PrimeField field, std::size_t n);

  const PrimeField& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  FieldElement at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::int64_t value) {
    entries_[r * cols_ + c] = field_.reduce(value);
  }
  std::span<const FieldElement> row(std::size_t r) const {
    return {entries_.data() + r * cols_, cols_};
  }
  const std::vector<FieldElement>& entries() const { return entries_; }

  PrimeFieldMatrix transpose() const;
  // Rows of *this followed by rows of other. Throws DimensionMismatch.
  PrimeFieldMatrix stack(const PrimeFieldMatrix& other) const;
  void append_row(std::span<const FieldElement> values);
  PrimeFieldMatrix multiply(const PrimeFieldMatrix& rhs) const;

  bool operator==(const PrimeFieldMatrix&) const = default;

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<FieldElement> entries_;
};

struct RrefResult {
  PrimeFieldMatrix rref;  // same shape as the input, zero rows at the bottom
  std::size_t rank;
  std::vector<std::size_t> pivot_cols;
};

RrefResult rref_rank(const PrimeFieldMatrix& m);
std::size_t rank(const PrimeFieldMatrix& m);

class Subspace {
 public:
  // Row space of `generators`.
  static Subspace span(const PrimeFieldMatrix& generators);
  static Subspace zero(PrimeField field, std::size_t ambient_dim);
  static Subspace whole(PrimeField field, std::size_t ambient_dim);
  static Subspace of_vector(PrimeField field, std::span<const std::int64_t> v);

  const PrimeField& field() const { return basis_.field(); }
  std::size_t ambient_dim() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  const PrimeFieldMatrix& basis() const { return basis_; }

  bool contains(std::span<const FieldElement> v) const;
  bool contains(const Subspace& other) const;

  bool operator==(const Subspace&) const = default;

 private:
  explicit Subspace(PrimeFieldMatrix canonical) : basis_(std::move(canonical)) {}
  PrimeFieldMatrix basis_;
};

Subspace kernel_basis(const PrimeFieldMatrix& m);

// Throw DimensionMismatch when field or ambient dimension differ.
Subspace subspace_sum(std::span<const Subspace> us);
Subspace subspace_sum(const Subspace& u, const Subspace& v);
Subspace subspace_intersect(const Subspace& u, const Subspace& v);
// Left fold of pairwise intersections; requires a nonempty list.
Subspace subspace_intersect_all(std::span<const Subspace> us);

// Coefficients lambda with lambda * generators == v, free coordinates set to
// zero; nullopt when v is outside the row space.
std::optional<std::vector<FieldElement>> solve_left(const PrimeFieldMatrix& generators,
                                                    std::span<const FieldElement> v);

// (A_1, ..., A_n, C) with A_1 + ... + A_n direct, C inside that sum, and the
// sum still direct after replacing any single A_i by C.
class ComplementaryTuple {
 public:
  // Throws InvalidTuple when the invariants fail, DimensionMismatch on mixed spaces.
  ComplementaryTuple(std::vector<Subspace> parts, Subspace extra);

  // Returns an explanation of the first failed invariant, nullopt if valid.
  static std::optional<std::string> check(std::span<const Subspace> parts, const Subspace& extra);

  const std::vector<Subspace>& parts() const { return parts_; }
  const Subspace& extra() const { return extra_; }
  std::size_t ambient_dim() const { return extra_.ambient_dim(); }

 private:
  std::vector<Subspace> parts_;
  Subspace extra_;
};

// Image of C under the projection onto the parts listed in idx_set (0-based),
// along the remaining parts. Throws InvalidArgument for bad indices.
Subspace project_component(const ComplementaryTuple& t, std::span<const std::size_t> idx_set);

// Subspaces Abar_i <= A_i spanned by the A_i-components of C's basis vectors.
// Requires C <= sum A_i and C meeting every sum over i != k trivially; the
// latter failure raises PreconditionViolation carrying k.
std::vector<Subspace> complementary_refinement(std::span<const Subspace> parts, const Subspace& c);

// Text format: "p rows cols" on the first line, then one row per line.
PrimeFieldMatrix read_matrix_text(std::istream& in);
void write_matrix_text(std::ostream& out, const PrimeFieldMatrix& m);

}  // namespace rankineq

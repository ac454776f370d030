#include "rankineq/gf_linalg.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "rankineq/errors.hpp"

namespace rankineq {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p >= max_modulus) throw InvalidArgument("modulus " + std::to_string(p) + " exceeds 2^16");
  if (!is_prime(p)) throw InvalidArgument("modulus " + std::to_string(p) + " is not prime");
}

FieldElement PrimeField::inv(FieldElement a) const {
  if (a % p_ == 0) throw InvalidArgument("inverse of zero");
  // Fermat: a^(p-2)
  std::uint64_t result = 1, base = a % p_;
  for (std::uint32_t e = p_ - 2; e > 0; e >>= 1) {
    if (e & 1u) result = result * base % p_;
    base = base * base % p_;
  }
  return static_cast<FieldElement>(result);
}

// ---------------------------------------------------------------------------
// PrimeFieldMatrix

PrimeFieldMatrix::PrimeFieldMatrix(PrimeField field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

PrimeFieldMatrix::PrimeFieldMatrix(PrimeField field, std::size_t rows, std::size_t cols,
                                   std::span<const std::int64_t> values)
    : PrimeFieldMatrix(field, rows, cols) {
  if (values.size() != rows * cols)
    throw ShapeError("expected " + std::to_string(rows * cols) + " entries, got " +
                     std::to_string(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) entries_[i] = field_.reduce(values[i]);
}

PrimeFieldMatrix PrimeFieldMatrix::from_rows(PrimeField field, std::size_t cols,
                                             const std::vector<std::vector<std::int64_t>>& rows) {
  PrimeFieldMatrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols)
      throw ShapeError("row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                       " entries, expected " + std::to_string(cols));
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

PrimeFieldMatrix PrimeFieldMatrix::identity(PrimeField field, std::size_t n) {
  PrimeFieldMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = 1;
  return m;
}

PrimeFieldMatrix PrimeFieldMatrix::transpose() const {
  PrimeFieldMatrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.entries_[c * rows_ + r] = at(r, c);
  return t;
}

PrimeFieldMatrix PrimeFieldMatrix::stack(const PrimeFieldMatrix& other) const {
  if (!(field_ == other.field_) || cols_ != other.cols_)
    throw DimensionMismatch("cannot stack matrices over different fields or widths");
  PrimeFieldMatrix s(field_, rows_ + other.rows_, cols_);
  std::copy(entries_.begin(), entries_.end(), s.entries_.begin());
  std::copy(other.entries_.begin(), other.entries_.end(),
            s.entries_.begin() + static_cast<std::ptrdiff_t>(entries_.size()));
  return s;
}

void PrimeFieldMatrix::append_row(std::span<const FieldElement> values) {
  if (values.size() != cols_) throw ShapeError("appended row has wrong length");
  for (auto v : values) entries_.push_back(v % field_.modulus());
  ++rows_;
}

PrimeFieldMatrix PrimeFieldMatrix::multiply(const PrimeFieldMatrix& rhs) const {
  if (!(field_ == rhs.field_) || cols_ != rhs.rows_)
    throw DimensionMismatch("matrix product shape mismatch");
  PrimeFieldMatrix out(field_, rows_, rhs.cols_);
  const std::uint64_t p = field_.modulus();
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < rhs.cols_; ++c) {
      std::uint64_t acc = 0;
      for (std::size_t k = 0; k < cols_; ++k) acc = (acc + std::uint64_t{at(r, k)} * rhs.at(k, c)) % p;
      out.entries_[r * rhs.cols_ + c] = static_cast<FieldElement>(acc);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Row reduction

namespace {

// In-place Gauss-Jordan on a row-major buffer; returns pivot columns.
std::vector<std::size_t> reduce_rows(const PrimeField& f, std::vector<FieldElement>& a,
                                     std::size_t rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && a[sel * cols + c] == 0) ++sel;
    if (sel == rows) continue;
    if (sel != r)
      std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(sel * cols),
                       a.begin() + static_cast<std::ptrdiff_t>(sel * cols + cols),
                       a.begin() + static_cast<std::ptrdiff_t>(r * cols));
    const FieldElement inv = f.inv(a[r * cols + c]);
    for (std::size_t k = c; k < cols; ++k) a[r * cols + k] = f.mul(a[r * cols + k], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const FieldElement factor = a[i * cols + c];
      if (factor == 0) continue;
      for (std::size_t k = c; k < cols; ++k)
        a[i * cols + k] = f.sub(a[i * cols + k], f.mul(factor, a[r * cols + k]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

void require_compatible(const Subspace& u, const Subspace& v) {
  if (!(u.field() == v.field()))
    throw DimensionMismatch("subspaces over GF(" + std::to_string(u.field().modulus()) + ") and GF(" +
                            std::to_string(v.field().modulus()) + ")");
  if (u.ambient_dim() != v.ambient_dim())
    throw DimensionMismatch("subspaces of ambient dimension " + std::to_string(u.ambient_dim()) +
                            " and " + std::to_string(v.ambient_dim()));
}

}  // namespace

RrefResult rref_rank(const PrimeFieldMatrix& m) {
  std::vector<FieldElement> buf = m.entries();
  auto pivots = reduce_rows(m.field(), buf, m.rows(), m.cols());
  std::vector<std::int64_t> wide(buf.begin(), buf.end());
  PrimeFieldMatrix out(m.field(), m.rows(), m.cols(), wide);
  const std::size_t r = pivots.size();
  return {std::move(out), r, std::move(pivots)};
}

std::size_t rank(const PrimeFieldMatrix& m) {
  std::vector<FieldElement> buf = m.entries();
  return reduce_rows(m.field(), buf, m.rows(), m.cols()).size();
}

// ---------------------------------------------------------------------------
// Subspace

Subspace Subspace::span(const PrimeFieldMatrix& generators) {
  std::vector<FieldElement> buf = generators.entries();
  const std::size_t cols = generators.cols();
  const std::size_t r = reduce_rows(generators.field(), buf, generators.rows(), cols).size();
  PrimeFieldMatrix basis(generators.field(), 0, cols);
  for (std::size_t i = 0; i < r; ++i) basis.append_row(std::span(buf).subspan(i * cols, cols));
  return Subspace(std::move(basis));
}

Subspace Subspace::zero(PrimeField field, std::size_t ambient_dim) {
  return Subspace(PrimeFieldMatrix(field, 0, ambient_dim));
}

Subspace Subspace::whole(PrimeField field, std::size_t ambient_dim) {
  return Subspace(PrimeFieldMatrix::identity(field, ambient_dim));
}

Subspace Subspace::of_vector(PrimeField field, std::span<const std::int64_t> v) {
  return span(PrimeFieldMatrix(field, 1, v.size(), v));
}

bool Subspace::contains(std::span<const FieldElement> v) const {
  if (v.size() != ambient_dim()) throw DimensionMismatch("vector length differs from ambient dimension");
  // Reduce v against the RREF basis: pivots are the leading ones.
  const auto& f = field();
  std::vector<FieldElement> w(v.begin(), v.end());
  for (auto& x : w) x %= f.modulus();
  for (std::size_t r = 0; r < basis_.rows(); ++r) {
    auto row = basis_.row(r);
    std::size_t pivot = 0;
    while (row[pivot] == 0) ++pivot;
    const FieldElement factor = w[pivot];
    if (factor == 0) continue;
    for (std::size_t k = pivot; k < w.size(); ++k) w[k] = f.sub(w[k], f.mul(factor, row[k]));
  }
  return std::all_of(w.begin(), w.end(), [](FieldElement x) { return x == 0; });
}

bool Subspace::contains(const Subspace& other) const {
  require_compatible(*this, other);
  for (std::size_t r = 0; r < other.dim(); ++r)
    if (!contains(other.basis().row(r))) return false;
  return true;
}

Subspace kernel_basis(const PrimeFieldMatrix& m) {
  const auto& f = m.field();
  const std::size_t n = m.cols();
  auto red = rref_rank(m);
  std::vector<bool> is_pivot(n, false);
  for (auto c : red.pivot_cols) is_pivot[c] = true;
  PrimeFieldMatrix gens(f, 0, n);
  std::vector<FieldElement> v(n);
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::fill(v.begin(), v.end(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < red.rank; ++i) v[red.pivot_cols[i]] = f.neg(red.rref.at(i, free));
    gens.append_row(v);
  }
  return Subspace::span(gens);
}

Subspace subspace_sum(std::span<const Subspace> us) {
  if (us.empty()) throw InvalidArgument("sum of an empty list of subspaces");
  PrimeFieldMatrix gens = us.front().basis();
  for (std::size_t i = 1; i < us.size(); ++i) {
    require_compatible(us.front(), us[i]);
    gens = gens.stack(us[i].basis());
  }
  return Subspace::span(gens);
}

Subspace subspace_sum(const Subspace& u, const Subspace& v) {
  require_compatible(u, v);
  return Subspace::span(u.basis().stack(v.basis()));
}

Subspace subspace_intersect(const Subspace& u, const Subspace& v) {
  require_compatible(u, v);
  const auto& f = u.field();
  const std::size_t d = u.ambient_dim();
  if (u.dim() == 0 || v.dim() == 0) return Subspace::zero(f, d);
  // (x, y) . [Bu; Bv] = 0  <=>  x Bu = -y Bv, so x Bu spans the intersection.
  auto stacked = u.basis().stack(v.basis());
  auto left_kernel = kernel_basis(stacked.transpose());
  PrimeFieldMatrix gens(f, 0, d);
  std::vector<FieldElement> w(d);
  for (std::size_t r = 0; r < left_kernel.dim(); ++r) {
    auto z = left_kernel.basis().row(r);
    std::fill(w.begin(), w.end(), 0);
    for (std::size_t i = 0; i < u.dim(); ++i) {
      if (z[i] == 0) continue;
      auto row = u.basis().row(i);
      for (std::size_t k = 0; k < d; ++k) w[k] = f.add(w[k], f.mul(z[i], row[k]));
    }
    gens.append_row(w);
  }
  return Subspace::span(gens);
}

Subspace subspace_intersect_all(std::span<const Subspace> us) {
  if (us.empty()) throw InvalidArgument("intersection of an empty list of subspaces");
  Subspace acc = us.front();
  for (std::size_t i = 1; i < us.size(); ++i) acc = subspace_intersect(acc, us[i]);
  return acc;
}

std::optional<std::vector<FieldElement>> solve_left(const PrimeFieldMatrix& generators,
                                                    std::span<const FieldElement> v) {
  const auto& f = generators.field();
  const std::size_t k = generators.rows();
  const std::size_t d = generators.cols();
  if (v.size() != d) throw DimensionMismatch("right-hand side length differs from generator width");
  // Augmented [G^T | v^T], d rows by k + 1 columns.
  std::vector<FieldElement> a(d * (k + 1));
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < k; ++c) a[r * (k + 1) + c] = generators.at(c, r);
    a[r * (k + 1) + k] = v[r] % f.modulus();
  }
  auto pivots = reduce_rows(f, a, d, k + 1);
  if (!pivots.empty() && pivots.back() == k) return std::nullopt;
  std::vector<FieldElement> lambda(k, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) lambda[pivots[i]] = a[i * (k + 1) + k];
  return lambda;
}

// ---------------------------------------------------------------------------
// Complementary tuples

namespace {

std::size_t dim_of_sum(std::span<const Subspace> us) {
  if (us.empty()) return 0;
  return subspace_sum(us).dim();
}

// Concatenated bases plus the block boundaries of each part.
struct StackedBasis {
  PrimeFieldMatrix generators;
  std::vector<std::size_t> offsets;  // size parts + 1
};

StackedBasis stack_bases(std::span<const Subspace> parts, const PrimeField& f, std::size_t d) {
  StackedBasis s{PrimeFieldMatrix(f, 0, d), {0}};
  for (const auto& a : parts) {
    s.generators = s.generators.stack(a.basis());
    s.offsets.push_back(s.generators.rows());
  }
  return s;
}

// Splits v = sum_i v_i with v_i in part i, using the stacked generators.
std::optional<std::vector<std::vector<FieldElement>>> decompose(const StackedBasis& s,
                                                                std::span<const FieldElement> v) {
  auto lambda = solve_left(s.generators, v);
  if (!lambda) return std::nullopt;
  const auto& f = s.generators.field();
  const std::size_t d = s.generators.cols();
  std::vector<std::vector<FieldElement>> comps(s.offsets.size() - 1, std::vector<FieldElement>(d, 0));
  for (std::size_t part = 0; part + 1 < s.offsets.size(); ++part)
    for (std::size_t r = s.offsets[part]; r < s.offsets[part + 1]; ++r) {
      if ((*lambda)[r] == 0) continue;
      auto row = s.generators.row(r);
      for (std::size_t k = 0; k < d; ++k) comps[part][k] = f.add(comps[part][k], f.mul((*lambda)[r], row[k]));
    }
  return comps;
}

}  // namespace

std::optional<std::string> ComplementaryTuple::check(std::span<const Subspace> parts, const Subspace& extra) {
  for (const auto& a : parts) require_compatible(a, extra);
  std::size_t total = 0;
  for (const auto& a : parts) total += a.dim();
  if (dim_of_sum(parts) != total) return "sum of the parts is not direct";
  if (!parts.empty() && !subspace_sum(parts).contains(extra)) return "extra subspace is not inside the sum of the parts";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::vector<Subspace> swapped(parts.begin(), parts.end());
    swapped[i] = extra;
    if (dim_of_sum(swapped) != total - parts[i].dim() + extra.dim())
      return "sum is not direct after replacing part " + std::to_string(i + 1) + " by the extra subspace";
  }
  return std::nullopt;
}

ComplementaryTuple::ComplementaryTuple(std::vector<Subspace> parts, Subspace extra)
    : parts_(std::move(parts)), extra_(std::move(extra)) {
  if (auto why = check(parts_, extra_)) throw InvalidTuple(*why);
}

Subspace project_component(const ComplementaryTuple& t, std::span<const std::size_t> idx_set) {
  const auto& c = t.extra();
  const auto& f = c.field();
  const std::size_t d = c.ambient_dim();
  std::vector<bool> keep(t.parts().size(), false);
  for (auto i : idx_set) {
    if (i >= keep.size()) throw InvalidArgument("projection index " + std::to_string(i) + " out of range");
    keep[i] = true;
  }
  auto stacked = stack_bases(t.parts(), f, d);
  PrimeFieldMatrix image(f, 0, d);
  std::vector<FieldElement> w(d);
  for (std::size_t r = 0; r < c.dim(); ++r) {
    auto comps = decompose(stacked, c.basis().row(r));
    if (!comps) throw InvalidTuple("extra subspace is not inside the sum of the parts");
    std::fill(w.begin(), w.end(), 0);
    for (std::size_t part = 0; part < keep.size(); ++part)
      if (keep[part])
        for (std::size_t k = 0; k < d; ++k) w[k] = f.add(w[k], (*comps)[part][k]);
    image.append_row(w);
  }
  return Subspace::span(image);
}

std::vector<Subspace> complementary_refinement(std::span<const Subspace> parts, const Subspace& c) {
  if (parts.empty()) throw InvalidArgument("complementary refinement needs at least one part");
  for (const auto& a : parts) require_compatible(a, c);
  const auto& f = c.field();
  const std::size_t d = c.ambient_dim();
  if (!subspace_sum(parts).contains(c))
    throw PreconditionViolation("C is not contained in the sum of the parts", parts.size());
  for (std::size_t k = 0; k < parts.size(); ++k) {
    std::vector<Subspace> others;
    for (std::size_t i = 0; i < parts.size(); ++i)
      if (i != k) others.push_back(parts[i]);
    if (others.empty()) continue;
    if (subspace_intersect(c, subspace_sum(others)).dim() != 0)
      throw PreconditionViolation("C meets the sum of the parts other than " + std::to_string(k + 1), k);
  }
  auto stacked = stack_bases(parts, f, d);
  std::vector<PrimeFieldMatrix> gens(parts.size(), PrimeFieldMatrix(f, 0, d));
  for (std::size_t r = 0; r < c.dim(); ++r) {
    auto comps = decompose(stacked, c.basis().row(r));
    for (std::size_t i = 0; i < parts.size(); ++i) gens[i].append_row((*comps)[i]);
  }
  std::vector<Subspace> out;
  out.reserve(parts.size());
  for (const auto& g : gens) out.push_back(Subspace::span(g));
  return out;
}

// ---------------------------------------------------------------------------
// Text format

PrimeFieldMatrix read_matrix_text(std::istream& in) {
  std::string line;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      auto pos = line.find_first_not_of(" \t\r");
      if (pos == std::string::npos || line[pos] == '#') continue;
      return true;
    }
    return false;
  };
  if (!next_line()) throw ParseError("matrix text: missing header line 'p rows cols'");
  std::istringstream header(line);
  long long p = 0, rows = -1, cols = -1;
  std::string extra;
  if (!(header >> p >> rows >> cols) || (header >> extra) || rows < 0 || cols < 0 || p < 2)
    throw ParseError("matrix text: malformed header '" + line + "'");
  PrimeField f = [&] {
    try {
      return PrimeField(static_cast<std::uint32_t>(p));
    } catch (const InvalidArgument& e) {
      throw ParseError(std::string("matrix text: ") + e.what());
    }
  }();
  PrimeFieldMatrix m(f, static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  if (cols == 0) return m;
  for (long long r = 0; r < rows; ++r) {
    if (!next_line()) throw ParseError("matrix text: expected " + std::to_string(rows) + " rows");
    std::istringstream row(line);
    for (long long c = 0; c < cols; ++c) {
      long long v;
      if (!(row >> v)) throw ParseError("matrix text: row " + std::to_string(r + 1) + " is too short");
      m.set(static_cast<std::size_t>(r), static_cast<std::size_t>(c), v);
    }
    if (row >> extra) throw ParseError("matrix text: row " + std::to_string(r + 1) + " is too long");
  }
  return m;
}

void write_matrix_text(std::ostream& out, const PrimeFieldMatrix& m) {
  out << m.field().modulus() << ' ' << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? " " : "") << m.at(r, c);
    out << '\n';
  }
}

}  // namespace rankineq

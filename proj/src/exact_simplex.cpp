#include "rankineq/exact_simplex.hpp"

#include "rankineq/errors.hpp"

namespace rankineq {

const char* to_string(SimplexStatus s) {
  switch (s) {
    case SimplexStatus::optimal: return "optimal";
    case SimplexStatus::infeasible: return "infeasible";
    case SimplexStatus::unbounded: return "unbounded";
    case SimplexStatus::pivot_limit: return "pivot_limit";
  }
  return "?";
}

namespace {

class RevisedSimplex {
 public:
  RevisedSimplex(const StandardFormLp& lp, const SimplexOptions& options)
      : m_(lp.rows), n_(lp.columns.size()), options_(options), sign_(m_, 1) {
    for (std::size_t i = 0; i < m_; ++i)
      if (sgn(lp.rhs[i]) < 0) sign_[i] = -1;
    cols_.reserve(n_ + m_);
    for (const auto& col : lp.columns) {
      SparseColumn flipped;
      for (const auto& [row, value] : col) {
        if (row >= m_) throw ShapeError("column entry outside the row range");
        if (sgn(value) != 0) flipped.emplace_back(row, sign_[row] < 0 ? Rational(-value) : value);
      }
      cols_.push_back(std::move(flipped));
    }
    for (std::size_t i = 0; i < m_; ++i) cols_.push_back({{i, Rational(1)}});

    binv_.assign(m_ * m_, Rational(0));
    basis_.resize(m_);
    xb_.resize(m_);
    is_basic_.assign(n_ + m_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
      binv_[i * m_ + i] = 1;
      basis_[i] = n_ + i;
      is_basic_[n_ + i] = 1;
      xb_[i] = sign_[i] < 0 ? Rational(-lp.rhs[i]) : lp.rhs[i];
    }
  }

  SimplexResult run(const StandardFormLp& lp) {
    SimplexResult res;
    // Phase 1: minimize the sum of artificials.
    cost_.assign(n_ + m_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i) cost_[n_ + i] = 1;
    recompute_multipliers();
    auto st = iterate(/*allow_artificial=*/true);
    res.pivots = pivots_;
    if (st == SimplexStatus::pivot_limit) return finish(res, st, lp);
    Rational infeasibility = 0;
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] >= n_) infeasibility += xb_[i];
    if (sgn(infeasibility) > 0) return finish(res, SimplexStatus::infeasible, lp);

    drive_out_artificials();

    cost_.assign(n_ + m_, Rational(0));
    for (std::size_t j = 0; j < n_; ++j) cost_[j] = lp.cost[j];
    recompute_multipliers();
    st = iterate(/*allow_artificial=*/false);
    return finish(res, st, lp);
  }

 private:
  Rational& binv(std::size_t r, std::size_t c) { return binv_[r * m_ + c]; }

  void recompute_multipliers() {
    pi_.assign(m_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i) {
      const auto& cb = cost_[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t c = 0; c < m_; ++c) {
        const auto& v = binv_[i * m_ + c];
        if (sgn(v) != 0) pi_[c] += cb * v;
      }
    }
  }

  Rational reduced_cost(std::size_t j) const {
    Rational r = cost_[j];
    for (const auto& [row, value] : cols_[j]) r -= pi_[row] * value;
    return r;
  }

  std::vector<Rational> direction(std::size_t j) const {
    std::vector<Rational> d(m_, Rational(0));
    for (const auto& [row, value] : cols_[j])
      for (std::size_t i = 0; i < m_; ++i) {
        const auto& b = binv_[i * m_ + row];
        if (sgn(b) != 0) d[i] += b * value;
      }
    return d;
  }

  SimplexStatus iterate(bool allow_artificial) {
    const std::size_t limit = allow_artificial ? n_ + m_ : n_;
    for (;;) {
      if (options_.max_pivots && pivots_ >= options_.max_pivots) return SimplexStatus::pivot_limit;
      std::size_t q = limit;
      Rational rq;
      for (std::size_t j = 0; j < limit; ++j) {
        if (is_basic_[j]) continue;
        rq = reduced_cost(j);
        if (sgn(rq) < 0) {
          q = j;
          break;
        }
      }
      if (q == limit) return SimplexStatus::optimal;
      auto d = direction(q);
      std::size_t r = m_;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (sgn(d[i]) <= 0) continue;
        Rational ratio = xb_[i] / d[i];
        if (r == m_ || ratio < best || (ratio == best && basis_[i] < basis_[r])) {
          r = i;
          best = std::move(ratio);
        }
      }
      if (r == m_) return SimplexStatus::unbounded;
      pivot(r, q, d, &rq);
    }
  }

  void pivot(std::size_t r, std::size_t q, const std::vector<Rational>& d, const Rational* rq) {
    std::vector<std::size_t> nz;
    for (std::size_t c = 0; c < m_; ++c)
      if (sgn(binv(r, c)) != 0) nz.push_back(c);
    if (rq) {
      Rational f = *rq / d[r];
      for (auto c : nz) pi_[c] += f * binv(r, c);
    }
    Rational theta = xb_[r] / d[r];
    if (sgn(theta) != 0)
      for (std::size_t i = 0; i < m_; ++i)
        if (i != r && sgn(d[i]) != 0) xb_[i] -= theta * d[i];
    xb_[r] = theta;

    Rational inv = 1 / d[r];
    for (auto c : nz) binv(r, c) *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || sgn(d[i]) == 0) continue;
      for (auto c : nz) binv(i, c) -= d[i] * binv(r, c);
    }
    is_basic_[basis_[r]] = 0;
    is_basic_[q] = 1;
    basis_[r] = q;
    ++pivots_;
  }

  // Degenerate pivots replacing basic artificials (all at zero level) by
  // structural columns; rows where none qualifies are redundant and keep
  // their artificial, which no structural direction can move.
  void drive_out_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < n_) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (is_basic_[j]) continue;
        Rational entry = 0;
        for (const auto& [row, value] : cols_[j]) entry += binv(r, row) * value;
        if (sgn(entry) == 0) continue;
        pivot(r, j, direction(j), nullptr);
        break;
      }
    }
  }

  SimplexResult& finish(SimplexResult& res, SimplexStatus st, const StandardFormLp& lp) {
    res.status = st;
    res.pivots = pivots_;
    if (st != SimplexStatus::optimal) return res;
    res.x.assign(n_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) res.x[basis_[i]] = xb_[i];
    res.objective = 0;
    for (std::size_t j = 0; j < n_; ++j)
      if (sgn(res.x[j]) != 0) res.objective += lp.cost[j] * res.x[j];
    res.multipliers.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) res.multipliers[i] = sign_[i] < 0 ? Rational(-pi_[i]) : pi_[i];
    return res;
  }

  std::size_t m_, n_;
  SimplexOptions options_;
  std::vector<int> sign_;
  std::vector<SparseColumn> cols_;
  std::vector<Rational> cost_;
  std::vector<Rational> binv_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> xb_;
  std::vector<char> is_basic_;
  std::vector<Rational> pi_;
  std::size_t pivots_ = 0;
};

}  // namespace

SimplexResult solve_standard_form(const StandardFormLp& lp, const SimplexOptions& options) {
  if (lp.rhs.size() != lp.rows) throw ShapeError("rhs length differs from the row count");
  if (lp.cost.size() != lp.columns.size()) throw ShapeError("cost length differs from the column count");
  RevisedSimplex solver(lp, options);
  return solver.run(lp);
}

}  // namespace rankineq

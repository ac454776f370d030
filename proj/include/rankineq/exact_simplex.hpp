#pragma once

// Two-phase revised simplex over the rationals for
//   minimize c.x  subject to  A x = b,  x >= 0
// with Bland's smallest-index rule. The basis inverse is kept explicitly
// (dense storage, sparse updates), which suits the few-hundred-row programs
// this library produces.

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "rankineq/rational.hpp"

namespace rankineq {

using SparseColumn = std::vector<std::pair<std::size_t, Rational>>;

struct StandardFormLp {
  std::size_t rows = 0;
  std::vector<SparseColumn> columns;  // A, column-major
  std::vector<Rational> rhs;          // b
  std::vector<Rational> cost;         // c
};

enum class SimplexStatus { optimal, infeasible, unbounded, pivot_limit };

const char* to_string(SimplexStatus s);

struct SimplexResult {
  SimplexStatus status = SimplexStatus::infeasible;
  Rational objective;
  std::vector<Rational> x;
  // y with y.A_j <= c_j for every column (equality on basic columns); at an
  // optimum b.y equals the objective.
  std::vector<Rational> multipliers;
  std::size_t pivots = 0;
};

struct SimplexOptions {
  std::size_t max_pivots = 0;  // 0: no limit
};

// Throws ShapeError for inconsistent dimensions.
SimplexResult solve_standard_form(const StandardFormLp& lp, const SimplexOptions& options = {});

}  // namespace rankineq

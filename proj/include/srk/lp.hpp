#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

namespace srk {

/// Optimum of the covering program
///   minimize sum_j c_j  subject to  A c >= 1, c >= 0
/// together with the dual packing solution y (A^T y <= 1, y >= 0).
struct CoveringSolution {
  mpq_class value;
  std::vector<mpq_class> primal;  // c, length n
  std::vector<mpq_class> dual;    // y, length rows
  std::vector<std::size_t> tight;  // rows with (A c)_i == 1
};

/// Exact rational simplex on the dual packing program, which is feasible at
/// the origin; Bland's rule prevents cycling. Every row must have a positive
/// entry. The primal solution is read off the slack prices and re-checked.
CoveringSolution solve_covering_lp(const std::vector<std::vector<mpq_class>>& A, std::size_t n);

}  // namespace srk

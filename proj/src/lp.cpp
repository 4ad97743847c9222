#include "srk/lp.hpp"

#include <string>

#include "srk/errors.hpp"

namespace srk {

CoveringSolution solve_covering_lp(const std::vector<std::vector<mpq_class>>& A, std::size_t n) {
  const std::size_t m = A.size();
  if (m == 0) fail(ErrorCode::InvalidArgument, "covering program without constraints");
  for (const auto& row : A) {
    if (row.size() != n) fail(ErrorCode::DimensionMismatch, "constraint row length");
    bool positive = false;
    for (const auto& a : row) {
      if (a < 0) fail(ErrorCode::InvalidArgument, "covering constraints must be nonnegative");
      if (a > 0) positive = true;
    }
    if (!positive) fail(ErrorCode::InvalidArgument, "a constraint row is identically zero (program infeasible)");
  }

  // Dual: maximize sum y_i s.t. sum_i A[i][j] y_i + s_j = 1.
  // Columns 0..m-1 are y, m..m+n-1 are s; tableau rows are indexed by j.
  const std::size_t cols = m + n;
  std::vector<std::vector<mpq_class>> T(n, std::vector<mpq_class>(cols + 1));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) T[j][i] = A[i][j];
    T[j][m + j] = 1;
    T[j][cols] = 1;
  }
  // Reduced costs z_k - c_k; entering columns have negative values.
  std::vector<mpq_class> z(cols + 1);
  for (std::size_t i = 0; i < m; ++i) z[i] = -1;
  std::vector<std::size_t> basic(n);
  for (std::size_t j = 0; j < n; ++j) basic[j] = m + j;

  for (;;) {
    std::size_t enter = cols;
    for (std::size_t k = 0; k < cols; ++k)
      if (z[k] < 0) {
        enter = k;
        break;
      }
    if (enter == cols) break;

    std::size_t leave = n;
    mpq_class best;
    for (std::size_t r = 0; r < n; ++r) {
      if (T[r][enter] <= 0) continue;
      mpq_class ratio = T[r][cols] / T[r][enter];
      if (leave == n || ratio < best || (ratio == best && basic[r] < basic[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave == n) fail(ErrorCode::InternalError, "packing program unbounded; covering program infeasible");

    const mpq_class piv = T[leave][enter];
    for (auto& v : T[leave]) v /= piv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == leave || T[r][enter] == 0) continue;
      const mpq_class factor = T[r][enter];
      for (std::size_t k = 0; k <= cols; ++k)
        if (T[leave][k] != 0) T[r][k] -= factor * T[leave][k];
    }
    if (z[enter] != 0) {
      const mpq_class factor = z[enter];
      for (std::size_t k = 0; k <= cols; ++k)
        if (T[leave][k] != 0) z[k] -= factor * T[leave][k];
    }
    basic[leave] = enter;
  }

  CoveringSolution sol;
  sol.value = z[cols];
  sol.dual.assign(m, 0);
  for (std::size_t r = 0; r < n; ++r)
    if (basic[r] < m) sol.dual[basic[r]] = T[r][cols];
  sol.primal.resize(n);
  for (std::size_t j = 0; j < n; ++j) sol.primal[j] = z[m + j];

  // Certificate check: primal feasibility and equal objective values.
  mpq_class psum = 0, dsum = 0;
  for (const auto& c : sol.primal) {
    if (c < 0) fail(ErrorCode::InternalError, "negative primal weight at the optimum");
    psum += c;
  }
  for (const auto& y : sol.dual) dsum += y;
  for (std::size_t i = 0; i < m; ++i) {
    mpq_class lhs = 0;
    for (std::size_t j = 0; j < n; ++j) lhs += A[i][j] * sol.primal[j];
    if (lhs < 1) fail(ErrorCode::InternalError, "recovered weights violate constraint " + std::to_string(i));
    if (lhs == 1) sol.tight.push_back(i);
  }
  if (psum != sol.value || dsum != sol.value) fail(ErrorCode::InternalError, "primal and dual objectives disagree");
  return sol;
}

}  // namespace srk

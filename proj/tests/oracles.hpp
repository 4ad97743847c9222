#pragma once

// Brute-force reference implementations used as test oracles. They share no
// code with the library beyond field arithmetic and matrix rank.

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include <gmpxx.h>

#include "srk/linalg.hpp"
#include "srk/parse.hpp"
#include "srk/poly.hpp"

namespace oracle {

using namespace srk;

inline HomPoly P(const std::string& text, const Field& F, const std::vector<std::string>& vars) {
  return parse_polynomial(text, F, vars).poly;
}

/// Every vector of F^n in lexicographic code order.
inline std::vector<Vector> all_vectors(const Field& F, std::size_t n) {
  std::vector<Vector> out;
  const std::uint64_t q = F.order();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= q;
  for (std::uint64_t c = 0; c < total; ++c) {
    Vector v(n, F.zero());
    std::uint64_t x = c;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = F.from_code(x % q);
      x /= q;
    }
    out.push_back(std::move(v));
  }
  return out;
}

inline std::vector<std::uint64_t> codes(const Vector& v) {
  std::vector<std::uint64_t> c;
  for (const auto& x : v) c.push_back(x.code());
  return c;
}

/// The set of all vectors of a subspace, by enumerating coefficient combinations.
inline std::set<std::vector<std::uint64_t>> members(const Subspace& S) {
  std::set<std::vector<std::uint64_t>> out;
  const Field& F = S.field();
  for (const auto& coeffs : all_vectors(F, S.dim())) {
    Vector v(S.ambient(), F.zero());
    for (std::size_t i = 0; i < S.dim(); ++i)
      for (std::size_t j = 0; j < S.ambient(); ++j) v[j] += coeffs[i] * S.basis()(i, j);
    out.insert(codes(v));
  }
  return out;
}

/// Polynomial product of a linear form and a monomial, computed term by term.
inline Vector product_row(const Vector& l, const Monomial& m, const MonomialBasis& target) {
  const Field F = l[0].field();
  Vector row(target.size(), F.zero());
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (l[i].is_zero()) continue;
    Monomial e = m;
    ++e[i];
    row[target.index_of(e)] += l[i];
  }
  return row;
}

/// f lies in the ideal generated by the given linear forms: compare ranks of
/// the span of {l * m} with and without f.
inline bool in_ideal_bruteforce(const HomPoly& f, const std::vector<Vector>& forms) {
  const Field& F = f.field();
  const MonomialBasis target(f.n_vars(), f.degree());
  const MonomialBasis lower(f.n_vars(), f.degree() - 1);
  std::vector<Vector> rows;
  for (const auto& l : forms)
    for (const auto& m : lower.monomials()) rows.push_back(product_row(l, m, target));
  if (rows.empty()) return f.is_zero();
  const std::size_t r0 = rank(Matrix::from_rows(F, target.size(), rows));
  rows.push_back(f.coefficients(target));
  return rank(Matrix::from_rows(F, target.size(), rows)) == r0;
}

/// Slice rank by trying every r-subset of nonzero linear forms, r = 0, 1, ...
inline unsigned srk_bruteforce(const HomPoly& f) {
  if (f.is_zero()) return 0;
  const Field& F = f.field();
  std::vector<Vector> forms;
  for (auto& v : all_vectors(F, f.n_vars())) {
    bool nz = false;
    for (auto& x : v) nz = nz || !x.is_zero();
    if (nz) forms.push_back(v);
  }
  for (unsigned r = 1; r <= f.n_vars(); ++r) {
    std::vector<std::size_t> idx(r);
    std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t from) -> bool {
      if (pos == r) {
        std::vector<Vector> chosen;
        for (auto i : idx) chosen.push_back(forms[i]);
        return in_ideal_bruteforce(f, chosen);
      }
      for (std::size_t i = from; i < forms.size(); ++i) {
        idx[pos] = i;
        if (rec(pos + 1, i + 1)) return true;
      }
      return false;
    };
    if (rec(0, 0)) return r;
  }
  return static_cast<unsigned>(f.n_vars());
}

/// Solves a square rational system; nullopt if singular.
inline std::optional<std::vector<mpq_class>> solve(std::vector<std::vector<mpq_class>> M, std::vector<mpq_class> b) {
  const std::size_t n = M.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && M[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(M[p], M[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || M[r][c] == 0) continue;
      const mpq_class k = M[r][c] / M[c][c];
      for (std::size_t j = c; j < n; ++j) M[r][j] -= k * M[c][j];
      b[r] -= k * b[c];
    }
  }
  std::vector<mpq_class> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / M[i][i];
  return x;
}

/// min sum c subject to A c >= 1, c >= 0, by enumerating every vertex: choose
/// n active constraints among the rows of A and the bounds c_j = 0.
inline mpq_class covering_vertex_enum(const std::vector<std::vector<mpq_class>>& A, std::size_t n) {
  std::vector<std::vector<mpq_class>> rows;
  std::vector<mpq_class> rhs;
  for (const auto& a : A) {
    rows.push_back(a);
    rhs.push_back(1);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<mpq_class> e(n, 0);
    e[j] = 1;
    rows.push_back(e);
    rhs.push_back(0);
  }
  std::optional<mpq_class> best;
  std::vector<std::size_t> pick(n);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t from) {
    if (pos == n) {
      std::vector<std::vector<mpq_class>> M;
      std::vector<mpq_class> b;
      for (auto i : pick) {
        M.push_back(rows[i]);
        b.push_back(rhs[i]);
      }
      auto x = solve(M, b);
      if (!x) return;
      for (const auto& v : *x)
        if (v < 0) return;
      for (const auto& a : A) {
        mpq_class s = 0;
        for (std::size_t j = 0; j < n; ++j) s += a[j] * (*x)[j];
        if (s < 1) return;
      }
      mpq_class obj = 0;
      for (const auto& v : *x) obj += v;
      if (!best || obj < *best) best = obj;
      return;
    }
    for (std::size_t i = from; i < rows.size(); ++i) {
      pick[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
  return *best;
}

/// d times the covering optimum over the support of f.
inline mpq_class trank_oracle(const HomPoly& f) {
  std::vector<std::vector<mpq_class>> A;
  for (const auto& t : f.terms()) {
    std::vector<mpq_class> row;
    for (auto e : t.exponents) row.push_back(e);
    A.push_back(row);
  }
  return mpq_class(f.degree()) * covering_vertex_enum(A, f.n_vars());
}

}  // namespace oracle

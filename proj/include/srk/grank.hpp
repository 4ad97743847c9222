#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "srk/linalg.hpp"
#include "srk/poly.hpp"
#include "srk/slicerank.hpp"

namespace srk {

/// Truncated power series a_0 + a_1 t + ... + a_{N-1} t^{N-1}.
using Series = std::vector<FieldElement>;

/// n x n matrix of power series truncated at order N (exclusive).
class PSMatrix {
 public:
  PSMatrix(Field F, std::size_t n, unsigned N);
  /// diag(t^{c_1}, ..., t^{c_n}).
  static PSMatrix diagonal(Field F, const std::vector<unsigned>& exponents, unsigned N);
  /// A constant matrix viewed as series.
  static PSMatrix constant(const Matrix& A, unsigned N);

  const Field& field() const { return field_; }
  std::size_t size() const { return n_; }
  unsigned truncation() const { return N_; }
  Series& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  const Series& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

 private:
  Field field_;
  std::size_t n_;
  unsigned N_;
  std::vector<Series> entries_;
};

/// Valuation of a truncated series; nullopt when it is zero up to the truncation.
std::optional<unsigned> series_valuation(const Series& s);

/// Valuation of det g.
unsigned det_valuation(const PSMatrix& g);

/// mu(g, f) = d * val(det g) / val(g . f), where g sends e_j to sum_i g_ij e_i.
mpq_class mu_eval(const PSMatrix& g, const HomPoly& f);
/// Collection form with the wedge valuation and factor d * s.
mpq_class mu_eval(const PSMatrix& g, const std::vector<HomPoly>& fs, std::uint64_t minor_cap = 1'000'000);

/// mu for g = diag(t^{c_i}) computed from the support: d * sum c / min a.c.
mpq_class mu_diagonal(const HomPoly& f, const std::vector<unsigned>& c);

struct TRankResult {
  mpq_class value;
  std::vector<mpq_class> rational_weights;
  std::vector<mpz_class> weights;          // rational weights scaled to coprime integers
  std::vector<Monomial> tight_support;     // constraint exponent vectors met with equality
  std::size_t constraints = 0;
};

/// Exact T-rank in the given coordinates.
TRankResult trank(const HomPoly& f);
/// T-rank of the wedge f_1 ^ ... ^ f_s.
TRankResult trank_collection(const std::vector<HomPoly>& fs, std::uint64_t minor_cap = 1'000'000);

struct GRankBracket {
  mpq_class lower;
  mpq_class upper;
  Matrix basis_change;  // A with trank(f(A y)) == upper, or the slicing-adapted change
  TRankResult best;
  Subspace slicing_witness;
  int best_trial = -1;   // -1 when the slicing-adapted change wins
  unsigned trials = 0;
  std::uint64_t seed = 0;
};

/// srk(f) <= r^G(f) <= upper, with upper the least T-rank found over the
/// slicing-adapted coordinates, the identity (trial 0) and trials-1 seeded
/// random invertible changes of variables, capped by d * srk(f).
GRankBracket grank_bracket(const HomPoly& f, unsigned trials, std::uint64_t seed, const ScanOptions& opts = {});

/// An invertible matrix whose first rows are the canonical basis of P,
/// completed by standard basis vectors.
Matrix complete_basis(const Subspace& P);

/// Compares trank(f^m) with trank(f).
bool power_invariance_check(const HomPoly& f, unsigned m);

/// Uniformly random invertible n x n matrix over a finite field (rejection sampling).
template <class Rng>
Matrix random_invertible(const Field& F, std::size_t n, Rng& rng);

/// Uniform draw in [0, bound) from a 64-bit engine, identical on every platform.
template <class Rng>
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    const std::uint64_t v = rng();
    if (v < limit) return v % bound;
  }
}

template <class Rng>
Matrix random_invertible(const Field& F, std::size_t n, Rng& rng) {
  for (;;) {
    Matrix A(F, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) A(i, j) = F.from_code(uniform_below(rng, F.order()));
    if (rank(A) == n) return A;
  }
}

}  // namespace srk

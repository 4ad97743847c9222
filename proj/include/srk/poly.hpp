#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "srk/field.hpp"
#include "srk/linalg.hpp"

namespace srk {

using Monomial = std::vector<std::uint16_t>;

/// Graded reverse lexicographic comparison: true when a sorts above b.
bool grevlex_greater(const Monomial& a, const Monomial& b);

/// All exponent vectors of total degree m in n variables, grevlex-descending,
/// with O(log N) index lookup.
class MonomialBasis {
 public:
  MonomialBasis(std::size_t n_vars, unsigned degree);

  std::size_t n_vars() const { return n_; }
  unsigned degree() const { return degree_; }
  std::size_t size() const { return monomials_.size(); }
  const Monomial& operator[](std::size_t i) const { return monomials_[i]; }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  std::size_t index_of(const Monomial& m) const;

 private:
  std::size_t n_;
  unsigned degree_;
  std::vector<Monomial> monomials_;
  std::map<Monomial, std::size_t> index_;
};

std::uint64_t monomial_count(std::size_t n_vars, unsigned degree);

struct Term {
  Monomial exponents;
  FieldElement coeff;
};

/// Sparse homogeneous polynomial. Every stored coefficient is nonzero, every
/// exponent vector has total degree `degree()`, and terms are kept in
/// grevlex-descending order. The zero polynomial is the empty term list.
class HomPoly {
 public:
  HomPoly(Field F, std::size_t n_vars, unsigned degree);

  /// Collects like terms and drops zeros. Throws InhomogeneousInput when the
  /// exponent vectors disagree on total degree. With no terms, `degree` is used.
  static HomPoly normalize(Field F, std::size_t n_vars, std::vector<Term> raw, unsigned degree = 0);
  /// The monomial c * x^e.
  static HomPoly monomial(Field F, const Monomial& e, FieldElement c);
  /// The linear form sum coeffs[i] x_i.
  static HomPoly linear(Field F, const Vector& coeffs);
  /// Polynomial with the given coefficient vector in `basis` coordinates.
  static HomPoly from_coefficients(Field F, const MonomialBasis& basis, const Vector& coeffs);

  const Field& field() const { return field_; }
  std::size_t n_vars() const { return n_; }
  unsigned degree() const { return degree_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  FieldElement coefficient(const Monomial& e) const;
  /// Coefficients in the coordinates of `basis` (which must match n_vars and degree).
  Vector coefficients(const MonomialBasis& basis) const;
  /// Variables that occur in some term.
  std::vector<bool> support_variables() const;

  HomPoly operator-() const;
  HomPoly scaled(const FieldElement& c) const;
  /// Entrywise x -> x^{p^e} on the coefficients.
  HomPoly frobenius(unsigned e) const;

  friend HomPoly operator+(const HomPoly& a, const HomPoly& b);
  friend HomPoly operator-(const HomPoly& a, const HomPoly& b) { return a + (-b); }
  friend bool operator==(const HomPoly& a, const HomPoly& b);

  /// Text in the expression grammar accepted by parse_polynomial.
  std::string to_string(const std::vector<std::string>& vars) const;
  std::string to_string() const;

 private:
  Field field_;
  std::size_t n_;
  unsigned degree_;
  std::vector<Term> terms_;
};

std::vector<std::string> default_variable_names(std::size_t n);

HomPoly poly_normalize(Field F, std::size_t n_vars, std::vector<Term> raw);
HomPoly poly_mul(const HomPoly& f, const HomPoly& g);
HomPoly poly_pow(const HomPoly& f, unsigned m);
/// d/dx_i; the result has degree deg f - 1.
HomPoly partial_derivative(const HomPoly& f, std::size_t var);

/// f(A y): A has n_vars(f) rows and one column per new variable, so the old
/// variable x_i becomes sum_j A(i, j) y_j.
HomPoly substitute_linear(const HomPoly& f, const Matrix& A);

/// f restricted to the common zero set of the linear forms in P (a subspace
/// of the dual space). Coordinates on that zero set are the non-pivot
/// columns of P's RREF basis, so the result lives in n - dim P variables.
/// f lies in the ideal (P) iff the result is zero.
HomPoly restrict_to_annihilator(const HomPoly& f, const Subspace& P);
bool in_ideal_of(const HomPoly& f, const Subspace& P);

/// f restricted to L (a subspace of V), in the coordinates of L's basis.
HomPoly restrict_to_subspace(const HomPoly& f, const Subspace& L);
bool vanishes_on(const HomPoly& f, const Subspace& L);

/// Embeds the coefficients into `target` (an extension of f's field).
HomPoly base_change(const HomPoly& f, const Field& target);
/// Embeds into the default-modulus field with degree multiplied by e.
HomPoly base_change(const HomPoly& f, unsigned e);
/// Pulls coefficients back along `emb`; nullopt if some coefficient is outside the subfield.
std::optional<HomPoly> descend_coefficients(const HomPoly& f, const FieldEmbedding& emb);
/// Moves a subspace along `emb` (entrywise).
Subspace base_change(const Subspace& S, const FieldEmbedding& emb);
std::optional<Subspace> descend_subspace(const Subspace& S, const FieldEmbedding& emb);

/// Degree-m piece of an ideal, as a subspace of the coefficient space of
/// MonomialBasis(n_vars, degree).
struct GradedSubspace {
  std::size_t n_vars;
  unsigned degree;
  Subspace space;
};

/// Degree-m piece of (P_1)^{a_1} ∩ ... ∩ (P_s)^{a_s} for subspaces P_i of the dual space.
GradedSubspace ideal_graded_piece(const std::vector<std::pair<Subspace, unsigned>>& generators, unsigned m);
/// Degree-m piece of the ideal generated by arbitrary homogeneous polynomials of degree <= m.
GradedSubspace ideal_piece_generated(Field F, std::size_t n_vars, const std::vector<HomPoly>& generators,
                                     unsigned m);
GradedSubspace graded_intersect(const GradedSubspace& a, const GradedSubspace& b);
bool membership_in_graded(const HomPoly& f, const GradedSubspace& G);

}  // namespace srk

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "srk/errors.hpp"

namespace srk {

namespace detail {
struct FieldImpl;
}

class FieldElement;

/// Exact arithmetic over F_p, F_{p^m} and Q.
///
/// Fields are interned: two Field handles compare equal iff they describe the
/// same (p, m, modulus) triple, and the underlying tables live for the rest of
/// the program. Elements of F_{p^m} are stored as the integer code
/// c_0 + c_1 p + ... + c_{m-1} p^{m-1} of their residue modulo the modulus;
/// the generator class t is written `g` in text form.
class Field {
 public:
  /// Validates and interns a field. `p == 0` selects Q (then m must be 1).
  /// Without an explicit modulus the smallest monic irreducible of degree m
  /// is chosen, ordering candidates by the code of (c_0, ..., c_{m-1}).
  static Field make(std::uint64_t p, unsigned m = 1,
                    std::optional<std::vector<std::uint64_t>> modulus = std::nullopt);
  static Field rationals();
  /// Accepts "q"/"Q"/"0", "p", "p^m" and "p^m:c0,c1,...,cm".
  static Field parse(std::string_view spec);

  std::uint64_t characteristic() const;
  unsigned degree() const;
  bool is_finite() const;
  /// Number of elements; 0 for Q.
  std::uint64_t order() const;
  /// Modulus coefficients, low to high (monic, length degree()+1). Empty for Q.
  const std::vector<std::uint64_t>& modulus() const;
  /// Canonical spec string; the modulus is spelled out only when it differs
  /// from the default choice.
  std::string spec() const;

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_int(std::int64_t v) const;
  FieldElement from_code(std::uint64_t code) const;
  FieldElement from_coefficients(std::span<const std::uint64_t> coeffs) const;
  FieldElement from_rational(const mpq_class& q) const;
  /// The class of t in F_p[t]/(modulus); for prime fields this is the residue of t mod (t - c).
  FieldElement generator() const;
  /// All elements in code order. Throws InfiniteField for Q.
  std::vector<FieldElement> elements() const;

  // Code-level arithmetic for finite fields. No validation.
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t neg(std::uint64_t a) const;
  std::uint64_t inv(std::uint64_t a) const;
  std::uint64_t frobenius_code(std::uint64_t a, unsigned e) const;

  const detail::FieldImpl* impl() const { return impl_; }

  friend bool operator==(const Field& a, const Field& b) { return a.impl_ == b.impl_; }

 private:
  explicit Field(const detail::FieldImpl* impl) : impl_(impl) {}
  friend class FieldElement;
  const detail::FieldImpl* impl_ = nullptr;
};

/// A value in some Field. Default construction yields a detached zero that
/// only supports is_zero(); every other element knows its field.
class FieldElement {
 public:
  FieldElement() = default;

  Field field() const;
  bool attached() const { return field_ != nullptr; }
  bool is_zero() const;
  bool is_one() const;

  std::uint64_t code() const { return code_; }
  /// Valid only for elements of Q.
  const mpq_class& rational() const;
  /// Residue coefficients c_0..c_{m-1} (finite fields only).
  std::vector<std::uint64_t> coefficients() const;

  FieldElement inverse() const;
  FieldElement pow(std::uint64_t e) const;
  /// x -> x^{p^e}.
  FieldElement frobenius(unsigned e) const;

  std::string to_string() const;

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  friend bool operator==(const FieldElement& a, const FieldElement& b);

 private:
  friend class Field;
  FieldElement(const detail::FieldImpl* f, std::uint64_t code) : field_(f), code_(code) {}
  FieldElement(const detail::FieldImpl* f, std::shared_ptr<const mpq_class> q)
      : field_(f), rat_(std::move(q)) {}
  void check_same(const FieldElement& o) const;

  const detail::FieldImpl* field_ = nullptr;
  std::uint64_t code_ = 0;
  std::shared_ptr<const mpq_class> rat_;
};

enum class ArithOp { Add, Sub, Mul, Div };

FieldElement field_arith(const FieldElement& a, const FieldElement& b, ArithOp op);
/// a^{p^e}; applying it with e = 1 degree() times is the identity.
FieldElement frobenius(const FieldElement& a, unsigned e);
std::vector<FieldElement> enumerate_elements(const Field& F);

/// Embedding of F_{p^a} into F_{p^{ab}}: the generator of the small field is
/// sent to the smallest-code root of its modulus in the large field.
class FieldEmbedding {
 public:
  FieldEmbedding(const Field& small, const Field& big);

  const Field& source() const { return small_; }
  const Field& target() const { return big_; }
  /// Frobenius exponent e with the image equal to the fixed field of x -> x^{p^e}.
  unsigned subfield_exponent() const { return small_.degree(); }

  FieldElement map(const FieldElement& a) const;
  /// Inverse on the image; nullopt when `a` is outside the subfield.
  std::optional<FieldElement> pull(const FieldElement& a) const;

 private:
  Field small_;
  Field big_;
  std::vector<std::uint64_t> image_;  // indexed by small code
  std::unordered_map<std::uint64_t, std::uint64_t> preimage_;
};

bool is_prime(std::uint64_t n);

}  // namespace srk

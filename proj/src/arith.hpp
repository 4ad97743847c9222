#pragma once

// Raw arithmetic used by the dense kernels: codes for finite fields,
// mpq_class for Q.

#include <cstdint>

#include <gmpxx.h>

#include "srk/field.hpp"

namespace srk::detail {

struct FiniteArith {
  using T = std::uint64_t;
  Field F;
  T get(const FieldElement& a) const { return a.code(); }
  FieldElement put(T a) const { return F.from_code(a); }
  bool is_zero(T a) const { return a == 0; }
  T zero() const { return 0; }
  T one() const { return 1; }
  T add(T a, T b) const { return F.add(a, b); }
  T sub(T a, T b) const { return F.sub(a, b); }
  T mul(T a, T b) const { return F.mul(a, b); }
  T inv(T a) const { return F.inv(a); }
  T neg(T a) const { return F.neg(a); }
};

struct RationalArith {
  using T = mpq_class;
  Field F;
  T get(const FieldElement& a) const { return a.is_zero() ? mpq_class(0) : a.rational(); }
  FieldElement put(const T& a) const { return F.from_rational(a); }
  bool is_zero(const T& a) const { return a == 0; }
  T zero() const { return 0; }
  T one() const { return 1; }
  T add(const T& a, const T& b) const { return a + b; }
  T sub(const T& a, const T& b) const { return a - b; }
  T mul(const T& a, const T& b) const { return a * b; }
  T inv(const T& a) const { return 1 / a; }
  T neg(const T& a) const { return -a; }
};

template <class Fn>
decltype(auto) with_arith(const Field& F, Fn&& fn) {
  if (F.is_finite()) return fn(FiniteArith{F});
  return fn(RationalArith{F});
}

}  // namespace srk::detail

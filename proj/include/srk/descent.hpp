#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "srk/linalg.hpp"
#include "srk/poly.hpp"

namespace srk {

inline constexpr std::size_t kDefaultCollectionCap = 20;

/// Drops repeated subspaces, keeping first occurrences in order.
std::vector<Subspace> dedup_subspaces(const std::vector<Subspace>& in);

struct Refinement {
  std::vector<Subspace> input;                      // deduplicated
  std::vector<std::vector<std::size_t>> minimal_sets;  // indices into `input`
  std::vector<Subspace> output;                     // deduplicated, in discovery order
  Subspace total;                                   // span (or intersection, dual form) of the input
};

/// One refinement step: for every minimal J whose members span the span of
/// the whole collection, emit the intersection of the members of J.
/// Subsets are visited by increasing size; supersets of spanning sets are skipped.
Refinement refine_collection(const std::vector<Subspace>& L, std::size_t cap = kDefaultCollectionCap);
/// Same step on the dual side: sums and intersections swap roles.
Refinement refine_collection_dual(const std::vector<Subspace>& P, std::size_t cap = kDefaultCollectionCap);

struct DescentLevel {
  std::size_t collection_size = 0;
  std::vector<std::vector<std::size_t>> minimal_sets;
};

struct DescentCertificate {
  unsigned degree = 0;
  std::size_t r = 0;
  std::size_t orbit_size = 1;
  std::vector<Subspace> input;
  std::vector<DescentLevel> levels;
  std::vector<Subspace> final_collection;
  Subspace L0;
  std::size_t codim_L0 = 0;
  mpz_class bound;  // r^(2^(d-1))
  bool within_bound = false;
  bool rational = true;
  bool on_hypersurface = false;
  bool containment_checked = false;
};

/// r^(2^(d-1)).
mpz_class descent_bound(std::size_t r, unsigned d);

/// Iterates the refinement d-1 times and spans the result. The certificate
/// uses r = max(2, largest input codimension). Every input must lie on
/// f = 0. Under `strict`, failing containment or the bound throws
/// TheoremViolation.
DescentCertificate theorem_d_descent(const HomPoly& f, const std::vector<Subspace>& L, bool strict = true,
                                     std::size_t cap = kDefaultCollectionCap);
/// Polynomial-free variant: no containment checks.
DescentCertificate theorem_d_descent(const std::vector<Subspace>& L, unsigned d,
                                     std::size_t cap = kDefaultCollectionCap);

/// Distinct images of L under x -> x^{p^e}, starting with L itself.
std::vector<Subspace> frobenius_orbit(const Subspace& L, unsigned e);
/// True iff every entry of L's canonical basis lies in the fixed field of x -> x^{p^e}.
bool is_rational(const Subspace& L, unsigned e);

/// f over a field B, L a subspace of V over an extension of B on which f
/// vanishes. Descends the Galois orbit of L and returns L0 over B.
DescentCertificate galois_descent(const HomPoly& f, const Subspace& L, std::size_t cap = kDefaultCollectionCap);

struct FamilyDescent {
  HomPoly f0;                      // over the base field
  bool from_trace = true;
  std::size_t span_dim = 0;        // dimension of the span of the conjugates of f
  std::vector<unsigned> conjugates_used;
  Subspace P_sum;                  // sum of the used conjugates of L, dual side
  DescentCertificate certificate;  // L0 over the base field
};

/// f lies in the span of `family` over an extension E of `base` and f is in
/// the ideal (L) for a dual-side subspace L over E. Produces a base-field
/// polynomial f0 in the span of the conjugates of f together with a
/// base-field subspace on f0 = 0.
FamilyDescent family_descent(const std::vector<HomPoly>& family, const HomPoly& f, const Subspace& L,
                             const Field& base, std::size_t cap = kDefaultCollectionCap);

}  // namespace srk

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "srk/linalg.hpp"
#include "srk/poly.hpp"

namespace srk {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

struct ScanOptions {
  std::uint64_t budget = kDefaultBudget;  // membership tests per call
  unsigned threads = 1;
};

/// Exact rank or a bracket, with witnesses that re-verify by membership.
struct RankCertificate {
  enum class Kind { Exact, Bracket };
  Kind kind = Kind::Exact;
  mpq_class lower;
  mpq_class upper;
  std::optional<Subspace> witness;
  std::uint64_t transcript = 0;  // FNV-1a over the exhaustion record
  std::uint64_t tests_performed = 0;
};

struct SliceRankResult {
  unsigned rank = 0;
  Subspace witness;
  RankCertificate certificate;
  std::uint64_t tests_performed = 0;
};

/// Exhaustive slice rank over a finite field. The witness is the first
/// slicing subspace of minimal dimension in Grassmannian order.
SliceRankResult slice_rank(const HomPoly& f, const ScanOptions& opts = {});

struct SlicingScan {
  std::vector<Subspace> subspaces;
  std::uint64_t tests_performed = 0;
  std::uint64_t transcript = 0;
};

/// Every r-dimensional P in the dual space with f in (P), in enumeration order.
SlicingScan enumerate_slicing_subspaces(const HomPoly& f, unsigned r, const ScanOptions& opts = {});

struct SlicingConfig {
  unsigned rank = 0;
  std::vector<Subspace> subspaces;  // all of P_f
  Subspace sum_space;               // sum of P_f, dual side
  Subspace Lf;                      // its annihilator in V
  std::size_t codim_Lf = 0;
  std::uint64_t tests_performed = 0;
  std::uint64_t transcript = 0;
};

SlicingConfig compute_Lf(const HomPoly& f, const ScanOptions& opts = {});

/// Minimal W in the dual space with f in S(W).
Subspace essential_space(const HomPoly& f, const ScanOptions& opts = {});

struct BoundCheck {
  std::string name;
  mpq_class limit;  // raw value; comparisons use its floor
  bool ok = true;
  std::string note;
};

struct BoundsReport {
  unsigned rank = 0;
  unsigned degree = 0;
  std::size_t codim_Lf = 0;
  std::optional<std::size_t> essential_dim;
  std::vector<BoundCheck> bounds;
  bool all_ok() const;
};

/// c(r,3) for cubics: (1/2)((r+1)^2/4 + r + 3)((r+1)^2/4 + r).
mpq_class cubic_bound(unsigned r);

BoundsReport check_conjectureB_bounds(const HomPoly& f, const SlicingConfig& cfg, const ScanOptions& opts = {});

/// Upper bound srk(f) <= dim P from a user-supplied witness; valid over any field.
RankCertificate certify_upper_bound(const HomPoly& f, const Subspace& P);

/// FNV-1a helpers shared by the transcript builders.
inline constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
std::uint64_t fnv_mix(std::uint64_t h, std::uint64_t v);
std::uint64_t fnv_mix(std::uint64_t h, const Subspace& S);

}  // namespace srk

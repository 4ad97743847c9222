#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "srk/json_io.hpp"
#include "srk/slicerank.hpp"

namespace srk {

using Rng = std::mt19937_64;

// Random instance generators shared by the suites and the tests.
Vector random_vector(const Field& F, std::size_t n, Rng& rng, bool nonzero = false);
Subspace random_subspace(const Field& F, std::size_t n, std::size_t dim, Rng& rng);
/// `terms` distinct random monomials with random nonzero coefficients.
HomPoly random_poly(const Field& F, std::size_t n, unsigned d, std::size_t terms, Rng& rng);
/// Each monomial present independently with probability num/den.
HomPoly random_dense_poly(const Field& F, std::size_t n, unsigned d, unsigned num, unsigned den, Rng& rng);
/// l_1 g_1 + ... + l_r g_r with random linear l_i and random g_i of degree d-1.
HomPoly random_sliced_poly(const Field& F, std::size_t n, unsigned d, unsigned r, unsigned num, unsigned den, Rng& rng);
/// A random element of the degree-d piece of the intersection of the ideals (P_i); nullopt if that piece is zero.
std::optional<HomPoly> random_in_intersection(const std::vector<Subspace>& Ps, unsigned d, Rng& rng);

struct CheckCount {
  std::string name;
  std::size_t generated = 0;
  std::size_t filtered = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
};

struct SuiteOptions {
  std::uint64_t seed = 1;
  std::size_t samples = 0;  // 0 selects the suite default
  ScanOptions scan;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckCount> checks;
  std::optional<json> reproducer;  // first failure, minimized where possible
  bool ok() const;
  json to_json() const;
};

std::vector<std::string> suite_names();
/// Runs a named suite: theoremA, theoremC, theoremD, lemmas or grank.
SuiteReport run_suite(std::string_view name, const SuiteOptions& opts);

SuiteReport verify_theoremA(const SuiteOptions& opts);  // srk over F_2 vs F_4
SuiteReport verify_theoremC(const SuiteOptions& opts);  // rank-2 cubics and quartics
SuiteReport verify_theoremD(const SuiteOptions& opts);
SuiteReport verify_lemmas(const SuiteOptions& opts);
SuiteReport verify_grank(const SuiteOptions& opts);

/// Separate entry points for the two halves of the rank-2 checks.
SuiteReport verify_rank2_cubics(const SuiteOptions& opts);
SuiteReport verify_rank2_quartics(const SuiteOptions& opts);

}  // namespace srk

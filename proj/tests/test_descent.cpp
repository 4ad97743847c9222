#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "srk/descent.hpp"
#include "srk/verify.hpp"

using namespace srk;
using oracle::P;

namespace {
const std::vector<std::string> kV7{"x1", "y1", "z1", "y2", "z2", "x2", "z3"};

Subspace zeros(const std::string& forms, const Field& F, const std::vector<std::string>& vars) {
  return parse_linear_forms(forms, F, vars).annihilator();
}
}  // namespace

TEST_CASE("refinement examples") {
  const Field F2 = Field::make(2);
  const auto L1 = zeros("x1, x2", F2, kV7), L2 = zeros("y1, y2", F2, kV7);
  const auto r = refine_collection({L1, L2});
  REQUIRE(r.output.size() == 1);
  CHECK(r.output[0] == zeros("x1, x2, y1, y2", F2, kV7));
  CHECK(r.minimal_sets == std::vector<std::vector<std::size_t>>{{0, 1}});

  const std::vector<std::string> xyz{"x", "y", "z"};
  auto line = [&](const char* v) { return parse_linear_forms(v, F2, xyz); };
  const auto lines = refine_collection({line("x"), line("y"), line("z")});
  REQUIRE(lines.output.size() == 1);
  CHECK(lines.output[0].is_zero());

  CHECK(refine_collection({L1}).output == std::vector<Subspace>{L1});
  CHECK(refine_collection({L1, L1}).input.size() == 1);
  CHECK_THROWS_AS(refine_collection({}), Error);
}

TEST_CASE("minimal sets match subset enumeration") {
  std::mt19937_64 rng(21);
  const Field F2 = Field::make(2);
  for (int i = 0; i < 40; ++i) {
    const std::size_t n = 3 + uniform_below(rng, 3), s = 2 + uniform_below(rng, 4);
    std::vector<Subspace> L;
    for (std::size_t k = 0; k < s; ++k) L.push_back(random_subspace(F2, n, 1 + uniform_below(rng, n - 1), rng));
    const auto r = refine_collection(L);
    const auto& in = r.input;
    const Subspace total = subspace_sum(std::span<const Subspace>(in));
    auto spans = [&](unsigned mask) {
      if (mask == 0) return total.is_zero();
      std::vector<Subspace> part;
      for (std::size_t j = 0; j < in.size(); ++j)
        if (mask >> j & 1) part.push_back(in[j]);
      return subspace_sum(std::span<const Subspace>(part)) == total;
    };
    std::set<std::vector<std::size_t>> expected;
    for (unsigned mask = 1; mask < (1u << in.size()); ++mask) {
      if (!spans(mask)) continue;
      bool minimal = true;
      for (std::size_t j = 0; j < in.size(); ++j)
        if ((mask >> j & 1) && spans(mask & ~(1u << j))) minimal = false;
      if (!minimal) continue;
      std::vector<std::size_t> J;
      for (std::size_t j = 0; j < in.size(); ++j)
        if (mask >> j & 1) J.push_back(j);
      expected.insert(J);
    }
    CHECK(std::set<std::vector<std::size_t>>(r.minimal_sets.begin(), r.minimal_sets.end()) == expected);
  }
}

TEST_CASE("descent on the three-term cubic") {
  const Field F2 = Field::make(2);
  const auto f = P("x1*y1*z1 + x1*y2*z2 + x2*y1*z3", F2, kV7);
  const auto c = theorem_d_descent(f, {zeros("x1, x2", F2, kV7), zeros("y1, y2", F2, kV7)});
  CHECK(c.L0 == zeros("x1, x2, y1, y2", F2, kV7));
  CHECK(c.codim_L0 == 4);
  CHECK(c.bound == 16);
  CHECK(c.levels.size() == 2);
  CHECK(c.on_hypersurface);
  CHECK(c.within_bound);
  CHECK_THROWS_AS(theorem_d_descent(f, {zeros("x1, z1", F2, kV7)}), Error);
}

TEST_CASE("descent bound") {
  CHECK(descent_bound(2, 2) == 4);
  CHECK(descent_bound(2, 3) == 16);
  CHECK(descent_bound(3, 4) == 6561);
}

TEST_CASE("Frobenius orbits and rationality") {
  const Field F4 = Field::make(2, 2);
  const std::vector<std::string> xy{"x", "y"};
  const auto L = parse_linear_forms("x + (g)*y", F4, xy);
  const auto orbit = frobenius_orbit(L, 1);
  REQUIRE(orbit.size() == 2);
  CHECK(orbit[1] == parse_linear_forms("x + (g+1)*y", F4, xy));
  CHECK_FALSE(is_rational(L, 1));
  CHECK(is_rational(subspace_sum(orbit[0], orbit[1]), 1));
  CHECK(is_rational(parse_linear_forms("x + y", F4, xy), 1));
  const std::vector<std::string> v4{"x1", "x2", "x3", "x4"};
  CHECK(frobenius_orbit(parse_linear_forms("x1 + (g)*x2, x3 + (g)*x4", F4, v4), 1).size() == 2);
}

TEST_CASE("Galois descent of the norm-form quadric") {
  const Field F2 = Field::make(2), F4 = Field::make(2, 2);
  const std::vector<std::string> v4{"x1", "x2", "x3", "x4"};
  const auto f = P("x1^2 + x1*x2 + x2^2 + x3^2 + x3*x4 + x4^2", F2, v4);
  const auto L = zeros("x1 + (g)*x2, x3 + (g)*x4", F4, v4);
  const auto c = galois_descent(f, L);
  CHECK(c.orbit_size == 2);
  CHECK(c.codim_L0 == 4);
  CHECK(c.bound == 4);
  CHECK(c.rational);
  CHECK(c.L0.field() == F2);
}

TEST_CASE("Galois descent of a rational subspace is trivial") {
  const Field F2 = Field::make(2), F4 = Field::make(2, 2);
  const auto f = P("x1*y1*z1 + x1*y2*z2 + x2*y1*z3", F2, kV7);
  const auto c = galois_descent(f, zeros("x1, x2", F4, kV7));
  CHECK(c.orbit_size == 1);
  CHECK(c.L0 == zeros("x1, x2", F2, kV7));
}

TEST_CASE("family descent uses the trace") {
  const Field F4 = Field::make(2, 2), F2 = Field::make(2);
  const std::vector<std::string> xyz{"x", "y", "z"};
  const auto q = P("x^2 + y*z + z^2", F4, xyz);
  const auto f = poly_mul(P("x + (g)*y", F4, xyz), q);
  const auto fd = family_descent({f}, f, parse_linear_forms("x + (g)*y", F4, xyz), F2);
  CHECK(fd.from_trace);
  CHECK(fd.f0 == poly_mul(P("y", F2, xyz), P("x^2 + y*z + z^2", F2, xyz)));
  CHECK(in_ideal_of(fd.f0, parse_linear_forms("y", F2, xyz)));
  CHECK(fd.certificate.on_hypersurface);
}

TEST_CASE("dual recursion is annihilator-dual at every level") {
  std::mt19937_64 rng(4);
  const Field F3 = Field::make(3);
  for (int i = 0; i < 30; ++i) {
    const std::size_t n = 3 + uniform_below(rng, 3);
    std::vector<Subspace> Ps;
    for (std::size_t k = 0, s = 2 + uniform_below(rng, 3); k < s; ++k)
      Ps.push_back(random_subspace(F3, n, 1 + uniform_below(rng, 2), rng));
    std::vector<Subspace> Ls;
    for (const auto& P0 : Ps) Ls.push_back(P0.annihilator());
    const auto a = refine_collection(Ls), b = refine_collection_dual(Ps);
    REQUIRE(a.output.size() == b.output.size());
    for (std::size_t k = 0; k < a.output.size(); ++k) CHECK(a.output[k].annihilator() == b.output[k]);
    CHECK(theorem_d_descent(Ls, 3).L0.annihilator() ==
          subspace_intersect(std::span<const Subspace>(refine_collection_dual(b.output).output)));
  }
}

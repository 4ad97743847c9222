#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "srk/grank.hpp"
#include "srk/lp.hpp"
#include "srk/verify.hpp"

using namespace srk;
using oracle::P;

TEST_CASE("covering LP matches vertex enumeration") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 80; ++i) {
    const std::size_t n = 1 + uniform_below(rng, 3), m = 1 + uniform_below(rng, 5);
    std::vector<std::vector<mpq_class>> A;
    for (std::size_t r = 0; r < m; ++r) {
      std::vector<mpq_class> row(n);
      bool pos = false;
      for (auto& x : row) {
        x = static_cast<long>(uniform_below(rng, 4));
        pos = pos || x > 0;
      }
      if (!pos) row[0] = 1;
      A.push_back(row);
    }
    const auto sol = solve_covering_lp(A, n);
    CHECK(sol.value == oracle::covering_vertex_enum(A, n));
    mpq_class dual_obj = 0, primal_obj = 0;
    for (const auto& y : sol.dual) dual_obj += y;
    for (const auto& c : sol.primal) primal_obj += c;
    CHECK(dual_obj == sol.value);
    CHECK(primal_obj == sol.value);
  }
}

TEST_CASE("T-rank values") {
  const Field Q = Field::rationals(), F2 = Field::make(2);
  const std::vector<std::string> xy{"x", "y"};
  const auto t = trank(P("x^2*y", Q, xy));
  CHECK(t.value == mpq_class(3, 2));
  CHECK(t.weights == std::vector<mpz_class>{1, 0});
  CHECK(trank(P("x^4*y^2", Q, xy)).value == mpq_class(3, 2));
  for (unsigned d = 1; d <= 6; ++d) CHECK(trank(P("x^" + std::to_string(d), Q, xy)).value == 1);
  CHECK(trank(P("x1*y1 + x2*y2", F2, {"x1", "x2", "y1", "y2"})).value == 4);
  CHECK_THROWS_AS(trank(HomPoly(Q, 2, 2)), Error);
}

TEST_CASE("T-rank agrees with the vertex oracle") {
  std::mt19937_64 rng(13);
  const Field F3 = Field::make(3);
  for (int i = 0; i < 60; ++i) {
    const auto f = random_poly(F3, 2 + uniform_below(rng, 2), 2 + static_cast<unsigned>(uniform_below(rng, 3)),
                               1 + uniform_below(rng, 5), rng);
    CHECK(trank(f).value == oracle::trank_oracle(f));
  }
}

TEST_CASE("wedge T-rank") {
  const Field Q = Field::rationals();
  const std::vector<std::string> xy{"x", "y"};
  CHECK(trank_collection({P("x^2", Q, xy), P("y^2", Q, xy)}).value == 2);
  CHECK(trank_collection({P("x^2", Q, xy), P("x*y", Q, xy)}).value == mpq_class(4, 3));
  CHECK(trank_collection({P("x^2*y", Q, xy)}).value == mpq_class(3, 2));
  CHECK_THROWS_AS(trank_collection({P("x^2", Q, xy), P("2*x^2", Q, xy)}), Error);
}

TEST_CASE("valuation functional") {
  const Field Q = Field::rationals(), F2 = Field::make(2);
  CHECK(mu_eval(PSMatrix::diagonal(Q, {1, 0}, 8), P("x^3", Q, {"x", "y"})) == 1);
  const std::vector<std::string> v4{"x1", "x2", "y1", "y2"};
  CHECK(mu_eval(PSMatrix::diagonal(F2, {1, 1, 0, 0}, 8), P("x1*y1 + x2*y2", F2, v4)) == 4);
  CHECK_THROWS_AS(mu_eval(PSMatrix::diagonal(Q, {0, 0}, 4), P("x*y", Q, {"x", "y"})), Error);
  CHECK_THROWS_AS(mu_eval(PSMatrix::diagonal(Q, {5, 0}, 3), P("x*y", Q, {"x", "y"})), Error);
  CHECK(mu_diagonal(P("x^2*y", Q, {"x", "y"}), {1, 0}) == mpq_class(3, 2));

  // A non-diagonal point: x -> t x + y, y -> y. Then g.(x^2) = t^2 x^2 + 2 t x y + y^2 over Q has val 0.
  PSMatrix g(Q, 2, 6);
  g(0, 0) = parse_series("t", Q, 6);
  g(1, 0) = parse_series("1", Q, 6);
  g(1, 1) = parse_series("1", Q, 6);
  CHECK_THROWS_AS(mu_eval(g, P("x^2", Q, {"x", "y"})), Error);
}

TEST_CASE("G-rank brackets") {
  const Field F2 = Field::make(2), F3 = Field::make(3);
  const std::vector<std::string> xy{"x", "y"};
  const auto a = grank_bracket(P("x^3", F2, xy), 4, 1);
  CHECK(a.lower == 1);
  CHECK(a.upper == 1);
  const auto b = grank_bracket(P("x^2*y", F3, xy), 8, 1);
  CHECK(b.lower == 1);
  CHECK(b.upper == mpq_class(3, 2));
  const auto c = grank_bracket(P("x^2 + x*y + y^2", F2, xy), 8, 3);
  CHECK(c.lower == 2);
  CHECK(c.upper <= 4);
  // Same seed, same answer.
  const auto d = grank_bracket(P("x^2 + x*y + y^2", F2, xy), 8, 3);
  CHECK(d.basis_change == c.basis_change);
  CHECK(d.best_trial == c.best_trial);
}

TEST_CASE("power invariance and coordinate invariance") {
  const Field Q = Field::rationals();
  CHECK(power_invariance_check(P("x^2*y", Q, {"x", "y"}), 2));
  CHECK(power_invariance_check(P("x^3", Q, {"x", "y"}), 3));
  const Field F3 = Field::make(3);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 30; ++i) {
    const auto f = random_poly(F3, 3, 3, 1 + uniform_below(rng, 5), rng);
    const Vector s{F3.from_int(2), F3.one(), F3.from_int(2)};
    Matrix D(F3, 3, 3);
    for (std::size_t k = 0; k < 3; ++k) D(k, (k + 1) % 3) = s[k];
    CHECK(trank(substitute_linear(f, D)).value == trank(f).value);
    CHECK(mpq_class(slice_rank(f).rank) <= trank(f).value);
  }
}

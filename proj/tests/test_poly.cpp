#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "srk/verify.hpp"

using namespace srk;
using oracle::P;

TEST_CASE("normalization") {
  const Field F2 = Field::make(2), Q = Field::rationals();
  CHECK(P("x^2 + x^2", F2, {"x"}).is_zero());
  CHECK(P("x*y + y*x", Q, {"x", "y"}) == P("2*x*y", Q, {"x", "y"}));
  CHECK_THROWS_AS(P("x^2 + y^3", Q, {"x", "y"}), Error);
  CHECK(P("x^2 + x*y + y^2", F2, {"x", "y"}).size() == 3);
}

TEST_CASE("products") {
  const Field F2 = Field::make(2), F4 = Field::make(2, 2);
  const std::vector<std::string> xy{"x", "y"};
  const auto s = P("x + y", F2, xy);
  CHECK(poly_mul(s, s) == P("x^2 + y^2", F2, xy));
  CHECK(poly_mul(P("x + (g)*y", F4, xy), P("x + (g+1)*y", F4, xy)) == P("x^2 + x*y + y^2", F4, xy));
  CHECK(poly_pow(P("x^2*y", F2, xy), 2) == P("x^4*y^2", F2, xy));
}

TEST_CASE("linear substitution") {
  const Field F4 = Field::make(2, 2);
  const auto g = F4.generator();
  const auto f = P("x^2 + x*y + y^2", F4, {"x", "y"});
  CHECK(substitute_linear(f, Matrix::identity(F4, 2)) == f);
  // x = u, y = g u + v.
  Matrix A(F4, 2, 2);
  A(0, 0) = F4.one();
  A(1, 0) = g;
  A(1, 1) = F4.one();
  const auto h = substitute_linear(f, A);
  CHECK(h.coefficient({2, 0}).is_zero());

  const Field Q = Field::rationals();
  Matrix swap(Q, 2, 2);
  swap(0, 1) = Q.one();
  swap(1, 0) = Q.one();
  CHECK(substitute_linear(P("x^2*y", Q, {"x", "y"}), swap) == P("x*y^2", Q, {"x", "y"}));
}

TEST_CASE("restriction and ideal membership") {
  const Field F2 = Field::make(2);
  const std::vector<std::string> v7{"x1", "y1", "z1", "y2", "z2", "x2", "z3"};
  const auto f = P("x1*y1*z1 + x1*y2*z2 + x2*y1*z3", F2, v7);
  CHECK(in_ideal_of(f, parse_linear_forms("x1, x2", F2, v7)));
  CHECK(in_ideal_of(f, parse_linear_forms("y1, y2", F2, v7)));
  CHECK(in_ideal_of(f, parse_linear_forms("x1, z3", F2, v7)));
  CHECK(in_ideal_of(f, parse_linear_forms("y1, z2", F2, v7)));
  CHECK_FALSE(in_ideal_of(f, parse_linear_forms("x1, z1", F2, v7)));

  const std::vector<std::string> xy{"x", "y"};
  const auto norm = P("x^2 + x*y + y^2", F2, xy);
  CHECK(restrict_to_annihilator(norm, parse_linear_forms("x", F2, xy)).size() == 1);

  const Field F4 = Field::make(2, 2);
  CHECK(base_change(norm, F4).size() == 3);
  CHECK(in_ideal_of(base_change(norm, F4), parse_linear_forms("x + (g)*y", F4, xy)));
}

TEST_CASE("membership agrees with the product-span oracle") {
  std::mt19937_64 rng(11);
  for (int field = 0; field < 2; ++field) {
    const Field F = field ? Field::make(3) : Field::make(2);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t n = 2 + uniform_below(rng, 3);
      const unsigned d = 2 + static_cast<unsigned>(uniform_below(rng, 2));
      const auto Ps = random_subspace(F, n, 1 + uniform_below(rng, n), rng);
      const HomPoly f = trial % 2 ? random_poly(F, n, d, 1 + uniform_below(rng, 5), rng)
                                  : *random_in_intersection({Ps}, d, rng);
      std::vector<Vector> forms;
      for (std::size_t i = 0; i < Ps.dim(); ++i) forms.push_back(Ps.basis().row_vector(i));
      CHECK(in_ideal_of(f, Ps) == oracle::in_ideal_bruteforce(f, forms));
      CHECK(vanishes_on(f, Ps.annihilator()) == in_ideal_of(f, Ps));
    }
  }
}

TEST_CASE("graded pieces") {
  const Field F2 = Field::make(2);
  const std::vector<std::string> xy{"x", "y"};
  const auto px = parse_linear_forms("x", F2, xy), py = parse_linear_forms("y", F2, xy);
  const auto meet = ideal_graded_piece({{px, 1}, {py, 1}}, 2);
  CHECK(meet.space.dim() == 1);
  CHECK(membership_in_graded(P("x*y", F2, xy), meet));
  CHECK_FALSE(membership_in_graded(P("x^2", F2, xy), meet));
  CHECK(membership_in_graded(HomPoly(F2, 2, 2), meet));
  CHECK(ideal_graded_piece({{px, 3}}, 2).space.is_zero());
  const auto full = parse_linear_forms("x, y", F2, xy);
  CHECK(membership_in_graded(P("x^2 + x*y + y^2", F2, xy), ideal_graded_piece({{full, 2}}, 2)));
}

TEST_CASE("coefficient descent") {
  const Field F2 = Field::make(2), F4 = Field::make(2, 2);
  const FieldEmbedding emb(F2, F4);
  const std::vector<std::string> xy{"x", "y"};
  const auto f = P("x^2 + x*y", F2, xy);
  CHECK(*descend_coefficients(base_change(f, F4), emb) == f);
  CHECK_FALSE(descend_coefficients(P("(g)*x^2", F4, xy), emb));
}

TEST_CASE("text form") {
  const Field Q = Field::rationals(), F4 = Field::make(2, 2);
  CHECK(P("-(1/2)*x^2 + 2*x*y", Q, {"x", "y"}).to_string({"x", "y"}) == "-(1/2)*x^2 + 2*x*y");
  CHECK(P("(g+1)*x^2 + x*y", F4, {"x", "y"}).to_string({"x", "y"}) == "(g+1)*x^2 + x*y");
  CHECK(HomPoly(Q, 2, 2).to_string() == "0");
}

#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "srk/grank.hpp"
#include "srk/linalg.hpp"

using namespace srk;

namespace {

Vector vec(const Field& F, std::initializer_list<int> xs) {
  Vector v;
  for (int x : xs) v.push_back(F.from_int(x));
  return v;
}

}  // namespace

TEST_CASE("rref by hand") {
  const Field F2 = Field::make(2);
  const auto M = Matrix::from_rows(F2, 2, {vec(F2, {1, 1}), vec(F2, {1, 0})});
  CHECK(rref(M) == Matrix::identity(F2, 2));
  const Subspace S = Subspace::span(F2, 2, {vec(F2, {0, 1}), vec(F2, {0, 1})});
  CHECK(S.dim() == 1);
}

TEST_CASE("sums and intersections") {
  const Field F2 = Field::make(2);
  const auto e1 = vec(F2, {1, 0, 0}), e2 = vec(F2, {0, 1, 0}), e3 = vec(F2, {0, 0, 1});
  auto span = [&](std::vector<Vector> v) { return Subspace::span(F2, 3, v); };
  CHECK(subspace_sum(span({e1}), span({e2})).dim() == 2);
  CHECK(subspace_sum(std::vector<Subspace>{span({vec(F2, {1, 1, 0})}), span({vec(F2, {0, 1, 1})}),
                                           span({vec(F2, {1, 0, 1})})})
            .dim() == 2);
  CHECK(subspace_intersect(span({e1, e2}), span({e2, e3})) == span({e2}));
  CHECK_FALSE(span({vec(F2, {1, 1, 0})}).contains(e1));
  CHECK(span({vec(F2, {1, 1, 0}), vec(F2, {0, 1, 1})}).contains(vec(F2, {1, 0, 1})));
  CHECK(kernel(Matrix::from_rows(F2, 3, {vec(F2, {1, 1, 0}), vec(F2, {0, 1, 1})})) == span({vec(F2, {1, 1, 1})}));
}

TEST_CASE("conjugate planes over F_4 meet in zero") {
  const Field F4 = Field::make(2, 2);
  const auto g = F4.generator(), o = F4.one(), z = F4.zero();
  const Subspace A = Subspace::span(F4, 4, {{o, g, z, z}, {z, z, o, g}});
  CHECK(subspace_intersect(A, A.frobenius(1)).is_zero());
  CHECK(subspace_sum(A, A.frobenius(1)).dim() == 4);
}

TEST_CASE("sum, intersection and annihilator against enumeration") {
  std::mt19937_64 rng(7);
  for (int field = 0; field < 2; ++field) {
    const Field F = field ? Field::make(3) : Field::make(2);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = 2 + uniform_below(rng, 3);
      auto random_space = [&] {
        std::vector<Vector> rows;
        const auto k = uniform_below(rng, n + 1);
        for (std::size_t i = 0; i < k; ++i) {
          Vector v(n, F.zero());
          for (auto& x : v) x = F.from_code(uniform_below(rng, F.order()));
          rows.push_back(v);
        }
        return Subspace::span(F, n, rows);
      };
      const Subspace A = random_space(), B = random_space();
      const auto ma = oracle::members(A), mb = oracle::members(B);

      std::set<std::vector<std::uint64_t>> meet;
      for (const auto& v : ma)
        if (mb.count(v)) meet.insert(v);
      CHECK(oracle::members(subspace_intersect(A, B)) == meet);

      std::set<std::vector<std::uint64_t>> ann;
      for (const auto& w : oracle::all_vectors(F, n)) {
        bool ok = true;
        for (std::size_t i = 0; ok && i < A.dim(); ++i) {
          FieldElement s = F.zero();
          for (std::size_t j = 0; j < n; ++j) s += w[j] * A.basis()(i, j);
          ok = s.is_zero();
        }
        if (ok) ann.insert(oracle::codes(w));
      }
      CHECK(oracle::members(A.annihilator()) == ann);
      CHECK(A.annihilator().annihilator() == A);

      const Subspace S = subspace_sum(A, B);
      CHECK(S.contains(A));
      CHECK(S.contains(B));
      CHECK(S.dim() + subspace_intersect(A, B).dim() == A.dim() + B.dim());
    }
  }
}

TEST_CASE("inverse and determinant") {
  const Field F3 = Field::make(3);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 30; ++i) {
    const auto A = random_invertible(F3, 3, rng);
    const auto inv = inverse(A);
    REQUIRE(inv);
    CHECK(A * *inv == Matrix::identity(F3, 3));
    CHECK_FALSE(determinant(A).is_zero());
  }
  CHECK_FALSE(inverse(Matrix(F3, 2, 2)));
}

TEST_CASE("Grassmannian counts") {
  const Field F2 = Field::make(2), F3 = Field::make(3);
  CHECK(gaussian_binomial(2, 1, 2) == 3);
  CHECK(gaussian_binomial(4, 2, 2) == 35);
  CHECK(gaussian_binomial(7, 2, 3) == 99463);
  CHECK(grassmannian(4, 0, F2).size() == 1);
  CHECK(grassmannian(2, 1, F2).size() == 3);
  const auto g42 = grassmannian(4, 2, F2);
  CHECK(g42.size() == 35);
  // Distinct subspaces, checked by their member sets.
  std::set<std::set<std::vector<std::uint64_t>>> seen;
  for (const auto& S : g42) seen.insert(oracle::members(S));
  CHECK(seen.size() == 35);
  CHECK(grassmannian(4, 2, F3).size() == gaussian_binomial(4, 2, 3));
}

// Acceptance run: one PASS/FAIL line per criterion, with timings.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "srk/descent.hpp"
#include "srk/grank.hpp"
#include "srk/parse.hpp"
#include "srk/slicerank.hpp"
#include "srk/verify.hpp"

using namespace srk;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Criteria whose failure is a known disagreement with the stated expectation
// rather than a defect; they are reported but do not fail the run.
const std::set<int> kKnownDiscrepancies = {3};

HomPoly P(const std::string& text, const Field& F, const std::vector<std::string>& vars) {
  return parse_polynomial(text, F, vars).poly;
}

std::string suite_summary(const SuiteReport& r) {
  std::ostringstream os;
  for (const auto& c : r.checks) {
    if (os.tellp() > 0) os << "; ";
    os << c.name << ": " << c.passed << "/" << (c.generated - c.filtered);
    if (c.failed) os << " (" << c.failed << " failed)";
  }
  if (r.reproducer) os << "; reproducer " << r.reproducer->dump();
  return os.str();
}

Outcome from_suite(const SuiteReport& r) { return {r.ok(), suite_summary(r)}; }

// N(x,y,z) = prod_i sigma^i(x + a y + a^2 z) over F_8, with a the class of t.
HomPoly cubic_norm_form(const Field& F8) {
  const auto a = F8.generator();
  HomPoly N(F8, 3, 0);
  bool first = true;
  for (unsigned i = 0; i < 3; ++i) {
    const auto ai = i == 0 ? a : a.frobenius(i);
    const auto l = HomPoly::linear(F8, {F8.one(), ai, ai * ai});
    N = first ? l : poly_mul(N, l);
    first = false;
  }
  return N;
}

Outcome criterion1() {
  const Field F2 = Field::make(2), F4 = Field::make(2, 2), F8 = Field::make(2, 3);
  const std::vector<std::string> xy{"x", "y"};
  const auto q = P("x^2 + x*y + y^2", F2, xy);
  const unsigned q2 = slice_rank(q).rank, q4 = slice_rank(base_change(q, F4)).rank;
  const auto N8 = cubic_norm_form(F8);
  const auto N2 = descend_coefficients(N8, FieldEmbedding(F2, F8));
  if (!N2) return {false, "cubic norm form is not defined over F_2"};
  const unsigned c2 = slice_rank(*N2).rank, c8 = slice_rank(N8).rank;
  std::ostringstream os;
  os << "quadric: srk_F2 = " << q2 << ", srk_F4 = " << q4 << "; N = " << N2->to_string({"x", "y", "z"})
     << ": srk_F2 = " << c2 << ", srk_F8 = " << c8;
  return {q2 == 2 && q4 == 1 && c2 == 3 && c8 == 1, os.str()};
}

Outcome criterion2() {
  SuiteOptions o;
  o.samples = 200;
  return from_suite(verify_theoremA(o));
}

Outcome criterion3() {
  const std::vector<std::string> v{"x1", "y1", "z1", "y2", "z2", "x2", "z3"};
  const std::vector<std::string> listed{"x1, x2", "y1, y2", "x1, z3", "y1, z2"};
  Outcome out;
  std::ostringstream os;
  for (std::uint64_t p : {2, 3}) {
    const Field F = Field::make(p);
    const auto f = P("x1*y1*z1 + x1*y2*z2 + x2*y1*z3", F, v);
    const auto cfg = compute_Lf(f);
    bool all_listed = true;
    for (const auto& s : listed) {
      const auto S = parse_linear_forms(s, F, v);
      all_listed = all_listed && std::find(cfg.subspaces.begin(), cfg.subspaces.end(), S) != cfg.subspaces.end();
    }
    const bool extra_x1y1 = std::find(cfg.subspaces.begin(), cfg.subspaces.end(), parse_linear_forms("x1, y1", F, v)) !=
                            cfg.subspaces.end();
    os << "F_" << p << ": rank " << cfg.rank << ", |P_f| = " << cfg.subspaces.size() << " (four listed present: "
       << (all_listed ? "yes" : "no") << ", extra span(x1,y1): " << (extra_x1y1 ? "yes" : "no") << "), codim L_f = "
       << cfg.codim_Lf << ", " << cfg.tests_performed << " tests; ";
    out.pass = out.pass && cfg.rank == 2 && all_listed && cfg.subspaces.size() == 4 && cfg.codim_Lf == 6;
  }
  os << "f lies in (x1, y1) since every term contains x1 or y1, so P_f has five elements, not four";
  out.detail = os.str();
  return out;
}

Outcome criterion4() {
  const Field F2 = Field::make(2);
  const auto graph = P("x1*x2*y12 + x1*x3*y13 + x2*x3*y23", F2, {"x1", "x2", "x3", "y12", "y13", "y23"});
  const auto blocks = P("x2_1*x1_2*x1_3 + x1_1*x2_2*x2_3", F2, {"x1_1", "x2_1", "x1_2", "x2_2", "x1_3", "x2_3"});
  const auto a = compute_Lf(graph), b = compute_Lf(blocks);
  std::ostringstream os;
  os << "graph cubic: rank " << a.rank << ", codim L_f " << a.codim_Lf << "; two-block: rank " << b.rank
     << ", codim L_f " << b.codim_Lf;
  return {a.rank == 2 && a.codim_Lf == 6 && b.rank == 2 && b.codim_Lf == 6, os.str()};
}

Outcome criterion5() {
  SuiteOptions o;
  o.samples = 100;
  return from_suite(verify_rank2_cubics(o));
}

Outcome criterion6() {
  SuiteOptions o;
  o.samples = 25;
  return from_suite(verify_rank2_quartics(o));
}

Outcome criterion7() {
  const Field Q = Field::rationals();
  const std::vector<std::string> xy{"x1", "x2"};
  const auto a = trank(P("x1^2*x2", Q, xy)).value;
  bool powers = true;
  for (unsigned d = 1; d <= 6; ++d) powers = powers && trank(P("x1^" + std::to_string(d), Q, xy)).value == 1;
  const auto b = trank(P("x1^4*x2^2", Q, xy)).value;
  bool mu_ok = true;
  for (unsigned d = 1; d <= 6; ++d)
    mu_ok = mu_ok && mu_eval(PSMatrix::diagonal(Q, {1, 0}, d + 2), P("x1^" + std::to_string(d), Q, xy)) == 1;
  std::ostringstream os;
  os << "trank(x1^2 x2) = " << a.get_str() << ", trank(x1^d) = 1 for d <= 6: " << (powers ? "yes" : "no")
     << ", trank(x1^4 x2^2) = " << b.get_str() << ", mu(diag(t,1), x1^d) = 1: " << (mu_ok ? "yes" : "no");
  return {a == mpq_class(3, 2) && powers && b == mpq_class(3, 2) && mu_ok, os.str()};
}

Outcome criterion8() {
  const Field F2 = Field::make(2);
  const MonomialBasis basis(3, 2);
  unsigned count = 0, ok_lower = 0, ok_norm = 0;
  for (unsigned mask = 1; mask < (1u << basis.size()); ++mask) {
    Vector v(basis.size(), F2.zero());
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (mask >> i & 1) v[i] = F2.one();
    const auto f = HomPoly::from_coefficients(F2, basis, v);
    const auto t = trank(f).value;
    ++count;
    if (mpq_class(slice_rank(f).rank) <= t) ++ok_lower;
    if (t >= 1) ++ok_norm;
  }
  std::ostringstream os;
  os << count << " polynomials; srk <= trank: " << ok_lower << ", trank >= 1: " << ok_norm;
  return {count == 63 && ok_lower == 63 && ok_norm == 63, os.str()};
}

Outcome criterion9() {
  SuiteOptions o;
  o.samples = 100;
  const auto rep = verify_theoremD(o);
  const Field F2 = Field::make(2);
  const std::vector<std::string> v{"x1", "y1", "z1", "y2", "z2", "x2", "z3"};
  const auto f = P("x1*y1*z1 + x1*y2*z2 + x2*y1*z3", F2, v);
  const auto c = theorem_d_descent(f, {parse_linear_forms("x1, x2", F2, v).annihilator(),
                                       parse_linear_forms("y1, y2", F2, v).annihilator()});
  const bool hand = c.L0 == parse_linear_forms("x1, x2, y1, y2", F2, v).annihilator() && c.codim_L0 == 4 &&
                    c.on_hypersurface && c.within_bound;
  Outcome out = from_suite(rep);
  out.detail += std::string("; worked example: L0 = Z(x1,x2,y1,y2) codim ") + std::to_string(c.codim_L0) +
                (hand ? " (as expected)" : " (MISMATCH)");
  out.pass = out.pass && hand;
  return out;
}

Outcome criterion10() {
  const Field F2 = Field::make(2), F4 = Field::make(2, 2);
  const FieldEmbedding emb(F2, F4);
  std::ostringstream os;
  bool pass = true;

  const std::vector<std::string> v4{"x1", "x2", "x3", "x4"};
  const auto q = P("x1^2 + x1*x2 + x2^2 + x3^2 + x3*x4 + x4^2", F2, v4);
  const auto cq = galois_descent(q, parse_linear_forms("x1 + (g)*x2, x3 + (g)*x4", F4, v4).annihilator());
  pass = pass && cq.rational && cq.on_hypersurface && cq.within_bound && cq.L0.field() == F2;
  os << "quadric: orbit " << cq.orbit_size << ", codim L0 " << cq.codim_L0 << " <= " << cq.bound.get_str();

  // Cubic fixtures: f in the degree-3 piece of (P) and (sigma P) for a non-rational P over F_4.
  Rng rng(2024);
  unsigned built = 0, attempts = 0;
  while (built < 6 && attempts < 500) {
    ++attempts;
    const std::size_t n = 4 + uniform_below(rng, 3);
    const auto Pq = random_subspace(F4, n, 2, rng);
    if (is_rational(Pq, 1)) continue;
    const auto piece = ideal_graded_piece({{Pq, 1}, {Pq.frobenius(1), 1}}, 3);
    if (piece.space.is_zero() || !is_rational(piece.space, 1)) continue;
    const MonomialBasis basis(n, 3);
    Vector coeffs(basis.size(), F4.zero());
    bool any = false;
    for (std::size_t r = 0; r < piece.space.dim(); ++r) {
      if (uniform_below(rng, 2) == 0) continue;
      any = true;
      for (std::size_t j = 0; j < basis.size(); ++j) coeffs[j] += piece.space.basis()(r, j);
    }
    if (!any) continue;
    const auto f = descend_coefficients(HomPoly::from_coefficients(F4, basis, coeffs), emb);
    if (!f || f->is_zero()) continue;
    const auto c = galois_descent(*f, Pq.annihilator());
    const bool ok = c.rational && c.on_hypersurface && c.within_bound && c.L0.field() == F2 && is_rational(base_change(c.L0, emb), 1) &&
                    vanishes_on(*f, c.L0);
    pass = pass && ok;
    ++built;
    os << "; cubic n=" << n << ": orbit " << c.orbit_size << ", codim L0 " << c.codim_L0 << " <= " << c.bound.get_str()
       << (ok ? "" : " FAILED");
  }
  pass = pass && built >= 5;
  os << "; " << built << " cubic fixtures";
  return {pass, os.str()};
}

Outcome criterion11() {
  SuiteOptions o;
  o.samples = 200;
  return from_suite(verify_lemmas(o));
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"norm-form sharpness", criterion1},
      {"slice rank over F_2 vs F_4 (200 samples)", criterion2},
      {"rank-2 cubic configuration", criterion3},
      {"graph cubic and two-block family", criterion4},
      {"rank-2 cubics: codim L_f <= 6 (100 samples)", criterion5},
      {"rank-2 quartics: dichotomy (25 samples)", criterion6},
      {"exact T-rank values", criterion7},
      {"srk <= trank, exhaustive n=3 d=2 q=2", criterion8},
      {"iterated refinement descent (100 samples)", criterion9},
      {"Galois descent end to end", criterion10},
      {"lemma suites (200 samples each)", criterion11},
  };
  int unexpected = 0, failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f s", secs);
    std::cout << (out.pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << criteria[i].first << " [" << timing
              << "] " << out.detail << std::endl;
    if (!out.pass) {
      ++failed;
      if (!kKnownDiscrepancies.count(id)) ++unexpected;
    }
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass";
  if (failed) std::cout << "; " << failed - unexpected << " failure(s) are documented discrepancies";
  std::cout << std::endl;
  return unexpected ? 1 : 0;
}

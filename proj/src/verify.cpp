#include "srk/verify.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "srk/descent.hpp"
#include "srk/grank.hpp"

namespace srk {

Vector random_vector(const Field& F, std::size_t n, Rng& rng, bool nonzero) {
  for (;;) {
    Vector v(n, F.zero());
    bool any = false;
    for (auto& x : v) {
      x = F.from_code(uniform_below(rng, F.order()));
      any = any || !x.is_zero();
    }
    if (any || !nonzero || n == 0) return v;
  }
}

Subspace random_subspace(const Field& F, std::size_t n, std::size_t dim, Rng& rng) {
  if (dim > n) fail(ErrorCode::InvalidArgument, "subspace dimension exceeds ambient dimension");
  for (;;) {
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < dim; ++i) rows.push_back(random_vector(F, n, rng));
    Subspace S = Subspace::span(F, n, rows);
    if (S.dim() == dim) return S;
  }
}

namespace {

FieldElement random_nonzero(const Field& F, Rng& rng) { return F.from_code(1 + uniform_below(rng, F.order() - 1)); }

}  // namespace

HomPoly random_poly(const Field& F, std::size_t n, unsigned d, std::size_t terms, Rng& rng) {
  const MonomialBasis basis(n, d);
  std::vector<std::size_t> idx(basis.size());
  std::iota(idx.begin(), idx.end(), 0);
  terms = std::min(terms, idx.size());
  std::vector<Term> raw;
  for (std::size_t i = 0; i < terms; ++i) {
    std::swap(idx[i], idx[i + uniform_below(rng, idx.size() - i)]);
    raw.push_back({basis[idx[i]], random_nonzero(F, rng)});
  }
  return HomPoly::normalize(F, n, std::move(raw), d);
}

HomPoly random_dense_poly(const Field& F, std::size_t n, unsigned d, unsigned num, unsigned den, Rng& rng) {
  const MonomialBasis basis(n, d);
  std::vector<Term> raw;
  for (const auto& m : basis.monomials())
    if (uniform_below(rng, den) < num) raw.push_back({m, random_nonzero(F, rng)});
  return HomPoly::normalize(F, n, std::move(raw), d);
}

HomPoly random_sliced_poly(const Field& F, std::size_t n, unsigned d, unsigned r, unsigned num, unsigned den,
                           Rng& rng) {
  HomPoly f(F, n, d);
  for (unsigned i = 0; i < r; ++i) {
    const HomPoly l = HomPoly::linear(F, random_vector(F, n, rng, true));
    f = f + poly_mul(l, random_dense_poly(F, n, d - 1, num, den, rng));
  }
  return f;
}

std::optional<HomPoly> random_in_intersection(const std::vector<Subspace>& Ps, unsigned d, Rng& rng) {
  std::vector<std::pair<Subspace, unsigned>> gens;
  for (const auto& P : Ps) gens.emplace_back(P, 1);
  const auto piece = ideal_graded_piece(gens, d);
  if (piece.space.is_zero()) return std::nullopt;
  const Field& F = Ps[0].field();
  const MonomialBasis basis(piece.n_vars, d);
  const Vector c = random_vector(F, piece.space.dim(), rng, true);
  Vector v(basis.size(), F.zero());
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) v[j] += c[i] * piece.space.basis()(i, j);
  return HomPoly::from_coefficients(F, basis, v);
}

bool SuiteReport::ok() const {
  for (const auto& c : checks)
    if (c.failed) return false;
  return true;
}

json SuiteReport::to_json() const {
  json cs = json::array();
  for (const auto& c : checks)
    cs.push_back(json{{"name", c.name},
                      {"generated", c.generated},
                      {"filtered", c.filtered},
                      {"passed", c.passed},
                      {"failed", c.failed}});
  json j{{"suite", suite}, {"seed", seed}, {"ok", ok()}, {"checks", std::move(cs)}};
  if (reproducer) j["reproducer"] = *reproducer;
  return j;
}

namespace {

// Greedily drops terms while the failure persists.
HomPoly minimize(const HomPoly& f, const std::function<bool(const HomPoly&)>& still_fails) {
  HomPoly cur = f;
  for (std::size_t i = 0; i < cur.size();) {
    std::vector<Term> terms = cur.terms();
    terms.erase(terms.begin() + static_cast<std::ptrdiff_t>(i));
    if (terms.empty()) {
      ++i;
      continue;
    }
    HomPoly cand = HomPoly::normalize(cur.field(), cur.n_vars(), terms, cur.degree());
    bool fails = false;
    try {
      fails = still_fails(cand);
    } catch (const Error&) {
    }
    if (fails) {
      cur = cand;
    } else {
      ++i;
    }
  }
  return cur;
}

json poly_reproducer(const std::string& check, const HomPoly& f, const std::string& detail) {
  return json{{"check", check},
              {"field", f.field().spec()},
              {"polynomial", f.to_string()},
              {"poly", to_json(f, default_variable_names(f.n_vars()))},
              {"detail", detail}};
}

json subspaces_reproducer(const std::string& check, const std::vector<Subspace>& Ps, const std::string& detail,
                          const HomPoly* f = nullptr) {
  json subs = json::array();
  for (const auto& P : Ps) subs.push_back(srk::to_json(P));
  json j{{"check", check}, {"field", Ps.empty() ? std::string("?") : Ps[0].field().spec()}, {"subspaces", std::move(subs)},
         {"detail", detail}};
  if (f) {
    j["polynomial"] = f->to_string();
    j["poly"] = to_json(*f, default_variable_names(f->n_vars()));
  }
  return j;
}

class Recorder {
 public:
  explicit Recorder(SuiteReport& rep) : rep_(rep) {}
  std::size_t add(std::string name) {
    rep_.checks.push_back({std::move(name)});
    return rep_.checks.size() - 1;
  }
  CheckCount& operator[](std::size_t i) { return rep_.checks[i]; }
  void generated(std::size_t i) { ++rep_.checks[i].generated; }
  void filtered(std::size_t i) { ++rep_.checks[i].filtered; }
  // Records the outcome; the first failure produces the reproducer.
  void outcome(std::size_t i, bool ok, const std::function<json()>& repro) {
    if (ok) {
      ++rep_.checks[i].passed;
      return;
    }
    ++rep_.checks[i].failed;
    if (!rep_.reproducer) rep_.reproducer = repro();
  }

 private:
  SuiteReport& rep_;
};

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) { return lo + uniform_below(rng, hi - lo + 1); }

Subspace span_vector(const Vector& v) { return Subspace::span(v[0].field(), v.size(), {v}); }

}  // namespace

std::vector<std::string> suite_names() { return {"theoremA", "theoremC", "theoremD", "lemmas", "grank"}; }

SuiteReport run_suite(std::string_view name, const SuiteOptions& opts) {
  if (name == "theoremA") return verify_theoremA(opts);
  if (name == "theoremC") return verify_theoremC(opts);
  if (name == "theoremD") return verify_theoremD(opts);
  if (name == "lemmas") return verify_lemmas(opts);
  if (name == "grank") return verify_grank(opts);
  fail(ErrorCode::InvalidArgument, "unknown suite '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------

SuiteReport verify_theoremA(const SuiteOptions& opts) {
  SuiteReport rep{"theoremA", opts.seed, {}, std::nullopt};
  Recorder rec(rep);
  const auto upper = rec.add("srk over F_2 <= d * srk over F_4");
  const auto lower = rec.add("srk over F_4 <= srk over F_2");
  const Field F2 = Field::make(2), F4 = Field::make(2, 2);
  Rng rng(opts.seed);
  const std::size_t samples = opts.samples ? opts.samples : 200;
  for (std::size_t i = 0; i < samples; ++i) {
    const std::size_t n = pick(rng, 2, 5);
    const unsigned d = static_cast<unsigned>(pick(rng, 2, 3));
    const HomPoly f = random_poly(F2, n, d, pick(rng, 1, 6), rng);
    rec.generated(upper);
    rec.generated(lower);
    const unsigned base = slice_rank(f, opts.scan).rank;
    const unsigned ext = slice_rank(base_change(f, F4), opts.scan).rank;
    auto fails_upper = [&](const HomPoly& g) {
      return slice_rank(g, opts.scan).rank > g.degree() * slice_rank(base_change(g, F4), opts.scan).rank;
    };
    auto fails_lower = [&](const HomPoly& g) {
      return slice_rank(base_change(g, F4), opts.scan).rank > slice_rank(g, opts.scan).rank;
    };
    const std::string detail = "srk_F2 = " + std::to_string(base) + ", srk_F4 = " + std::to_string(ext);
    rec.outcome(upper, base <= d * ext, [&] { return poly_reproducer("upper", minimize(f, fails_upper), detail); });
    rec.outcome(lower, ext <= base, [&] { return poly_reproducer("lower", minimize(f, fails_lower), detail); });
  }
  return rep;
}

namespace {

void rank2_suite(SuiteReport& rep, const SuiteOptions& opts, unsigned d, std::size_t samples) {
  Recorder rec(rep);
  const std::string tag = d == 3 ? "cubics" : "degree " + std::to_string(d);
  const auto main = d == 3 ? rec.add("codim L_f <= 6 (rank-2 cubics)")
                           : rec.add("codim L_f <= d^2-1 or essential dim <= d^2+1 (rank-2, " + tag + ")");
  const auto all = rec.add("every reported bound holds (rank-2 " + tag + ")");
  const auto hered = rec.add("common-line restriction drops the rank (rank-2 " + tag + ")");
  const Field F2 = Field::make(2);
  Rng rng(opts.seed + d);
  std::size_t accepted = 0;
  for (std::size_t attempt = 0; accepted < samples && attempt < 50 * samples; ++attempt) {
    const std::size_t n = pick(rng, 4, 7);
    const HomPoly f = d == 3 ? random_sliced_poly(F2, n, d, 2, 1, 3, rng) : random_sliced_poly(F2, n, d, 2, 1, 4, rng);
    rec.generated(main);
    rec.generated(all);
    if (f.is_zero()) {
      rec.filtered(main);
      rec.filtered(all);
      continue;
    }
    const auto cfg = compute_Lf(f, opts.scan);
    if (cfg.rank != 2) {
      rec.filtered(main);
      rec.filtered(all);
      continue;
    }
    ++accepted;
    const auto bounds = check_conjectureB_bounds(f, cfg, opts.scan);
    bool main_ok = false;
    for (const auto& b : bounds.bounds)
      if ((d == 3 && b.name == "c(2,3)") || (d != 3 && b.name == "dichotomy(2,d)")) main_ok = b.ok;
    const std::string detail = "codim L_f = " + std::to_string(cfg.codim_Lf);
    rec.outcome(main, main_ok, [&] { return poly_reproducer("main bound", f, detail); });
    rec.outcome(all, bounds.all_ok(), [&] { return poly_reproducer("reported bounds", f, detail); });

    const Subspace common = subspace_intersect(std::span<const Subspace>(cfg.subspaces));
    rec.generated(hered);
    if (common.is_zero()) {
      rec.filtered(hered);
      continue;
    }
    const HomPoly h = restrict_to_annihilator(f, span_vector(common.basis().row_vector(0)));
    const bool ok = !h.is_zero() && slice_rank(h, opts.scan).rank == 1;
    rec.outcome(hered, ok, [&] { return poly_reproducer("restriction heredity", f, detail); });
  }
}

}  // namespace

SuiteReport verify_rank2_cubics(const SuiteOptions& opts) {
  SuiteReport rep{"theoremC", opts.seed, {}, std::nullopt};
  rank2_suite(rep, opts, 3, opts.samples ? opts.samples : 100);
  return rep;
}

SuiteReport verify_rank2_quartics(const SuiteOptions& opts) {
  SuiteReport rep{"theoremC", opts.seed, {}, std::nullopt};
  rank2_suite(rep, opts, 4, opts.samples ? opts.samples : 25);
  return rep;
}

SuiteReport verify_theoremC(const SuiteOptions& opts) {
  SuiteReport rep{"theoremC", opts.seed, {}, std::nullopt};
  rank2_suite(rep, opts, 3, opts.samples ? opts.samples : 100);
  rank2_suite(rep, opts, 4, opts.samples ? std::max<std::size_t>(1, opts.samples / 4) : 25);
  return rep;
}

// ---------------------------------------------------------------------------

SuiteReport verify_theoremD(const SuiteOptions& opts) {
  SuiteReport rep{"theoremD", opts.seed, {}, std::nullopt};
  Recorder rec(rep);
  const auto contain = rec.add("L0 lies on f = 0");
  const auto bound = rec.add("codim L0 <= r^(2^(d-1))");
  const auto dual = rec.add("dual recursion matches level by level");
  const auto pd = rec.add("annihilator of L0 equals the dual intersection P^(d)");
  const auto step1 = rec.add("level-1 dual subspaces have dim <= r^2");
  const auto mono = rec.add("dual intersections increase with the level");
  const auto idem = rec.add("refinement fixes singletons");
  Rng rng(opts.seed);
  const std::size_t samples = opts.samples ? opts.samples : 100;
  std::size_t accepted = 0;
  for (std::size_t attempt = 0; accepted < samples && attempt < 50 * samples; ++attempt) {
    const Field F = Field::make(attempt % 2 ? 3 : 2);
    const unsigned d = static_cast<unsigned>(pick(rng, 2, 4));
    const std::size_t r = pick(rng, 2, 3);
    const std::size_t n = pick(rng, r + 1, 6);
    const std::size_t s = pick(rng, 1, 4);
    std::vector<Subspace> Ps{random_subspace(F, n, r, rng)};
    for (std::size_t i = 1; i < s; ++i) Ps.push_back(random_subspace(F, n, pick(rng, 1, r), rng));
    const auto ids = {contain, bound, dual, pd, step1, mono};
    for (auto id : ids) rec.generated(id);
    const auto f = random_in_intersection(Ps, d, rng);
    if (!f) {
      for (auto id : ids) rec.filtered(id);
      continue;
    }
    ++accepted;
    std::vector<Subspace> Ls;
    for (const auto& P : Ps) Ls.push_back(P.annihilator());
    const auto cert = theorem_d_descent(*f, Ls, false);
    auto repro = [&](const std::string& what) {
      return [&, what] { return subspaces_reproducer(what, Ps, "dual-side inputs; d = " + std::to_string(d), &*f); };
    };
    rec.outcome(contain, cert.on_hypersurface, repro("containment"));
    rec.outcome(bound, cert.within_bound, repro("bound"));

    // Dual recursion, compared level by level.
    bool dual_ok = true, step1_ok = true, mono_ok = true, idem_ok = true;
    std::vector<Subspace> cur_p = dedup_subspaces(Ps);
    std::vector<Subspace> cur_l = dedup_subspaces(Ls);
    Subspace prev_meet = subspace_intersect(std::span<const Subspace>(cur_p));
    for (unsigned level = 1; level < d; ++level) {
      const auto lp = refine_collection_dual(cur_p);
      const auto ll = refine_collection(cur_l);
      if (lp.output.size() != ll.output.size() || lp.minimal_sets != ll.minimal_sets) dual_ok = false;
      for (std::size_t k = 0; dual_ok && k < lp.output.size(); ++k)
        if (!(lp.output[k] == ll.output[k].annihilator())) dual_ok = false;
      if (level == 1)
        for (const auto& P : lp.output)
          if (P.dim() > r * r) step1_ok = false;
      const Subspace meet = subspace_intersect(std::span<const Subspace>(lp.output));
      if (!meet.contains(prev_meet)) mono_ok = false;
      prev_meet = meet;
      for (const auto& L : ll.output) {
        const auto again = refine_collection({L});
        if (again.output.size() != 1 || !(again.output[0] == L)) idem_ok = false;
      }
      cur_p = lp.output;
      cur_l = ll.output;
    }
    rec.outcome(dual, dual_ok, repro("dual consistency"));
    rec.outcome(pd, cert.L0.annihilator() == subspace_intersect(std::span<const Subspace>(cur_p)), repro("P^(d)"));
    rec.outcome(step1, step1_ok, repro("step-1 bound"));
    rec.outcome(mono, mono_ok, repro("monotone intersections"));
    if (d > 1) {
      rec.generated(idem);
      rec.outcome(idem, idem_ok, repro("idempotence"));
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

// Coordinates of a vector of W in W's canonical basis: its pivot entries.
Subspace in_coordinates(const Subspace& P, const Subspace& W) {
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < P.dim(); ++i) {
    Vector v;
    for (auto c : W.pivots()) v.push_back(P.basis()(i, c));
    rows.push_back(std::move(v));
  }
  return Subspace::span(P.field(), W.dim(), rows);
}

std::vector<std::pair<Subspace, unsigned>> powers(const std::vector<Subspace>& Ps, unsigned a) {
  std::vector<std::pair<Subspace, unsigned>> g;
  for (const auto& P : Ps) g.emplace_back(P, a);
  return g;
}

}  // namespace

SuiteReport verify_lemmas(const SuiteOptions& opts) {
  SuiteReport rep{"lemmas", opts.seed, {}, std::nullopt};
  Recorder rec(rep);
  const auto flat = rec.add("flatness: intersection commutes with extension from S(W)");
  const auto l34m = rec.add("zero intersection: no degree-m part in the m-th power intersection");
  const auto l34 = rec.add("zero intersection: degree m+1 part lies in (W)^(m+1)");
  const auto l36 = rec.add("irredundant collections: 4 dim(sum) <= 4r + (r+1)^2");
  Rng rng(opts.seed);
  const std::size_t samples = opts.samples ? opts.samples : 200;

  for (std::size_t i = 0; i < samples; ++i) {
    const Field F = Field::make(i % 2 ? 3 : 2);
    const std::size_t n = pick(rng, 2, 6);
    const std::size_t s = pick(rng, 2, 3);
    std::vector<Subspace> Ps;
    for (std::size_t k = 0; k < s; ++k) Ps.push_back(random_subspace(F, n, pick(rng, 1, std::min<std::size_t>(3, n)), rng));
    const unsigned m = static_cast<unsigned>(pick(rng, 1, n <= 4 ? 3 : 2));
    rec.generated(flat);
    const Subspace W = subspace_sum(std::span<const Subspace>(Ps));
    std::vector<Subspace> local;
    for (const auto& P : Ps) local.push_back(in_coordinates(P, W));
    std::vector<HomPoly> extended;
    for (unsigned j = 1; j <= m; ++j) {
      const auto piece = ideal_graded_piece(powers(local, 1), j);
      const MonomialBasis basis(W.dim(), j);
      for (std::size_t row = 0; row < piece.space.dim(); ++row)
        extended.push_back(
            substitute_linear(HomPoly::from_coefficients(F, basis, piece.space.basis().row_vector(row)), W.basis()));
    }
    const auto lhs = ideal_graded_piece(powers(Ps, 1), m).space;
    const auto rhs = ideal_piece_generated(F, n, extended, m).space;
    rec.outcome(flat, lhs == rhs, [&] { return subspaces_reproducer("flatness", Ps, "m = " + std::to_string(m)); });
  }

  for (std::size_t i = 0; i < samples; ++i) {
    const Field F = Field::make(i % 2 ? 3 : 2);
    const std::size_t n = pick(rng, 2, 6);
    const std::size_t s = pick(rng, 2, 4);
    std::vector<Subspace> Ps;
    for (std::size_t k = 0; k < s; ++k) Ps.push_back(random_subspace(F, n, pick(rng, 1, std::min<std::size_t>(3, n)), rng));
    const unsigned m = static_cast<unsigned>(pick(rng, 1, 2));
    rec.generated(l34m);
    rec.generated(l34);
    if (!subspace_intersect(std::span<const Subspace>(Ps)).is_zero()) {
      rec.filtered(l34m);
      rec.filtered(l34);
      continue;
    }
    const Subspace W = subspace_sum(std::span<const Subspace>(Ps));
    auto repro = [&] { return subspaces_reproducer("ideal intersection", Ps, "m = " + std::to_string(m)); };
    rec.outcome(l34m, ideal_graded_piece(powers(Ps, m), m).space.is_zero(), repro);
    const auto inter = ideal_graded_piece(powers(Ps, m), m + 1);
    const auto target = ideal_graded_piece({{W, m + 1}}, m + 1);
    rec.outcome(l34, target.space.contains(inter.space), repro);
  }

  for (std::size_t i = 0; i < samples;) {
    const Field F = Field::make(i % 2 ? 3 : 2);
    const std::size_t r = pick(rng, 1, 3);
    const std::size_t n = pick(rng, 2, 6);
    const std::size_t s = pick(rng, 2, std::min<std::size_t>(5, r + 2));
    std::vector<Subspace> Ps;
    if (uniform_below(rng, 2) == 0 && s <= r + 1 && s <= n) {
      // P_i = span(u_j : j != i) plus extras: zero intersection, irredundant by construction.
      const Subspace U = random_subspace(F, n, s, rng);
      for (std::size_t k = 0; k < s; ++k) {
        std::vector<Vector> rows;
        for (std::size_t j = 0; j < s; ++j)
          if (j != k) rows.push_back(U.basis().row_vector(j));
        const std::size_t extra = pick(rng, 0, r - (s - 1));
        for (std::size_t e = 0; e < extra; ++e) rows.push_back(random_vector(F, n, rng));
        Ps.push_back(Subspace::span(F, n, rows));
      }
    } else {
      for (std::size_t k = 0; k < s; ++k) Ps.push_back(random_subspace(F, n, pick(rng, 1, std::min(r, n)), rng));
    }
    rec.generated(l36);
    bool irredundant = subspace_intersect(std::span<const Subspace>(Ps)).is_zero();
    for (std::size_t k = 0; irredundant && k < s; ++k) {
      std::vector<Subspace> rest;
      for (std::size_t j = 0; j < s; ++j)
        if (j != k) rest.push_back(Ps[j]);
      if (subspace_intersect(std::span<const Subspace>(rest)).is_zero()) irredundant = false;
    }
    bool dims_ok = true;
    for (const auto& P : Ps) dims_ok = dims_ok && P.dim() <= r && P.dim() > 0;
    if (!irredundant || !dims_ok) {
      rec.filtered(l36);
      continue;
    }
    ++i;
    const std::size_t N = subspace_sum(std::span<const Subspace>(Ps)).dim();
    rec.outcome(l36, 4 * N <= 4 * r + (r + 1) * (r + 1), [&] {
      return subspaces_reproducer("irredundant dimension", Ps, "r = " + std::to_string(r) + ", dim sum = " + std::to_string(N));
    });
  }
  return rep;
}

// ---------------------------------------------------------------------------

SuiteReport verify_grank(const SuiteOptions& opts) {
  SuiteReport rep{"grank", opts.seed, {}, std::nullopt};
  Recorder rec(rep);
  const auto lower = rec.add("srk <= trank");
  const auto norm = rec.add("trank >= 1");
  const auto adapted = rec.add("slicing-adapted coordinates give trank <= d * srk");
  const auto power = rec.add("trank(f^2) = trank(f)");
  const auto mu = rec.add("mu at a diagonal point >= trank");
  const auto mu_series = rec.add("series evaluation of mu matches the support formula");
  const auto invariance = rec.add("trank invariant under permutations and diagonal scaling");
  const auto wedge = rec.add("wedge trank >= 1");
  Rng rng(opts.seed);

  auto check_one = [&](const HomPoly& f) {
    for (auto id : {lower, norm, adapted, power, mu, mu_series, invariance}) rec.generated(id);
    const auto sr = slice_rank(f, opts.scan);
    const auto t = trank(f);
    auto repro = [&](const std::string& what) { return [&, what] { return poly_reproducer(what, f, "trank " + t.value.get_str()); }; };
    rec.outcome(lower, mpq_class(sr.rank) <= t.value, repro("srk <= trank"));
    rec.outcome(norm, t.value >= 1, repro("trank >= 1"));
    const auto change = inverse(complete_basis(sr.witness));
    rec.outcome(adapted, change && trank(substitute_linear(f, *change)).value <= f.degree() * sr.rank,
                repro("adapted coordinates"));
    rec.outcome(power, power_invariance_check(f, 2), repro("power invariance"));

    const std::size_t n = f.n_vars();
    std::vector<unsigned> c(n);
    for (;;) {
      for (auto& x : c) x = static_cast<unsigned>(uniform_below(rng, 4));
      bool positive = true;
      for (const auto& term : f.terms()) {
        unsigned w = 0;
        for (std::size_t i = 0; i < n; ++i) w += term.exponents[i] * c[i];
        positive = positive && w > 0;
      }
      if (positive) break;
    }
    const mpq_class m = mu_diagonal(f, c);
    rec.outcome(mu, m >= t.value, repro("mu >= trank"));
    const unsigned N = std::max(f.degree() * *std::max_element(c.begin(), c.end()),
                                std::accumulate(c.begin(), c.end(), 0u)) + 2;
    rec.outcome(mu_series, mu_eval(PSMatrix::diagonal(f.field(), c, N), f) == m, repro("series mu"));

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[uniform_below(rng, i)]);
    Matrix A(f.field(), n, n);
    for (std::size_t i = 0; i < n; ++i) A(i, perm[i]) = random_nonzero(f.field(), rng);
    rec.outcome(invariance, trank(substitute_linear(f, A)).value == t.value, repro("invariance"));
  };

  // Exhaustive: every nonzero binary quadratic form in three variables.
  const Field F2 = Field::make(2);
  const MonomialBasis quad(3, 2);
  for (std::uint64_t mask = 1; mask < (1u << quad.size()); ++mask) {
    Vector v(quad.size(), F2.zero());
    for (std::size_t i = 0; i < quad.size(); ++i)
      if (mask >> i & 1) v[i] = F2.one();
    check_one(HomPoly::from_coefficients(F2, quad, v));
  }

  const std::size_t samples = opts.samples ? opts.samples : 100;
  for (std::size_t i = 0; i < samples; ++i) {
    const Field F = Field::make(i % 2 ? 3 : 2);
    const HomPoly f = random_poly(F, pick(rng, 2, 4), static_cast<unsigned>(pick(rng, 2, 3)), pick(rng, 1, 6), rng);
    check_one(f);
    const HomPoly g = random_poly(F, f.n_vars(), f.degree(), pick(rng, 1, 4), rng);
    rec.generated(wedge);
    const MonomialBasis basis(f.n_vars(), f.degree());
    if (rank(Matrix::from_rows(F, basis.size(), {f.coefficients(basis), g.coefficients(basis)})) < 2) {
      rec.filtered(wedge);
      continue;
    }
    rec.outcome(wedge, trank_collection({f, g}).value >= 1, [&] { return poly_reproducer("wedge", f, "partner " + g.to_string()); });
  }
  return rep;
}

}  // namespace srk

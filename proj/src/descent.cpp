#include "srk/descent.hpp"

#include <algorithm>
#include <bit>

namespace srk {

std::vector<Subspace> dedup_subspaces(const std::vector<Subspace>& in) {
  std::vector<Subspace> out;
  for (const auto& S : in)
    if (std::find(out.begin(), out.end(), S) == out.end()) out.push_back(S);
  return out;
}

namespace {

void check_collection(const std::vector<Subspace>& L, std::size_t cap) {
  if (L.empty()) fail(ErrorCode::EmptyCollection, "refinement of an empty collection");
  for (const auto& S : L) {
    if (S.ambient() != L[0].ambient()) fail(ErrorCode::AmbientMismatch, "collection members live in different spaces");
    if (!(S.field() == L[0].field())) fail(ErrorCode::FieldMismatch, "collection members over different fields");
  }
  if (L.size() > cap)
    fail(ErrorCode::CollectionTooLarge,
         std::to_string(L.size()) + " distinct subspaces exceed the cap of " + std::to_string(cap));
  if (L.size() > 62) fail(ErrorCode::CollectionTooLarge, "at most 62 subspaces are supported");
}

using Combine = Subspace (*)(std::span<const Subspace>);

// Shared body of both refinement forms: `join` builds the target from a
// subset, `meet` builds the emitted subspace.
Refinement refine(const std::vector<Subspace>& raw, std::size_t cap, Combine join, Combine meet) {
  Refinement res;
  res.input = dedup_subspaces(raw);
  check_collection(res.input, cap);
  const std::size_t s = res.input.size();
  res.total = join(res.input);
  std::vector<std::uint64_t> found;
  std::vector<Subspace> picked;
  for (std::size_t k = 1; k <= s; ++k) {
    // Lexicographic k-subsets of [0, s).
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      std::uint64_t mask = 0;
      for (auto i : idx) mask |= 1ull << i;
      const bool dominated = std::any_of(found.begin(), found.end(), [&](std::uint64_t m) { return (mask & m) == m; });
      if (!dominated) {
        picked.clear();
        for (auto i : idx) picked.push_back(res.input[i]);
        if (join(picked) == res.total) {
          found.push_back(mask);
          res.minimal_sets.push_back(idx);
          Subspace out = meet(picked);
          if (std::find(res.output.begin(), res.output.end(), out) == res.output.end()) res.output.push_back(out);
        }
      }
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == s - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return res;
}

Subspace sum_of(std::span<const Subspace> parts) { return subspace_sum(parts); }
Subspace meet_of(std::span<const Subspace> parts) { return subspace_intersect(parts); }

std::size_t max_codim(const std::vector<Subspace>& L) {
  std::size_t r = 0;
  for (const auto& S : L) r = std::max(r, S.codim());
  return r;
}

}  // namespace

Refinement refine_collection(const std::vector<Subspace>& L, std::size_t cap) {
  return refine(L, cap, sum_of, meet_of);
}

Refinement refine_collection_dual(const std::vector<Subspace>& P, std::size_t cap) {
  return refine(P, cap, meet_of, sum_of);
}

mpz_class descent_bound(std::size_t r, unsigned d) {
  mpz_class b;
  if (d == 0) return 1;
  const unsigned long ex = 1ul << std::min(d - 1, 62u);
  mpz_ui_pow_ui(b.get_mpz_t(), r, ex);
  return b;
}

DescentCertificate theorem_d_descent(const std::vector<Subspace>& L, unsigned d, std::size_t cap) {
  if (d == 0) fail(ErrorCode::InvalidArgument, "degree must be >= 1");
  DescentCertificate cert;
  cert.degree = d;
  cert.input = dedup_subspaces(L);
  check_collection(cert.input, cap);
  cert.r = std::max<std::size_t>(2, max_codim(cert.input));
  std::vector<Subspace> cur = cert.input;
  for (unsigned level = 1; level < d; ++level) {
    auto step = refine_collection(cur, cap);
    cert.levels.push_back({step.input.size(), std::move(step.minimal_sets)});
    cur = std::move(step.output);
  }
  cert.final_collection = cur;
  cert.L0 = subspace_sum(std::span<const Subspace>(cur));
  cert.codim_L0 = cert.L0.codim();
  cert.bound = descent_bound(cert.r, d);
  cert.within_bound = mpz_class(static_cast<unsigned long>(cert.codim_L0)) <= cert.bound;
  return cert;
}

DescentCertificate theorem_d_descent(const HomPoly& f, const std::vector<Subspace>& L, bool strict,
                                     std::size_t cap) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "descent for the zero polynomial");
  for (std::size_t i = 0; i < L.size(); ++i) {
    if (L[i].ambient() != f.n_vars()) fail(ErrorCode::AmbientMismatch, "subspace ambient differs from variable count");
    if (!vanishes_on(f, L[i]))
      fail(ErrorCode::InputNotOnHypersurface, "input subspace #" + std::to_string(i) + " is not contained in f = 0");
  }
  auto cert = theorem_d_descent(L, f.degree(), cap);
  cert.on_hypersurface = vanishes_on(f, cert.L0);
  cert.containment_checked = true;
  if (strict && !cert.on_hypersurface) fail(ErrorCode::TheoremViolation, "descended subspace is not contained in f = 0");
  if (strict && !cert.within_bound)
    fail(ErrorCode::TheoremViolation, "descended subspace has codimension " + std::to_string(cert.codim_L0) +
                                          " above the bound " + cert.bound.get_str());
  return cert;
}

namespace {

void check_galois(const Subspace& L, unsigned e) {
  const Field& F = L.field();
  if (!F.is_finite()) fail(ErrorCode::RationalFieldUnsupported, "Frobenius needs a finite field");
  if (e < 1 || F.degree() % e != 0)
    fail(ErrorCode::InvalidArgument, "subfield exponent " + std::to_string(e) + " does not divide the degree " +
                                         std::to_string(F.degree()));
}

}  // namespace

std::vector<Subspace> frobenius_orbit(const Subspace& L, unsigned e) {
  check_galois(L, e);
  std::vector<Subspace> orbit{L};
  for (Subspace cur = L.frobenius(e); !(cur == L); cur = cur.frobenius(e)) orbit.push_back(cur);
  return orbit;
}

bool is_rational(const Subspace& L, unsigned e) {
  check_galois(L, e);
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (std::size_t j = 0; j < L.ambient(); ++j) {
      const auto& c = L.basis()(i, j);
      if (!(c.frobenius(e) == c)) return false;
    }
  return true;
}

DescentCertificate galois_descent(const HomPoly& f, const Subspace& L, std::size_t cap) {
  const Field& base = f.field();
  const Field& big = L.field();
  if (!base.is_finite() || !big.is_finite()) fail(ErrorCode::RationalFieldUnsupported, "Galois descent needs finite fields");
  if (L.ambient() != f.n_vars()) fail(ErrorCode::AmbientMismatch, "subspace ambient differs from variable count");
  const FieldEmbedding emb(base, big);
  const unsigned e = emb.subfield_exponent();
  const HomPoly fE = base_change(f, big);
  if (!vanishes_on(fE, L)) fail(ErrorCode::InputNotOnHypersurface, "input subspace is not contained in f = 0");

  const auto orbit = frobenius_orbit(L, e);
  auto cert = theorem_d_descent(fE, orbit, true, cap);
  cert.orbit_size = orbit.size();
  if (!is_rational(cert.L0, e)) fail(ErrorCode::RationalityFailure, "descended subspace is not Frobenius-stable");
  auto down = descend_subspace(cert.L0, emb);
  if (!down) fail(ErrorCode::RationalityFailure, "descended subspace has entries outside the base field");
  cert.L0 = *down;
  cert.rational = true;
  cert.on_hypersurface = vanishes_on(f, cert.L0);
  if (!cert.on_hypersurface) fail(ErrorCode::TheoremViolation, "descended subspace is not on f = 0 over the base field");
  return cert;
}

FamilyDescent family_descent(const std::vector<HomPoly>& family, const HomPoly& f, const Subspace& L,
                             const Field& base, std::size_t cap) {
  const Field& E = f.field();
  if (!E.is_finite() || !base.is_finite()) fail(ErrorCode::RationalFieldUnsupported, "family descent needs finite fields");
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "family descent for the zero polynomial");
  if (!(L.field() == E)) fail(ErrorCode::FieldMismatch, "subspace and polynomial over different fields");
  if (L.ambient() != f.n_vars()) fail(ErrorCode::AmbientMismatch, "subspace ambient differs from variable count");
  const FieldEmbedding emb(base, E);
  const unsigned e = emb.subfield_exponent();
  const unsigned m = E.degree() / e;
  const MonomialBasis basis(f.n_vars(), f.degree());

  // f must lie in the span of the family.
  std::vector<Vector> fam_rows;
  for (const auto& h : family) {
    if (!(h.field() == E) || h.n_vars() != f.n_vars()) fail(ErrorCode::FieldMismatch, "family member over another ring");
    if (h.is_zero()) continue;
    if (h.degree() != f.degree()) fail(ErrorCode::DegreeMismatch, "family members of different degrees");
    fam_rows.push_back(h.coefficients(basis));
  }
  const Subspace fam_span = Subspace::span(E, basis.size(), fam_rows);
  if (fam_span.dim() > cap)
    fail(ErrorCode::CollectionTooLarge, "family spans dimension " + std::to_string(fam_span.dim()));
  if (!fam_span.contains(f.coefficients(basis))) fail(ErrorCode::InvalidArgument, "f is not in the span of the family");
  if (!in_ideal_of(f, L)) fail(ErrorCode::InputNotOnHypersurface, "f is not in the ideal of the given subspace");

  std::vector<HomPoly> conj;
  std::vector<Vector> conj_rows;
  for (unsigned i = 0; i < m; ++i) {
    conj.push_back(i == 0 ? f : f.frobenius(e * i));
    conj_rows.push_back(conj.back().coefficients(basis));
  }
  const Subspace F0 = Subspace::span(E, basis.size(), conj_rows);

  HomPoly trace(E, f.n_vars(), f.degree());
  for (const auto& c : conj) trace = trace + c;
  bool from_trace = !trace.is_zero();
  HomPoly f0E = trace;
  if (!from_trace) {
    if (F0.dim() == 0 || !is_rational(F0, e))
      fail(ErrorCode::ZeroTraceFallbackFailed, "conjugate span has no rational canonical vector");
    f0E = HomPoly::from_coefficients(E, basis, F0.basis().row_vector(0));
  }
  auto f0 = descend_coefficients(f0E, emb);
  if (!f0) fail(ErrorCode::ZeroTraceFallbackFailed, "conjugate combination is not defined over the base field");

  // Conjugates whose f-images span F0, chosen greedily in order.
  std::vector<unsigned> used;
  Subspace acc(E, basis.size());
  std::vector<Subspace> Ls;
  for (unsigned i = 0; i < m && acc.dim() < F0.dim(); ++i) {
    Subspace next = subspace_sum(acc, Subspace::span(E, basis.size(), {conj_rows[i]}));
    if (next.dim() == acc.dim()) continue;
    acc = next;
    used.push_back(i);
    Ls.push_back(i == 0 ? L : L.frobenius(e * i));
  }
  Subspace P_sum = subspace_sum(std::span<const Subspace>(Ls));
  if (!in_ideal_of(f0E, P_sum)) fail(ErrorCode::InternalError, "f0 is not in the ideal of the summed conjugates");

  auto cert = galois_descent(*f0, P_sum.annihilator(), cap);
  return FamilyDescent{*f0, from_trace, F0.dim(), std::move(used), std::move(P_sum), std::move(cert)};
}

}  // namespace srk

#include "srk/poly.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <numeric>

#include "arith.hpp"

namespace srk {

using detail::with_arith;

bool grevlex_greater(const Monomial& a, const Monomial& b) {
  const auto da = std::accumulate(a.begin(), a.end(), 0u);
  const auto db = std::accumulate(b.begin(), b.end(), 0u);
  if (da != db) return da > db;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

namespace {

void compositions(std::size_t n, unsigned d, std::size_t pos, Monomial& cur, std::vector<Monomial>& out) {
  if (pos + 1 == n) {
    cur[pos] = static_cast<std::uint16_t>(d);
    out.push_back(cur);
    return;
  }
  for (unsigned k = 0; k <= d; ++k) {
    cur[pos] = static_cast<std::uint16_t>(d - k);
    compositions(n, k, pos + 1, cur, out);
  }
}

unsigned total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0u); }

// Multiplication-by-variable tables for the dense substitution kernel.
struct MulTables {
  std::size_t n;
  unsigned d;
  std::vector<MonomialBasis> bases;               // degrees 0..d
  std::vector<std::vector<std::uint32_t>> up;     // up[j][idx * n + v] -> index in degree j+1
};

std::shared_ptr<const MulTables> mul_tables(std::size_t n, unsigned d) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, unsigned>, std::shared_ptr<const MulTables>> cache;
  std::lock_guard lock(mu);
  auto key = std::make_pair(n, d);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  auto t = std::make_shared<MulTables>();
  t->n = n;
  t->d = d;
  for (unsigned j = 0; j <= d; ++j) t->bases.emplace_back(n, j);
  for (unsigned j = 0; j < d; ++j) {
    const auto& lo = t->bases[j];
    const auto& hi = t->bases[j + 1];
    std::vector<std::uint32_t> tab(lo.size() * n);
    for (std::size_t idx = 0; idx < lo.size(); ++idx) {
      Monomial m = lo[idx];
      for (std::size_t v = 0; v < n; ++v) {
        ++m[v];
        tab[idx * n + v] = static_cast<std::uint32_t>(hi.index_of(m));
        --m[v];
      }
    }
    t->up.push_back(std::move(tab));
  }
  cache.emplace(key, t);
  return t;
}

// f(forms): old variable i becomes sum over forms[i] of coeff * y_var.
template <class Arith>
HomPoly substitute_dense(const Arith& ar, const HomPoly& f,
                         const std::vector<std::vector<std::pair<std::size_t, typename Arith::T>>>& forms,
                         std::size_t n_new) {
  using T = typename Arith::T;
  const unsigned d = f.degree();
  HomPoly zero(f.field(), n_new, d);
  if (f.is_zero()) return zero;
  if (n_new == 0) return d == 0 ? f : zero;
  auto tables = mul_tables(n_new, d);
  std::vector<T> acc(tables->bases[d].size(), ar.zero());
  std::vector<T> cur, next;
  for (const auto& term : f.terms()) {
    cur.assign(1, ar.get(term.coeff));
    unsigned j = 0;
    bool dead = false;
    for (std::size_t i = 0; i < term.exponents.size() && !dead; ++i) {
      for (unsigned k = 0; k < term.exponents[i]; ++k) {
        const auto& form = forms[i];
        if (form.empty()) {
          dead = true;
          break;
        }
        next.assign(tables->bases[j + 1].size(), ar.zero());
        const auto& up = tables->up[j];
        for (std::size_t idx = 0; idx < cur.size(); ++idx) {
          if (ar.is_zero(cur[idx])) continue;
          for (const auto& [v, c] : form) {
            T& slot = next[up[idx * n_new + v]];
            slot = ar.add(slot, ar.mul(cur[idx], c));
          }
        }
        std::swap(cur, next);
        ++j;
      }
    }
    if (dead) continue;
    for (std::size_t idx = 0; idx < cur.size(); ++idx)
      if (!ar.is_zero(cur[idx])) acc[idx] = ar.add(acc[idx], cur[idx]);
  }
  std::vector<Term> terms;
  const auto& basis = tables->bases[d];
  for (std::size_t idx = 0; idx < acc.size(); ++idx)
    if (!ar.is_zero(acc[idx])) terms.push_back({basis[idx], ar.put(acc[idx])});
  return HomPoly::normalize(f.field(), n_new, std::move(terms), d);
}

template <class Arith>
auto forms_from_matrix(const Arith& ar, const Matrix& A) {
  std::vector<std::vector<std::pair<std::size_t, typename Arith::T>>> forms(A.rows());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j)
      if (!A(i, j).is_zero()) forms[i].emplace_back(j, ar.get(A(i, j)));
  return forms;
}

void require_field(const HomPoly& f, const Field& F) {
  if (!(f.field() == F)) fail(ErrorCode::FieldMismatch, "polynomial over " + f.field().spec() + ", expected " + F.spec());
}

std::string render_coefficient(const FieldElement& c, bool& negative) {
  negative = false;
  const Field F = c.field();
  if (!F.is_finite()) {
    mpq_class v = c.rational();
    if (v < 0) {
      negative = true;
      v = -v;
    }
    if (v.get_den() == 1) return v.get_str();
    return "(" + v.get_str() + ")";
  }
  if (c.code() < F.characteristic()) return std::to_string(c.code());
  return "(" + c.to_string() + ")";
}

}  // namespace

// ---------------------------------------------------------------------------

MonomialBasis::MonomialBasis(std::size_t n_vars, unsigned degree) : n_(n_vars), degree_(degree) {
  if (n_vars == 0) {
    if (degree == 0) monomials_.emplace_back();
  } else {
    Monomial cur(n_vars, 0);
    compositions(n_vars, degree, 0, cur, monomials_);
  }
  std::sort(monomials_.begin(), monomials_.end(), grevlex_greater);
  for (std::size_t i = 0; i < monomials_.size(); ++i) index_.emplace(monomials_[i], i);
}

std::size_t MonomialBasis::index_of(const Monomial& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) fail(ErrorCode::DegreeMismatch, "monomial outside the basis");
  return it->second;
}

std::uint64_t monomial_count(std::size_t n_vars, unsigned degree) {
  if (n_vars == 0) return degree == 0 ? 1 : 0;
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), degree + n_vars - 1, n_vars - 1);
  return c.fits_ulong_p() ? c.get_ui() : UINT64_MAX;
}

// ---------------------------------------------------------------------------

HomPoly::HomPoly(Field F, std::size_t n_vars, unsigned degree) : field_(F), n_(n_vars), degree_(degree) {}

HomPoly HomPoly::normalize(Field F, std::size_t n_vars, std::vector<Term> raw, unsigned degree) {
  std::map<Monomial, FieldElement> acc;
  bool have_degree = false;
  for (auto& t : raw) {
    if (t.exponents.size() != n_vars)
      fail(ErrorCode::DimensionMismatch, "exponent vector length differs from variable count");
    const unsigned td = total_degree(t.exponents);
    if (!have_degree) {
      degree = td;
      have_degree = true;
    } else if (td != degree) {
      fail(ErrorCode::InhomogeneousInput, "terms of degrees " + std::to_string(degree) + " and " + std::to_string(td));
    }
    if (t.coeff.attached() && !(t.coeff.field() == F)) fail(ErrorCode::FieldMismatch, "coefficient from another field");
    auto [it, inserted] = acc.emplace(std::move(t.exponents), t.coeff.attached() ? t.coeff : F.zero());
    if (!inserted) it->second += t.coeff;
  }
  HomPoly out(F, n_vars, degree);
  for (auto& [e, c] : acc)
    if (!c.is_zero()) out.terms_.push_back({e, c});
  std::sort(out.terms_.begin(), out.terms_.end(),
            [](const Term& a, const Term& b) { return grevlex_greater(a.exponents, b.exponents); });
  return out;
}

HomPoly HomPoly::monomial(Field F, const Monomial& e, FieldElement c) {
  return normalize(F, e.size(), {{e, std::move(c)}}, total_degree(e));
}

HomPoly HomPoly::linear(Field F, const Vector& coeffs) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].is_zero()) continue;
    Monomial e(coeffs.size(), 0);
    e[i] = 1;
    terms.push_back({e, coeffs[i]});
  }
  return normalize(F, coeffs.size(), std::move(terms), 1);
}

HomPoly HomPoly::from_coefficients(Field F, const MonomialBasis& basis, const Vector& coeffs) {
  if (coeffs.size() != basis.size()) fail(ErrorCode::DimensionMismatch, "coefficient vector length");
  std::vector<Term> terms;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (!coeffs[i].is_zero()) terms.push_back({basis[i], coeffs[i]});
  return normalize(F, basis.n_vars(), std::move(terms), basis.degree());
}

FieldElement HomPoly::coefficient(const Monomial& e) const {
  for (const auto& t : terms_)
    if (t.exponents == e) return t.coeff;
  return field_.zero();
}

Vector HomPoly::coefficients(const MonomialBasis& basis) const {
  if (basis.n_vars() != n_) fail(ErrorCode::AmbientMismatch, "monomial basis has a different variable count");
  if (basis.degree() != degree_) fail(ErrorCode::DegreeMismatch, "monomial basis has a different degree");
  Vector v(basis.size(), field_.zero());
  for (const auto& t : terms_) v[basis.index_of(t.exponents)] = t.coeff;
  return v;
}

std::vector<bool> HomPoly::support_variables() const {
  std::vector<bool> used(n_, false);
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < n_; ++i)
      if (t.exponents[i]) used[i] = true;
  return used;
}

HomPoly HomPoly::operator-() const {
  HomPoly out = *this;
  for (auto& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

HomPoly HomPoly::scaled(const FieldElement& c) const {
  if (c.is_zero()) return HomPoly(field_, n_, degree_);
  HomPoly out = *this;
  for (auto& t : out.terms_) t.coeff *= c;
  return out;
}

HomPoly HomPoly::frobenius(unsigned e) const {
  HomPoly out = *this;
  for (auto& t : out.terms_) t.coeff = t.coeff.frobenius(e);
  return out;
}

HomPoly operator+(const HomPoly& a, const HomPoly& b) {
  if (!(a.field_ == b.field_)) fail(ErrorCode::FieldMismatch, "sum of polynomials over different fields");
  if (a.n_ != b.n_) fail(ErrorCode::DimensionMismatch, "sum of polynomials in different variable counts");
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.degree_ != b.degree_) fail(ErrorCode::InhomogeneousInput, "sum of polynomials of different degrees");
  std::vector<Term> raw = a.terms_;
  raw.insert(raw.end(), b.terms_.begin(), b.terms_.end());
  return HomPoly::normalize(a.field_, a.n_, std::move(raw), a.degree_);
}

bool operator==(const HomPoly& a, const HomPoly& b) {
  if (!(a.field_ == b.field_) || a.n_ != b.n_) return false;
  if (a.is_zero() && b.is_zero()) return true;
  if (a.degree_ != b.degree_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].exponents != b.terms_[i].exponents || !(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
  return true;
}

std::vector<std::string> default_variable_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  return names;
}

std::string HomPoly::to_string() const { return to_string(default_variable_names(n_)); }

std::string HomPoly::to_string(const std::vector<std::string>& vars) const {
  if (vars.size() != n_) fail(ErrorCode::DimensionMismatch, "variable name count");
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    bool negative = false;
    std::string coeff = render_coefficient(t.coeff, negative);
    std::string mono;
    for (std::size_t i = 0; i < n_; ++i) {
      if (!t.exponents[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += vars[i];
      if (t.exponents[i] > 1) mono += "^" + std::to_string(t.exponents[i]);
    }
    std::string body;
    if (mono.empty()) body = coeff;
    else if (coeff == "1") body = mono;
    else body = coeff + "*" + mono;
    if (out.empty()) out = negative ? "-" + body : body;
    else out += (negative ? " - " : " + ") + body;
  }
  return out;
}

// ---------------------------------------------------------------------------

HomPoly poly_normalize(Field F, std::size_t n_vars, std::vector<Term> raw) {
  return HomPoly::normalize(F, n_vars, std::move(raw));
}

HomPoly poly_mul(const HomPoly& f, const HomPoly& g) {
  if (!(f.field() == g.field())) fail(ErrorCode::FieldMismatch, "product of polynomials over different fields");
  if (f.n_vars() != g.n_vars()) fail(ErrorCode::DimensionMismatch, "product of polynomials in different variable counts");
  const unsigned d = f.degree() + g.degree();
  std::vector<Term> raw;
  raw.reserve(f.size() * g.size());
  for (const auto& a : f.terms())
    for (const auto& b : g.terms()) {
      Monomial e = a.exponents;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint16_t>(e[i] + b.exponents[i]);
      raw.push_back({std::move(e), a.coeff * b.coeff});
    }
  return HomPoly::normalize(f.field(), f.n_vars(), std::move(raw), d);
}

HomPoly poly_pow(const HomPoly& f, unsigned m) {
  if (m == 0) fail(ErrorCode::InvalidArgument, "power must be >= 1");
  HomPoly r = f;
  for (unsigned i = 1; i < m; ++i) r = poly_mul(r, f);
  return r;
}

HomPoly partial_derivative(const HomPoly& f, std::size_t var) {
  if (var >= f.n_vars()) fail(ErrorCode::DimensionMismatch, "derivative variable out of range");
  const unsigned d = f.degree() == 0 ? 0 : f.degree() - 1;
  std::vector<Term> raw;
  for (const auto& t : f.terms()) {
    if (!t.exponents[var]) continue;
    Monomial e = t.exponents;
    const auto k = e[var]--;
    raw.push_back({std::move(e), t.coeff * f.field().from_int(k)});
  }
  return HomPoly::normalize(f.field(), f.n_vars(), std::move(raw), d);
}

HomPoly substitute_linear(const HomPoly& f, const Matrix& A) {
  if (A.rows() != f.n_vars())
    fail(ErrorCode::DimensionMismatch, "substitution matrix needs one row per variable (" +
                                           std::to_string(f.n_vars()) + "), got " + std::to_string(A.rows()));
  require_field(f, A.field());
  return with_arith(f.field(), [&](const auto& ar) { return substitute_dense(ar, f, forms_from_matrix(ar, A), A.cols()); });
}

HomPoly restrict_to_annihilator(const HomPoly& f, const Subspace& P) {
  if (P.ambient() != f.n_vars())
    fail(ErrorCode::AmbientMismatch, "subspace ambient " + std::to_string(P.ambient()) + " vs " +
                                         std::to_string(f.n_vars()) + " variables");
  require_field(f, P.field());
  const std::size_t n = f.n_vars();
  std::vector<std::size_t> slot(n, SIZE_MAX);  // free column -> new variable
  std::vector<bool> is_pivot(n, false);
  for (auto p : P.pivots()) is_pivot[p] = true;
  std::size_t k = 0;
  for (std::size_t j = 0; j < n; ++j)
    if (!is_pivot[j]) slot[j] = k++;
  return with_arith(f.field(), [&](const auto& ar) {
    using T = typename std::decay_t<decltype(ar)>::T;
    std::vector<std::vector<std::pair<std::size_t, T>>> forms(n);
    for (std::size_t j = 0; j < n; ++j)
      if (!is_pivot[j]) forms[j].emplace_back(slot[j], ar.one());
    const Matrix& B = P.basis();
    for (std::size_t i = 0; i < P.dim(); ++i) {
      auto& form = forms[P.pivots()[i]];
      for (std::size_t j = P.pivots()[i] + 1; j < n; ++j)
        if (!is_pivot[j] && !B(i, j).is_zero()) form.emplace_back(slot[j], ar.neg(ar.get(B(i, j))));
    }
    return substitute_dense(ar, f, forms, k);
  });
}

bool in_ideal_of(const HomPoly& f, const Subspace& P) { return restrict_to_annihilator(f, P).is_zero(); }

HomPoly restrict_to_subspace(const HomPoly& f, const Subspace& L) {
  if (L.ambient() != f.n_vars()) fail(ErrorCode::AmbientMismatch, "subspace ambient differs from variable count");
  return substitute_linear(f, L.basis().transpose());
}

bool vanishes_on(const HomPoly& f, const Subspace& L) { return restrict_to_subspace(f, L).is_zero(); }

HomPoly base_change(const HomPoly& f, const Field& target) {
  if (f.field() == target) return f;
  const FieldEmbedding emb(f.field(), target);
  std::vector<Term> raw;
  for (const auto& t : f.terms()) raw.push_back({t.exponents, emb.map(t.coeff)});
  return HomPoly::normalize(target, f.n_vars(), std::move(raw), f.degree());
}

HomPoly base_change(const HomPoly& f, unsigned e) {
  if (!f.field().is_finite()) fail(ErrorCode::RationalFieldUnsupported, "base change needs a finite field");
  if (e < 1) fail(ErrorCode::InvalidArgument, "extension degree must be >= 1");
  return base_change(f, Field::make(f.field().characteristic(), f.field().degree() * e));
}

std::optional<HomPoly> descend_coefficients(const HomPoly& f, const FieldEmbedding& emb) {
  require_field(f, emb.target());
  std::vector<Term> raw;
  for (const auto& t : f.terms()) {
    auto c = emb.pull(t.coeff);
    if (!c) return std::nullopt;
    raw.push_back({t.exponents, *c});
  }
  return HomPoly::normalize(emb.source(), f.n_vars(), std::move(raw), f.degree());
}

Subspace base_change(const Subspace& S, const FieldEmbedding& emb) {
  Matrix B(emb.target(), S.dim(), S.ambient());
  for (std::size_t i = 0; i < S.dim(); ++i)
    for (std::size_t j = 0; j < S.ambient(); ++j) B(i, j) = emb.map(S.basis()(i, j));
  return Subspace::from_canonical(std::move(B), S.pivots());
}

std::optional<Subspace> descend_subspace(const Subspace& S, const FieldEmbedding& emb) {
  Matrix B(emb.source(), S.dim(), S.ambient());
  for (std::size_t i = 0; i < S.dim(); ++i)
    for (std::size_t j = 0; j < S.ambient(); ++j) {
      auto c = emb.pull(S.basis()(i, j));
      if (!c) return std::nullopt;
      B(i, j) = *c;
    }
  return Subspace::from_canonical(std::move(B), S.pivots());
}

// ---------------------------------------------------------------------------

namespace {

// Rows g * M for every monomial M of degree m - deg g, in basis(n, m) coordinates.
void append_multiples(const HomPoly& g, const MonomialBasis& target, std::vector<Vector>& rows) {
  const unsigned m = target.degree();
  if (g.is_zero() || g.degree() > m) return;
  const MonomialBasis shifts(g.n_vars(), m - g.degree());
  for (const auto& s : shifts.monomials()) {
    Vector row(target.size(), g.field().zero());
    for (const auto& t : g.terms()) {
      Monomial e = t.exponents;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint16_t>(e[i] + s[i]);
      row[target.index_of(e)] = t.coeff;
    }
    rows.push_back(std::move(row));
  }
}

// Every product of `a` basis vectors of P (with repetition), as polynomials.
void power_products(const std::vector<HomPoly>& forms, unsigned a, std::size_t start, const HomPoly& acc,
                    std::vector<HomPoly>& out) {
  if (a == 0) {
    out.push_back(acc);
    return;
  }
  for (std::size_t i = start; i < forms.size(); ++i) power_products(forms, a - 1, i, poly_mul(acc, forms[i]), out);
}

}  // namespace

GradedSubspace ideal_graded_piece(const std::vector<std::pair<Subspace, unsigned>>& generators, unsigned m) {
  if (generators.empty()) fail(ErrorCode::EmptyCollection, "ideal with no generators");
  const Field F = generators[0].first.field();
  const std::size_t n = generators[0].first.ambient();
  const MonomialBasis target(n, m);
  std::optional<Subspace> acc;
  for (const auto& [P, a] : generators) {
    if (P.ambient() != n) fail(ErrorCode::AmbientMismatch, "generators live in different spaces");
    if (!(P.field() == F)) fail(ErrorCode::FieldMismatch, "generators over different fields");
    Subspace piece(F, target.size());
    if (a == 0) {
      piece = Subspace::full(F, target.size());
    } else if (m >= a && P.dim() > 0) {
      std::vector<HomPoly> forms;
      for (std::size_t i = 0; i < P.dim(); ++i) forms.push_back(HomPoly::linear(F, P.basis().row_vector(i)));
      std::vector<HomPoly> products;
      Monomial one(n, 0);
      power_products(forms, a, 0, HomPoly::monomial(F, one, F.one()), products);
      std::vector<Vector> rows;
      for (const auto& g : products) append_multiples(g, target, rows);
      piece = Subspace::span(F, target.size(), rows);
    }
    acc = acc ? subspace_intersect(*acc, piece) : piece;
  }
  return {n, m, *acc};
}

GradedSubspace ideal_piece_generated(Field F, std::size_t n_vars, const std::vector<HomPoly>& generators, unsigned m) {
  const MonomialBasis target(n_vars, m);
  std::vector<Vector> rows;
  for (const auto& g : generators) {
    require_field(g, F);
    if (g.n_vars() != n_vars) fail(ErrorCode::AmbientMismatch, "generator in a different variable count");
    append_multiples(g, target, rows);
  }
  return {n_vars, m, Subspace::span(F, target.size(), rows)};
}

GradedSubspace graded_intersect(const GradedSubspace& a, const GradedSubspace& b) {
  if (a.n_vars != b.n_vars) fail(ErrorCode::AmbientMismatch, "graded pieces in different variable counts");
  if (a.degree != b.degree) fail(ErrorCode::DegreeMismatch, "graded pieces of different degrees");
  return {a.n_vars, a.degree, subspace_intersect(a.space, b.space)};
}

bool membership_in_graded(const HomPoly& f, const GradedSubspace& G) {
  if (f.n_vars() != G.n_vars) fail(ErrorCode::AmbientMismatch, "polynomial and graded piece differ in variables");
  if (f.is_zero()) return true;
  if (f.degree() != G.degree)
    fail(ErrorCode::DegreeMismatch, "polynomial of degree " + std::to_string(f.degree()) + " vs piece of degree " +
                                        std::to_string(G.degree));
  const MonomialBasis basis(f.n_vars(), f.degree());
  return G.space.contains(f.coefficients(basis));
}

}  // namespace srk

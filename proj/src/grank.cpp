#include "srk/grank.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <map>
#include <random>
#include <set>
#include <thread>

#include "srk/lp.hpp"

namespace srk {

PSMatrix::PSMatrix(Field F, std::size_t n, unsigned N) : field_(F), n_(n), N_(N) {
  if (N == 0) fail(ErrorCode::InvalidArgument, "truncation order must be >= 1");
  entries_.assign(n * n, Series(N, F.zero()));
}

PSMatrix PSMatrix::diagonal(Field F, const std::vector<unsigned>& exponents, unsigned N) {
  PSMatrix g(F, exponents.size(), N);
  for (std::size_t i = 0; i < exponents.size(); ++i)
    if (exponents[i] < N) g(i, i)[exponents[i]] = F.one();
  return g;
}

PSMatrix PSMatrix::constant(const Matrix& A, unsigned N) {
  if (A.rows() != A.cols()) fail(ErrorCode::DimensionMismatch, "group element must be square");
  PSMatrix g(A.field(), A.rows(), N);
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) g(i, j)[0] = A(i, j);
  return g;
}

std::optional<unsigned> series_valuation(const Series& s) {
  for (std::size_t k = 0; k < s.size(); ++k)
    if (!s[k].is_zero()) return static_cast<unsigned>(k);
  return std::nullopt;
}

namespace {

Series series_mul(const Series& a, const Series& b) {
  const std::size_t N = a.size();
  Series out(N, a[0].field().zero());
  for (std::size_t i = 0; i < N; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < N; ++j)
      if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
  }
  return out;
}

void series_add(Series& acc, const Series& b, bool negate = false) {
  for (std::size_t i = 0; i < acc.size(); ++i)
    if (!b[i].is_zero()) acc[i] = negate ? acc[i] - b[i] : acc[i] + b[i];
}

// Determinant of a k x k series matrix by expansion over column subsets.
template <class Entry>
Series series_det(std::size_t k, const Field& F, unsigned N, Entry entry) {
  std::vector<Series> dp(std::size_t{1} << k);
  dp[0] = Series(N, F.zero());
  dp[0][0] = F.one();
  for (std::size_t mask = 1; mask < dp.size(); ++mask) {
    const std::size_t row = std::popcount(mask) - 1;
    Series acc(N, F.zero());
    for (std::size_t j = 0; j < k; ++j) {
      if (!(mask >> j & 1)) continue;
      const auto& sub = dp[mask & ~(std::size_t{1} << j)];
      if (!series_valuation(sub)) continue;
      const bool neg = std::popcount(mask >> (j + 1)) & 1;
      series_add(acc, series_mul(entry(row, j), sub), neg);
    }
    dp[mask] = std::move(acc);
  }
  return dp.back();
}

using SeriesPoly = std::map<Monomial, Series>;

// g . f with e_j -> sum_i g_ij e_i.
SeriesPoly act(const PSMatrix& g, const HomPoly& f) {
  if (!(g.field() == f.field())) fail(ErrorCode::FieldMismatch, "group element and polynomial over different fields");
  if (g.size() != f.n_vars()) fail(ErrorCode::DimensionMismatch, "group element size differs from variable count");
  const Field& F = f.field();
  const unsigned N = g.truncation();
  const std::size_t n = f.n_vars();
  SeriesPoly total;
  for (const auto& t : f.terms()) {
    Series c(N, F.zero());
    c[0] = t.coeff;
    SeriesPoly cur{{Monomial(n, 0), c}};
    for (std::size_t j = 0; j < n; ++j)
      for (unsigned k = 0; k < t.exponents[j]; ++k) {
        SeriesPoly next;
        for (const auto& [m, s] : cur)
          for (std::size_t i = 0; i < n; ++i) {
            if (!series_valuation(g(i, j))) continue;
            Monomial m2 = m;
            ++m2[i];
            auto [it, fresh] = next.try_emplace(std::move(m2), Series(N, F.zero()));
            series_add(it->second, series_mul(s, g(i, j)));
          }
        cur = std::move(next);
      }
    for (auto& [m, s] : cur) {
      auto [it, fresh] = total.try_emplace(m, Series(N, F.zero()));
      series_add(it->second, s);
    }
  }
  return total;
}

unsigned checked_det_valuation(const PSMatrix& g) {
  const auto v = series_valuation(
      series_det(g.size(), g.field(), g.truncation(), [&](std::size_t i, std::size_t j) -> const Series& { return g(i, j); }));
  if (!v)
    fail(ErrorCode::TruncationTooSmall,
         "val det g >= truncation order " + std::to_string(g.truncation()) + "; retry with a larger --trunc");
  return *v;
}

void check_action_valuation(std::optional<unsigned> v, unsigned N) {
  if (!v) fail(ErrorCode::TruncationTooSmall, "valuation of the action >= truncation order " + std::to_string(N));
  if (*v == 0) fail(ErrorCode::ActionDoesNotVanish, "g(0) does not kill the input (valuation 0)");
}

void check_collection(const std::vector<HomPoly>& fs) {
  if (fs.empty()) fail(ErrorCode::EmptyCollection, "empty polynomial collection");
  for (const auto& f : fs) {
    if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "collection contains the zero polynomial");
    if (!(f.field() == fs[0].field())) fail(ErrorCode::FieldMismatch, "collection over different fields");
    if (f.n_vars() != fs[0].n_vars()) fail(ErrorCode::DimensionMismatch, "collection in different variable counts");
    if (f.degree() != fs[0].degree()) fail(ErrorCode::DegreeMismatch, "collection of different degrees");
  }
  const MonomialBasis basis(fs[0].n_vars(), fs[0].degree());
  std::vector<Vector> rows;
  for (const auto& f : fs) rows.push_back(f.coefficients(basis));
  if (rank(Matrix::from_rows(fs[0].field(), basis.size(), rows)) != fs.size())
    fail(ErrorCode::LinearlyDependentCollection, "the polynomials are linearly dependent");
}

std::uint64_t subset_count(std::size_t M, std::size_t s) {
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), M, s);
  return c.fits_ulong_p() ? c.get_ui() : UINT64_MAX;
}

// Calls fn(idx) for every s-subset of [0, M) in lexicographic order.
template <class Fn>
void for_each_subset(std::size_t M, std::size_t s, Fn fn) {
  if (s > M) return;
  std::vector<std::size_t> idx(s);
  for (std::size_t i = 0; i < s; ++i) idx[i] = i;
  for (;;) {
    fn(idx);
    std::size_t i = s;
    while (i > 0 && idx[i - 1] == M - s + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
  }
}

TRankResult finish_trank(const std::vector<Monomial>& rows, std::size_t n, const mpq_class& scale) {
  std::vector<std::vector<mpq_class>> A;
  for (const auto& r : rows) {
    std::vector<mpq_class> row(n);
    for (std::size_t i = 0; i < n; ++i) row[i] = r[i];
    A.push_back(std::move(row));
  }
  const auto sol = solve_covering_lp(A, n);
  TRankResult res;
  res.value = scale * sol.value;
  res.value.canonicalize();
  res.rational_weights = sol.primal;
  res.constraints = rows.size();
  mpz_class l = 1;
  for (const auto& c : sol.primal) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  mpz_class g = 0;
  for (const auto& c : sol.primal) {
    mpz_class w = c.get_num() * (l / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), w.get_mpz_t());
    res.weights.push_back(w);
  }
  if (g > 1)
    for (auto& w : res.weights) w /= g;
  for (auto i : sol.tight) res.tight_support.push_back(rows[i]);
  return res;
}

}  // namespace

unsigned det_valuation(const PSMatrix& g) { return checked_det_valuation(g); }

mpq_class mu_eval(const PSMatrix& g, const HomPoly& f) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "mu of the zero polynomial");
  const auto gf = act(g, f);
  std::optional<unsigned> v;
  for (const auto& [m, s] : gf)
    if (auto sv = series_valuation(s)) v = v ? std::min(*v, *sv) : *sv;
  check_action_valuation(v, g.truncation());
  const unsigned vdet = checked_det_valuation(g);
  mpq_class mu(f.degree() * vdet, *v);
  mu.canonicalize();
  return mu;
}

mpq_class mu_eval(const PSMatrix& g, const std::vector<HomPoly>& fs, std::uint64_t minor_cap) {
  check_collection(fs);
  const std::size_t s = fs.size();
  std::vector<SeriesPoly> acted;
  std::set<Monomial> support_set;
  for (const auto& f : fs) {
    acted.push_back(act(g, f));
    for (const auto& [m, ser] : acted.back())
      if (series_valuation(ser)) support_set.insert(m);
  }
  const std::vector<Monomial> support(support_set.begin(), support_set.end());
  if (subset_count(support.size(), s) > minor_cap)
    fail(ErrorCode::WedgeTooLarge, "wedge needs more than " + std::to_string(minor_cap) + " minors");
  const Field& F = g.field();
  const unsigned N = g.truncation();
  const Series zero(N, F.zero());
  std::optional<unsigned> v;
  for_each_subset(support.size(), s, [&](const std::vector<std::size_t>& idx) {
    auto entry = [&](std::size_t i, std::size_t j) -> const Series& {
      auto it = acted[i].find(support[idx[j]]);
      return it == acted[i].end() ? zero : it->second;
    };
    if (auto dv = series_valuation(series_det(s, F, N, entry))) v = v ? std::min(*v, *dv) : *dv;
  });
  check_action_valuation(v, N);
  const unsigned vdet = checked_det_valuation(g);
  mpq_class mu(static_cast<unsigned long>(fs[0].degree() * s * vdet), *v);
  mu.canonicalize();
  return mu;
}

mpq_class mu_diagonal(const HomPoly& f, const std::vector<unsigned>& c) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "mu of the zero polynomial");
  if (c.size() != f.n_vars()) fail(ErrorCode::DimensionMismatch, "weight vector length");
  unsigned long best = ULONG_MAX;
  for (const auto& t : f.terms()) {
    unsigned long w = 0;
    for (std::size_t i = 0; i < c.size(); ++i) w += static_cast<unsigned long>(t.exponents[i]) * c[i];
    best = std::min(best, w);
  }
  if (best == 0) fail(ErrorCode::ActionDoesNotVanish, "weights give a monomial of weight 0");
  unsigned long sum = 0;
  for (auto x : c) sum += x;
  mpq_class mu(f.degree() * sum, best);
  mu.canonicalize();
  return mu;
}

TRankResult trank(const HomPoly& f) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "T-rank of the zero polynomial");
  if (f.degree() == 0) fail(ErrorCode::InvalidArgument, "T-rank needs degree >= 1");
  std::vector<Monomial> rows;
  for (const auto& t : f.terms()) rows.push_back(t.exponents);
  return finish_trank(rows, f.n_vars(), f.degree());
}

TRankResult trank_collection(const std::vector<HomPoly>& fs, std::uint64_t minor_cap) {
  check_collection(fs);
  const std::size_t s = fs.size();
  const std::size_t n = fs[0].n_vars();
  std::set<Monomial, decltype(&grevlex_greater)> support_set(&grevlex_greater);
  for (const auto& f : fs)
    for (const auto& t : f.terms()) support_set.insert(t.exponents);
  const std::vector<Monomial> support(support_set.begin(), support_set.end());
  if (subset_count(support.size(), s) > minor_cap)
    fail(ErrorCode::WedgeTooLarge, "wedge needs more than " + std::to_string(minor_cap) + " minors");
  const Field& F = fs[0].field();
  std::vector<Monomial> rows;
  std::set<Monomial> seen;
  for_each_subset(support.size(), s, [&](const std::vector<std::size_t>& idx) {
    Matrix minor(F, s, s);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) minor(i, j) = fs[i].coefficient(support[idx[j]]);
    if (determinant(minor).is_zero()) return;
    Monomial sum(n, 0);
    for (auto j : idx)
      for (std::size_t k = 0; k < n; ++k) sum[k] = static_cast<std::uint16_t>(sum[k] + support[j][k]);
    if (seen.insert(sum).second) rows.push_back(std::move(sum));
  });
  if (rows.empty()) fail(ErrorCode::InternalError, "independent collection produced no nonzero minor");
  return finish_trank(rows, n, mpq_class(static_cast<unsigned long>(fs[0].degree() * s)));
}

Matrix complete_basis(const Subspace& P) {
  const Field& F = P.field();
  const std::size_t n = P.ambient();
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < P.dim(); ++i) rows.push_back(P.basis().row_vector(i));
  Subspace acc = P;
  for (std::size_t j = 0; j < n && rows.size() < n; ++j) {
    Vector e(n, F.zero());
    e[j] = F.one();
    if (acc.contains(e)) continue;
    acc = subspace_sum(acc, Subspace::span(F, n, {e}));
    rows.push_back(std::move(e));
  }
  return Matrix::from_rows(F, n, rows);
}

GRankBracket grank_bracket(const HomPoly& f, unsigned trials, std::uint64_t seed, const ScanOptions& opts) {
  const auto sr = slice_rank(f, opts);
  const Field& F = f.field();
  const std::size_t n = f.n_vars();
  const mpq_class cap(static_cast<unsigned long>(f.degree() * sr.rank));

  const auto adapted_change = inverse(complete_basis(sr.witness));
  if (!adapted_change) fail(ErrorCode::InternalError, "basis completion is singular");
  auto adapted = trank(substitute_linear(f, *adapted_change));
  if (adapted.value > cap)
    fail(ErrorCode::TheoremViolation, "slicing-adapted coordinates give T-rank " + adapted.value.get_str() +
                                          " above d * srk = " + cap.get_str());

  std::vector<Matrix> changes;
  std::mt19937_64 rng(seed);
  for (unsigned k = 0; k < trials; ++k)
    changes.push_back(k == 0 ? Matrix::identity(F, n) : random_invertible(F, n, rng));

  std::vector<std::optional<TRankResult>> results(changes.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < changes.size();)
      results[k] = trank(substitute_linear(f, changes[k]));
  };
  const unsigned t = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(changes.size())));
  if (t <= 1 || changes.size() < 2) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < t; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  GRankBracket out{sr.rank, adapted.value, *adapted_change, adapted, sr.witness, -1, trials, seed};
  for (std::size_t k = 0; k < results.size(); ++k) {
    // Trials win ties against the adapted change; earlier trials win ties among themselves.
    const bool better = out.best_trial < 0 ? results[k]->value <= out.upper : results[k]->value < out.upper;
    if (better) {
      out.upper = results[k]->value;
      out.best = *results[k];
      out.basis_change = changes[k];
      out.best_trial = static_cast<int>(k);
    }
  }
  return out;
}

bool power_invariance_check(const HomPoly& f, unsigned m) {
  if (m < 1) fail(ErrorCode::InvalidArgument, "power must be >= 1");
  return trank(poly_pow(f, m)).value == trank(f).value;
}

}  // namespace srk

#include "srk/slicerank.hpp"

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

namespace srk {

std::uint64_t fnv_mix(std::uint64_t h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t fnv_mix(std::uint64_t h, const Subspace& S) {
  h = fnv_mix(h, S.ambient());
  h = fnv_mix(h, S.dim());
  for (std::size_t i = 0; i < S.dim(); ++i)
    for (std::size_t j = 0; j < S.ambient(); ++j) {
      const auto& c = S.basis()(i, j);
      if (S.field().is_finite()) {
        h = fnv_mix(h, c.code());
      } else {
        for (char ch : c.to_string()) h = fnv_mix(h, static_cast<unsigned char>(ch));
      }
    }
  return h;
}

namespace {

void require_scannable(const HomPoly& f) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "slice rank of the zero polynomial is undefined");
  if (!f.field().is_finite())
    fail(ErrorCode::InfiniteField, "exhaustive scans need a finite field; over Q only witness certification is available");
  if (f.degree() == 0) fail(ErrorCode::InvalidArgument, "polynomial must have degree >= 1");
}

struct PatternScan {
  std::uint64_t tests = 0;
  std::uint64_t hash = kFnvOffset;
  std::vector<Subspace> hits;
  bool done = false;
};

// Runs `pred` over every r-dimensional subspace, one pivot pattern at a time.
// With first_only, patterns after the earliest hit are skipped; results are
// identical for any thread count.
std::vector<PatternScan> scan_grassmannian(std::size_t n, std::size_t r, const Field& F,
                                           const std::function<bool(const Subspace&)>& pred, unsigned threads,
                                           bool first_only) {
  const std::size_t count = pivot_patterns(n, r).size();
  std::vector<PatternScan> out(count);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{SIZE_MAX};
  std::mutex err_mu;
  std::exception_ptr err;

  auto worker = [&] {
    try {
      for (;;) {
        const std::size_t k = next.fetch_add(1);
        if (k >= count) return;
        if (first_only && k > best.load()) continue;
        auto& res = out[k];
        GrassmannianIterator it(n, r, F, k, k + 1);
        Subspace S(F, n);
        while (it.next(S)) {
          ++res.tests;
          if (pred(S)) {
            res.hits.push_back(S);
            res.hash = fnv_mix(res.hash, S);
            if (first_only) break;
          }
        }
        res.done = true;
        if (first_only && !res.hits.empty()) {
          std::size_t cur = best.load();
          while (k < cur && !best.compare_exchange_weak(cur, k)) {
          }
        }
      }
    } catch (...) {
      std::lock_guard lock(err_mu);
      if (!err) err = std::current_exception();
      next.store(count);
    }
  };

  const unsigned t = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (t <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < t; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (err) std::rethrow_exception(err);
  return out;
}

struct Merged {
  std::vector<Subspace> hits;
  std::uint64_t tests = 0;
  std::uint64_t hash = kFnvOffset;
};

Merged merge(const std::vector<PatternScan>& parts, bool first_only) {
  Merged m;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const auto& p = parts[k];
    if (!p.done) break;
    m.tests += p.tests;
    m.hash = fnv_mix(fnv_mix(fnv_mix(m.hash, k), p.tests), p.hash);
    m.hits.insert(m.hits.end(), p.hits.begin(), p.hits.end());
    if (first_only && !p.hits.empty()) break;
  }
  return m;
}

void check_budget(std::uint64_t spent, std::size_t n, unsigned r, const Field& F, std::uint64_t budget) {
  const std::uint64_t need = gaussian_binomial(n, r, F.order());
  if (need > budget || spent > budget - need)
    throw BudgetExceeded("scan at dimension " + std::to_string(r) + " needs " + std::to_string(need) +
                             " membership tests; budget " + std::to_string(budget) + ", already spent " +
                             std::to_string(spent) + "; slice rank >= " + std::to_string(r) + " verified",
                         static_cast<int>(r), spent);
}

std::function<bool(const Subspace&)> membership(const HomPoly& f) {
  return [&f](const Subspace& P) { return in_ideal_of(f, P); };
}

// f lies in S(W) iff, in a basis of V* whose first rows span W, f only uses
// the first dim W coordinates.
bool lives_in(const HomPoly& f, const Subspace& W) {
  const std::size_t n = f.n_vars();
  const Field& F = f.field();
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < W.dim(); ++i) rows.push_back(W.basis().row_vector(i));
  Subspace acc = W;
  for (std::size_t j = 0; j < n && rows.size() < n; ++j) {
    Vector e(n, F.zero());
    e[j] = F.one();
    if (acc.contains(e)) continue;
    rows.push_back(e);
    acc = subspace_sum(acc, Subspace::span(F, n, {e}));
  }
  auto inv = inverse(Matrix::from_rows(F, n, rows));
  if (!inv) fail(ErrorCode::InternalError, "basis completion produced a singular matrix");
  const auto used = substitute_linear(f, *inv).support_variables();
  for (std::size_t j = W.dim(); j < n; ++j)
    if (used[j]) return false;
  return true;
}

}  // namespace

SliceRankResult slice_rank(const HomPoly& f, const ScanOptions& opts) {
  require_scannable(f);
  const std::size_t n = f.n_vars();
  std::uint64_t tests = 0;
  std::uint64_t hash = kFnvOffset;
  for (unsigned r = 1; r <= n; ++r) {
    check_budget(tests, n, r, f.field(), opts.budget);
    auto m = merge(scan_grassmannian(n, r, f.field(), membership(f), opts.threads, true), true);
    tests += m.tests;
    hash = fnv_mix(fnv_mix(hash, r), m.hash);
    if (!m.hits.empty()) {
      SliceRankResult res;
      res.rank = r;
      res.witness = m.hits.front();
      res.tests_performed = tests;
      res.certificate.kind = RankCertificate::Kind::Exact;
      res.certificate.lower = r;
      res.certificate.upper = r;
      res.certificate.witness = res.witness;
      res.certificate.transcript = hash;
      res.certificate.tests_performed = tests;
      return res;
    }
  }
  fail(ErrorCode::InternalError, "no slicing subspace found up to the full dual space");
}

SlicingScan enumerate_slicing_subspaces(const HomPoly& f, unsigned r, const ScanOptions& opts) {
  require_scannable(f);
  if (r > f.n_vars()) fail(ErrorCode::InvalidArgument, "dimension exceeds the number of variables");
  check_budget(0, f.n_vars(), r, f.field(), opts.budget);
  auto m = merge(scan_grassmannian(f.n_vars(), r, f.field(), membership(f), opts.threads, false), false);
  return {std::move(m.hits), m.tests, m.hash};
}

SlicingConfig compute_Lf(const HomPoly& f, const ScanOptions& opts) {
  require_scannable(f);
  const std::size_t n = f.n_vars();
  SlicingConfig cfg;
  std::uint64_t hash = kFnvOffset;
  for (unsigned r = 1; r <= n; ++r) {
    check_budget(cfg.tests_performed, n, r, f.field(), opts.budget);
    auto m = merge(scan_grassmannian(n, r, f.field(), membership(f), opts.threads, false), false);
    cfg.tests_performed += m.tests;
    hash = fnv_mix(fnv_mix(hash, r), m.hash);
    if (m.hits.empty()) continue;
    cfg.rank = r;
    cfg.subspaces = std::move(m.hits);
    cfg.sum_space = subspace_sum(std::span<const Subspace>(cfg.subspaces));
    cfg.Lf = cfg.sum_space.annihilator();
    cfg.codim_Lf = cfg.sum_space.dim();
    cfg.transcript = hash;
    return cfg;
  }
  fail(ErrorCode::InternalError, "no slicing subspace found up to the full dual space");
}

Subspace essential_space(const HomPoly& f, const ScanOptions& opts) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "essential space of the zero polynomial");
  if (f.degree() == 0) fail(ErrorCode::InvalidArgument, "polynomial must have degree >= 1");
  const Field& F = f.field();
  const std::size_t n = f.n_vars();
  const std::uint64_t p = F.characteristic();

  if (p == 0 || p > f.degree()) {
    // W is the annihilator of {v : d_v f = 0}.
    const MonomialBasis basis(n, f.degree() - 1);
    Matrix M(F, basis.size(), n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto col = partial_derivative(f, i).coefficients(basis);
      for (std::size_t row = 0; row < basis.size(); ++row) M(row, i) = col[row];
    }
    return kernel(M).annihilator();
  }

  // Small characteristic: descend through hyperplanes, starting from the
  // coordinate span of the variables that occur.
  const auto used = f.support_variables();
  std::vector<Vector> start;
  for (std::size_t j = 0; j < n; ++j)
    if (used[j]) {
      Vector e(n, F.zero());
      e[j] = F.one();
      start.push_back(std::move(e));
    }
  Subspace W = Subspace::span(F, n, start);
  std::uint64_t tests = 0;
  for (bool shrunk = true; shrunk && W.dim() > 0;) {
    shrunk = false;
    const std::size_t k = W.dim();
    GrassmannianIterator it(k, k - 1, F);
    Subspace U(F, k);
    while (it.next(U)) {
      if (++tests > opts.budget)
        throw BudgetExceeded("essential-space search exceeded " + std::to_string(opts.budget) +
                                 " tests at dimension " + std::to_string(k),
                             0, tests);
      Subspace candidate(U.dim() ? U.basis() * W.basis() : Matrix(F, 0, n));
      if (lives_in(f, candidate)) {
        W = candidate;
        shrunk = true;
        break;
      }
    }
  }
  return W;
}

bool BoundsReport::all_ok() const {
  for (const auto& b : bounds)
    if (!b.ok) return false;
  return true;
}

mpq_class cubic_bound(unsigned r) {
  const mpq_class a = mpq_class((r + 1) * (r + 1), 4) + r;
  mpq_class v = mpq_class(1, 2) * (a + 3) * a;
  v.canonicalize();
  return v;
}

BoundsReport check_conjectureB_bounds(const HomPoly& f, const SlicingConfig& cfg, const ScanOptions& opts) {
  BoundsReport rep;
  rep.rank = cfg.rank;
  rep.degree = f.degree();
  rep.codim_Lf = cfg.codim_Lf;
  const unsigned r = cfg.rank;
  const unsigned d = f.degree();
  const mpz_class codim(static_cast<unsigned long>(cfg.codim_Lf));
  auto add = [&](std::string name, const mpq_class& limit, std::string note = {}) {
    const mpz_class fl = limit.get_num() / limit.get_den();
    rep.bounds.push_back({std::move(name), limit, codim <= fl, std::move(note)});
  };

  if (d == 2) add("c(r,2)", 2 * r);
  if (r == 1) add("c(1,d)", d, "at most d hyperplanes lie on X");
  if (r == 2 && d == 3) add("c(2,3)", 6);
  if (d == 3) add("c(r,3)", cubic_bound(r), "compared against the floor");
  if (r == 2) {
    add("c(2,d)", d * d + 1);
    const std::size_t ess = essential_space(f, opts).dim();
    rep.essential_dim = ess;
    const bool ok = cfg.codim_Lf + 1 <= static_cast<std::size_t>(d) * d || ess <= static_cast<std::size_t>(d) * d + 1;
    rep.bounds.push_back({"dichotomy(2,d)", mpq_class(d * d - 1), ok,
                          "codim L_f <= d^2-1, or f is a pullback from dimension <= d^2+1 (essential dim " +
                              std::to_string(ess) + ")"});
  }
  return rep;
}

RankCertificate certify_upper_bound(const HomPoly& f, const Subspace& P) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "slice rank of the zero polynomial is undefined");
  if (P.ambient() != f.n_vars()) fail(ErrorCode::AmbientMismatch, "witness ambient differs from variable count");
  if (!in_ideal_of(f, P)) fail(ErrorCode::InvalidArgument, "the supplied subspace does not slice f");
  RankCertificate c;
  c.lower = 1;
  c.upper = static_cast<unsigned long>(P.dim());
  c.kind = P.dim() == 1 ? RankCertificate::Kind::Exact : RankCertificate::Kind::Bracket;
  c.witness = P;
  c.tests_performed = 1;
  c.transcript = fnv_mix(kFnvOffset, P);
  return c;
}

}  // namespace srk

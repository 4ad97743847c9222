#include "srk/linalg.hpp"

#include <algorithm>
#include <limits>

#include "arith.hpp"

namespace srk {

namespace {

using detail::with_arith;

template <class Arith>
struct Dense {
  std::size_t rows, cols;
  std::vector<typename Arith::T> a;
  typename Arith::T& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
};

template <class Arith>
Dense<Arith> load(const Arith& ar, const Matrix& M) {
  Dense<Arith> d{M.rows(), M.cols(), {}};
  d.a.reserve(M.rows() * M.cols());
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) d.a.push_back(ar.get(M(i, j)));
  return d;
}

template <class Arith>
Matrix store(const Arith& ar, Dense<Arith>& d) {
  Matrix M(ar.F, d.rows, d.cols);
  for (std::size_t i = 0; i < d.rows; ++i)
    for (std::size_t j = 0; j < d.cols; ++j) M(i, j) = ar.put(d.at(i, j));
  return M;
}

// In-place RREF over columns [0, limit); returns pivot columns.
template <class Arith>
std::vector<std::size_t> eliminate(const Arith& ar, Dense<Arith>& d, std::size_t limit) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < limit && r < d.rows; ++c) {
    std::size_t p = r;
    while (p < d.rows && ar.is_zero(d.at(p, c))) ++p;
    if (p == d.rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < d.cols; ++j) std::swap(d.at(p, j), d.at(r, j));
    const auto piv_inv = ar.inv(d.at(r, c));
    for (std::size_t j = c; j < d.cols; ++j) d.at(r, j) = ar.mul(d.at(r, j), piv_inv);
    for (std::size_t i = 0; i < d.rows; ++i) {
      if (i == r || ar.is_zero(d.at(i, c))) continue;
      const auto factor = d.at(i, c);
      for (std::size_t j = c; j < d.cols; ++j) d.at(i, j) = ar.sub(d.at(i, j), ar.mul(factor, d.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class Arith>
typename Arith::T det_impl(const Arith& ar, Dense<Arith> d) {
  const std::size_t n = d.rows;
  typename Arith::T det = ar.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && ar.is_zero(d.at(p, c))) ++p;
    if (p == n) return typename Arith::T(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(d.at(p, j), d.at(c, j));
      det = ar.neg(det);
    }
    det = ar.mul(det, d.at(c, c));
    const auto piv_inv = ar.inv(d.at(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (ar.is_zero(d.at(i, c))) continue;
      const auto factor = ar.mul(d.at(i, c), piv_inv);
      for (std::size_t j = c; j < n; ++j) d.at(i, j) = ar.sub(d.at(i, j), ar.mul(factor, d.at(c, j)));
    }
  }
  return det;
}

void require_same(const Subspace& A, const Subspace& B) {
  if (A.ambient() != B.ambient())
    fail(ErrorCode::AmbientMismatch, "ambient dimensions " + std::to_string(A.ambient()) + " and " +
                                         std::to_string(B.ambient()));
  if (!(A.field() == B.field())) fail(ErrorCode::FieldMismatch, "subspaces over different fields");
}

}  // namespace

// ---------------------------------------------------------------------------

Matrix::Matrix(Field F, std::size_t rows, std::size_t cols)
    : field_(F), rows_(rows), cols_(cols), data_(rows * cols, F.zero()) {}

Matrix Matrix::identity(Field F, std::size_t n) {
  Matrix M(F, n, n);
  for (std::size_t i = 0; i < n; ++i) M(i, i) = F.one();
  return M;
}

Matrix Matrix::from_rows(Field F, std::size_t cols, const std::vector<Vector>& rows) {
  Matrix M(F, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) fail(ErrorCode::DimensionMismatch, "row length differs from column count");
    for (std::size_t j = 0; j < cols; ++j) {
      if (rows[i][j].attached() && !(rows[i][j].field() == F))
        fail(ErrorCode::FieldMismatch, "matrix entry from another field");
      M(i, j) = rows[i][j].attached() ? rows[i][j] : F.zero();
    }
  }
  return M;
}

Matrix Matrix::transpose() const {
  Matrix T(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) T(j, i) = (*this)(i, j);
  return T;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) fail(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  if (!(field_ == o.field_)) fail(ErrorCode::FieldMismatch, "matrix product across fields");
  Matrix P(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const FieldElement& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) P(i, j) += a * o(k, j);
    }
  return P;
}

Matrix Matrix::row_block(std::size_t begin, std::size_t end) const {
  Matrix B(field_, end - begin, cols_);
  for (std::size_t i = begin; i < end; ++i)
    for (std::size_t j = 0; j < cols_; ++j) B(i - begin, j) = (*this)(i, j);
  return B;
}

Matrix Matrix::stacked(const Matrix& o) const {
  if (cols_ != o.cols_) fail(ErrorCode::DimensionMismatch, "stacking matrices of different widths");
  if (!(field_ == o.field_)) fail(ErrorCode::FieldMismatch, "stacking matrices across fields");
  Matrix S(field_, rows_ + o.rows_, cols_);
  std::copy(data_.begin(), data_.end(), S.data_.begin());
  std::copy(o.data_.begin(), o.data_.end(), S.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
  return S;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Matrix rref(const Matrix& M, std::vector<std::size_t>& pivots) {
  return with_arith(M.field(), [&](const auto& ar) {
    auto d = load(ar, M);
    pivots = eliminate(ar, d, d.cols);
    return store(ar, d);
  });
}

Matrix rref(const Matrix& M) {
  std::vector<std::size_t> pivots;
  return rref(M, pivots);
}

std::size_t rank(const Matrix& M) {
  std::vector<std::size_t> pivots;
  rref(M, pivots);
  return pivots.size();
}

std::optional<Matrix> inverse(const Matrix& M) {
  if (M.rows() != M.cols()) fail(ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
  const std::size_t n = M.rows();
  Matrix aug(M.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = M(i, j);
    aug(i, n + i) = M.field().one();
  }
  std::optional<Matrix> out;
  with_arith(M.field(), [&](const auto& ar) {
    auto d = load(ar, aug);
    auto piv = eliminate(ar, d, n);
    if (piv.size() < n) return 0;
    Matrix R = store(ar, d);
    Matrix inv(M.field(), n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) inv(i, j) = R(i, n + j);
    out = std::move(inv);
    return 0;
  });
  return out;
}

FieldElement determinant(const Matrix& M) {
  if (M.rows() != M.cols()) fail(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  return with_arith(M.field(), [&](const auto& ar) { return ar.put(det_impl(ar, load(ar, M))); });
}

// ---------------------------------------------------------------------------

Subspace::Subspace(Field F, std::size_t ambient) : basis_(F, 0, ambient) {}

Subspace::Subspace(const Matrix& M) : basis_(M.field(), 0, M.cols()) {
  std::vector<std::size_t> piv;
  Matrix R = rref(M, piv);
  basis_ = R.row_block(0, piv.size());
  pivots_ = std::move(piv);
}

Subspace Subspace::span(Field F, std::size_t ambient, const std::vector<Vector>& vectors) {
  return Subspace(Matrix::from_rows(F, ambient, vectors));
}

Subspace Subspace::full(Field F, std::size_t ambient) { return Subspace(Matrix::identity(F, ambient)); }

Subspace Subspace::from_canonical(Matrix basis, std::vector<std::size_t> pivots) {
  return Subspace(std::move(basis), std::move(pivots));
}

Vector Subspace::reduce(std::span<const FieldElement> v) const {
  if (v.size() != ambient()) fail(ErrorCode::AmbientMismatch, "vector length differs from ambient dimension");
  Vector out(v.begin(), v.end());
  for (auto& x : out)
    if (!x.attached()) x = field().zero();
  for (std::size_t i = 0; i < dim(); ++i) {
    const FieldElement c = out[pivots_[i]];
    if (c.is_zero()) continue;
    for (std::size_t j = pivots_[i]; j < ambient(); ++j) out[j] -= c * basis_(i, j);
  }
  return out;
}

bool Subspace::contains(std::span<const FieldElement> v) const {
  const Vector r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](const FieldElement& x) { return x.is_zero(); });
}

bool Subspace::contains(const Subspace& other) const {
  require_same(*this, other);
  if (other.dim() > dim()) return false;
  for (std::size_t i = 0; i < other.dim(); ++i)
    if (!contains(other.basis().row(i))) return false;
  return true;
}

Subspace Subspace::annihilator() const {
  if (dim() == 0) return full(field(), ambient());
  return kernel(basis_);
}

Subspace Subspace::frobenius(unsigned e) const {
  Matrix B = basis_;
  for (std::size_t i = 0; i < B.rows(); ++i)
    for (std::size_t j = 0; j < B.cols(); ++j) B(i, j) = B(i, j).frobenius(e);
  // An automorphism fixes 0 and 1, so the image of an RREF matrix is RREF.
  return from_canonical(std::move(B), pivots_);
}

bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

Subspace subspace_sum(const Subspace& A, const Subspace& B) {
  require_same(A, B);
  if (A.is_zero()) return B;
  if (B.is_zero()) return A;
  return Subspace(A.basis().stacked(B.basis()));
}

Subspace subspace_sum(std::span<const Subspace> parts) {
  if (parts.empty()) fail(ErrorCode::EmptyCollection, "sum of no subspaces");
  Matrix M = parts[0].basis();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    require_same(parts[0], parts[i]);
    M = M.stacked(parts[i].basis());
  }
  return Subspace(M);
}

Subspace subspace_intersect(const Subspace& A, const Subspace& B) {
  require_same(A, B);
  if (A.contains(B)) return B;
  if (B.contains(A)) return A;
  Subspace meet = subspace_sum(A.annihilator(), B.annihilator()).annihilator();
  const std::size_t sum_dim = subspace_sum(A, B).dim();
  if (A.dim() + B.dim() != sum_dim + meet.dim())
    fail(ErrorCode::InternalError, "modular law violated in subspace intersection");
  return meet;
}

Subspace subspace_intersect(std::span<const Subspace> parts) {
  if (parts.empty()) fail(ErrorCode::EmptyCollection, "intersection of no subspaces");
  Subspace acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = subspace_intersect(acc, parts[i]);
  return acc;
}

bool subspace_contains(const Subspace& A, std::span<const FieldElement> v) { return A.contains(v); }
bool subspace_contains(const Subspace& A, const Subspace& B) { return A.contains(B); }

Subspace kernel(const Matrix& M) {
  std::vector<std::size_t> piv;
  Matrix R = rref(M, piv);
  const std::size_t n = M.cols();
  const Field& F = M.field();
  std::vector<bool> is_pivot(n, false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector v(n, F.zero());
    v[f] = F.one();
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -R(i, f);
    basis.push_back(std::move(v));
  }
  return Subspace::span(F, n, basis);
}

// ---------------------------------------------------------------------------

std::uint64_t gaussian_binomial(std::size_t n, std::size_t r, std::uint64_t q) {
  if (r > n) return 0;
  mpz_class num = 1, den = 1, Q = static_cast<unsigned long>(q);
  for (std::size_t i = 0; i < r; ++i) {
    mpz_class a, b;
    mpz_pow_ui(a.get_mpz_t(), Q.get_mpz_t(), n - i);
    mpz_pow_ui(b.get_mpz_t(), Q.get_mpz_t(), i + 1);
    num *= a - 1;
    den *= b - 1;
  }
  mpz_class v = num / den;
  if (v > mpz_class(std::to_string(std::numeric_limits<std::uint64_t>::max())))
    return std::numeric_limits<std::uint64_t>::max();
  return std::stoull(v.get_str());
}

std::vector<std::vector<std::size_t>> pivot_patterns(std::size_t n, std::size_t r) {
  std::vector<std::vector<std::size_t>> out;
  if (r > n) return out;
  std::vector<std::size_t> c(r);
  for (std::size_t i = 0; i < r; ++i) c[i] = i;
  while (true) {
    out.push_back(c);
    std::size_t i = r;
    while (i > 0 && c[i - 1] == n - r + i - 1) --i;
    if (i == 0) break;
    ++c[i - 1];
    for (std::size_t j = i; j < r; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

GrassmannianIterator::GrassmannianIterator(std::size_t n, std::size_t r, Field F)
    : GrassmannianIterator(n, r, F, 0, std::numeric_limits<std::size_t>::max()) {}

GrassmannianIterator::GrassmannianIterator(std::size_t n, std::size_t r, Field F, std::size_t pattern_begin,
                                           std::size_t pattern_end)
    : n_(n), r_(r), field_(F), patterns_(pivot_patterns(n, r)), pattern_(pattern_begin) {
  if (!F.is_finite()) fail(ErrorCode::InfiniteField, "Grassmannian enumeration needs a finite field");
  if (r > n) fail(ErrorCode::InvalidArgument, "subspace dimension exceeds ambient dimension");
  pattern_end_ = std::min(pattern_end, patterns_.size());
  done_ = !load_pattern();
}

bool GrassmannianIterator::load_pattern() {
  if (pattern_ >= pattern_end_) return false;
  const auto& piv = patterns_[pattern_];
  free_.clear();
  std::vector<bool> is_pivot(n_, false);
  for (auto p : piv) is_pivot[p] = true;
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = piv[i] + 1; j < n_; ++j)
      if (!is_pivot[j]) free_.emplace_back(i, j);
  odometer_.assign(free_.size(), 0);
  fresh_ = true;
  return true;
}

bool GrassmannianIterator::next(Subspace& out) {
  if (done_) return false;
  if (!fresh_) {
    std::size_t k = odometer_.size();
    while (k > 0) {
      if (++odometer_[k - 1] < field_.order()) break;
      odometer_[k - 1] = 0;
      --k;
    }
    if (k == 0) {
      ++pattern_;
      if (!load_pattern()) {
        done_ = true;
        return false;
      }
    }
  }
  fresh_ = false;
  const auto& piv = patterns_[pattern_];
  Matrix B(field_, r_, n_);
  for (std::size_t i = 0; i < r_; ++i) B(i, piv[i]) = field_.one();
  for (std::size_t k = 0; k < free_.size(); ++k) B(free_[k].first, free_[k].second) = field_.from_code(odometer_[k]);
  out = Subspace::from_canonical(std::move(B), piv);
  return true;
}

std::optional<Subspace> GrassmannianIterator::next() {
  Subspace s(field_, n_);
  if (!next(s)) return std::nullopt;
  return s;
}

std::vector<Subspace> grassmannian(std::size_t n, std::size_t r, const Field& F) {
  std::vector<Subspace> out;
  GrassmannianIterator it(n, r, F);
  Subspace s(F, n);
  while (it.next(s)) out.push_back(s);
  return out;
}

}  // namespace srk

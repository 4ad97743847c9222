#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "srk/field.hpp"

namespace srk {

using Vector = std::vector<FieldElement>;

/// Dense row-major matrix over a Field.
class Matrix {
 public:
  Matrix(Field F, std::size_t rows, std::size_t cols);
  static Matrix identity(Field F, std::size_t n);
  static Matrix from_rows(Field F, std::size_t cols, const std::vector<Vector>& rows);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  FieldElement& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const FieldElement& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const FieldElement> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  Vector row_vector(std::size_t i) const { return Vector(row(i).begin(), row(i).end()); }

  Matrix transpose() const;
  Matrix operator*(const Matrix& o) const;
  /// Rows [begin, end) as a new matrix.
  Matrix row_block(std::size_t begin, std::size_t end) const;
  /// Stacks `o` below this matrix.
  Matrix stacked(const Matrix& o) const;

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<FieldElement> data_;
};

/// Reduced row echelon form; zero rows are kept at the bottom.
Matrix rref(const Matrix& M);
/// Same, reporting the pivot column of each nonzero row.
Matrix rref(const Matrix& M, std::vector<std::size_t>& pivots);
std::size_t rank(const Matrix& M);
std::optional<Matrix> inverse(const Matrix& M);
FieldElement determinant(const Matrix& M);

/// Linear subspace of F^n stored by its canonical RREF basis, so structural
/// equality of the basis is equality of subspaces.
class Subspace {
 public:
  /// The zero subspace of F^n.
  Subspace(Field F, std::size_t ambient);
  /// Placeholder: the zero subspace of Q^0.
  Subspace() : Subspace(Field::rationals(), 0) {}
  /// Row space of M.
  explicit Subspace(const Matrix& M);
  static Subspace span(Field F, std::size_t ambient, const std::vector<Vector>& vectors);
  static Subspace full(Field F, std::size_t ambient);
  /// Wraps a matrix the caller guarantees is already canonical (RREF, no zero rows).
  static Subspace from_canonical(Matrix basis, std::vector<std::size_t> pivots);

  const Field& field() const { return basis_.field(); }
  std::size_t ambient() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  std::size_t codim() const { return ambient() - dim(); }
  bool is_zero() const { return dim() == 0; }
  const Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Remainder of v after elimination against the basis.
  Vector reduce(std::span<const FieldElement> v) const;
  bool contains(std::span<const FieldElement> v) const;
  bool contains(const Subspace& other) const;
  /// {v : <w, v> = 0 for all w} under the standard pairing.
  Subspace annihilator() const;
  /// Entrywise image of the basis under x -> x^{p^e}, re-canonicalized.
  Subspace frobenius(unsigned e) const;

  friend bool operator==(const Subspace& a, const Subspace& b);

 private:
  Subspace(Matrix basis, std::vector<std::size_t> pivots) : basis_(std::move(basis)), pivots_(std::move(pivots)) {}
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

Subspace subspace_sum(const Subspace& A, const Subspace& B);
Subspace subspace_sum(std::span<const Subspace> parts);
Subspace subspace_intersect(const Subspace& A, const Subspace& B);
Subspace subspace_intersect(std::span<const Subspace> parts);
bool subspace_contains(const Subspace& A, std::span<const FieldElement> v);
bool subspace_contains(const Subspace& A, const Subspace& B);
/// Null space {x : M x = 0}.
Subspace kernel(const Matrix& M);

/// Number of r-dimensional subspaces of F_q^n, saturating at UINT64_MAX.
std::uint64_t gaussian_binomial(std::size_t n, std::size_t r, std::uint64_t q);

/// Pivot-column patterns of r-dimensional subspaces of F^n in lexicographic order.
std::vector<std::vector<std::size_t>> pivot_patterns(std::size_t n, std::size_t r);

/// Streams every r-dimensional subspace of F_q^n exactly once as canonical
/// RREF representatives: pivot patterns in lexicographic order, then free
/// entries in field-enumeration order (last free entry varying fastest).
/// A half-open range of pivot-pattern indices selects a slice for workers.
class GrassmannianIterator {
 public:
  GrassmannianIterator(std::size_t n, std::size_t r, Field F);
  GrassmannianIterator(std::size_t n, std::size_t r, Field F, std::size_t pattern_begin, std::size_t pattern_end);

  /// Writes the next subspace into `out`; false once exhausted.
  bool next(Subspace& out);
  std::optional<Subspace> next();
  std::size_t pattern_count() const { return patterns_.size(); }
  /// Index of the pattern the most recent subspace belongs to.
  std::size_t current_pattern() const { return pattern_; }

 private:
  bool load_pattern();

  std::size_t n_, r_;
  Field field_;
  std::vector<std::vector<std::size_t>> patterns_;
  std::size_t pattern_;
  std::size_t pattern_end_;
  std::vector<std::pair<std::size_t, std::size_t>> free_;  // (row, col)
  std::vector<std::uint64_t> odometer_;
  bool fresh_ = true;
  bool done_ = false;
};

std::vector<Subspace> grassmannian(std::size_t n, std::size_t r, const Field& F);

}  // namespace srk

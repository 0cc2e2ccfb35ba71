#pragma once

// Dense exact linear algebra, generic over the scalar field
// (PrimeField or RationalField).

#include <concepts>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "modalkit/error.hpp"
#include "modalkit/exactmath.hpp"

namespace modalkit {

template <class F>
concept ExactField = requires(const F& f, const typename F::Element& a) {
  { f.zero() } -> std::same_as<typename F::Element>;
  { f.one() } -> std::same_as<typename F::Element>;
  { f.make(std::int64_t{0}) } -> std::same_as<typename F::Element>;
  { a + a } -> std::same_as<typename F::Element>;
  { a - a } -> std::same_as<typename F::Element>;
  { a * a } -> std::same_as<typename F::Element>;
  { -a } -> std::same_as<typename F::Element>;
  { a.inverse() } -> std::same_as<typename F::Element>;
  { a.is_zero() } -> std::convertible_to<bool>;
};

template <ExactField F>
class Vector {
 public:
  using Scalar = typename F::Element;

  /// Zero vector of the given dimension.
  Vector(F field, std::size_t dim) : field_(std::move(field)), entries_(dim, field_.zero()) {}
  Vector(F field, std::vector<Scalar> entries)
      : field_(std::move(field)), entries_(std::move(entries)) {}

  const F& field() const { return field_; }
  std::size_t dim() const { return entries_.size(); }
  const Scalar& operator[](std::size_t i) const { return entries_[i]; }
  Scalar& operator[](std::size_t i) { return entries_[i]; }
  std::span<const Scalar> entries() const { return entries_; }

  bool is_zero() const {
    for (const auto& x : entries_) {
      if (!x.is_zero()) return false;
    }
    return true;
  }

  Vector operator+(const Vector& o) const {
    require_dim(o);
    Vector r = *this;
    for (std::size_t i = 0; i < dim(); ++i) r.entries_[i] = r.entries_[i] + o.entries_[i];
    return r;
  }
  Vector operator-(const Vector& o) const {
    require_dim(o);
    Vector r = *this;
    for (std::size_t i = 0; i < dim(); ++i) r.entries_[i] = r.entries_[i] - o.entries_[i];
    return r;
  }
  Vector scaled(const Scalar& s) const {
    Vector r = *this;
    for (auto& x : r.entries_) x = s * x;
    return r;
  }

  friend bool operator==(const Vector& a, const Vector& b) {
    return a.field_ == b.field_ && a.entries_ == b.entries_;
  }

 private:
  void require_dim(const Vector& o) const {
    if (o.dim() != dim()) {
      throw DimensionMismatch("vector dims " + std::to_string(dim()) + " and " +
                              std::to_string(o.dim()));
    }
  }

  F field_;
  std::vector<Scalar> entries_;
};

template <ExactField F>
class Matrix {
 public:
  using Scalar = typename F::Element;

  /// Zero matrix. Throws DimensionMismatch if either dimension is zero.
  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), entries_(rows * cols, field_.zero()) {
    if (rows == 0 || cols == 0) throw DimensionMismatch("matrix dimensions must be positive");
  }

  /// Row-major construction from nested rows; all rows must have equal length.
  Matrix(F field, const std::vector<std::vector<Scalar>>& rows) : field_(std::move(field)) {
    if (rows.empty() || rows.front().empty()) {
      throw DimensionMismatch("matrix dimensions must be positive");
    }
    rows_ = rows.size();
    cols_ = rows.front().size();
    entries_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionMismatch("ragged matrix rows");
      entries_.insert(entries_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(F field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  /// Stacks vectors as the rows of a matrix.
  static Matrix from_rows(F field, std::span<const Vector<F>> vs) {
    if (vs.empty()) throw DimensionMismatch("cannot stack an empty sequence of vectors");
    Matrix m(field, vs.size(), vs.front().dim());
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (vs[i].dim() != m.cols_) throw DimensionMismatch("stacked vectors differ in dimension");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = vs[i][j];
    }
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const Scalar& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  Scalar& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

  Vector<F> row(std::size_t i) const {
    return Vector<F>(field_, std::vector<Scalar>(entries_.begin() + i * cols_,
                                                 entries_.begin() + (i + 1) * cols_));
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw DimensionMismatch("matrix product inner dimensions differ");
    Matrix r(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const Scalar& a = (*this)(i, k);
        if (a.is_zero()) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) = r(i, j) + a * o(k, j);
      }
    }
    return r;
  }

  Vector<F> operator*(const Vector<F>& v) const {
    if (cols_ != v.dim()) throw DimensionMismatch("matrix-vector dimensions differ");
    Vector<F> r(field_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) r[i] = r[i] + (*this)(i, j) * v[j];
    }
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.entries_ == b.entries_;
  }

 private:
  F field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> entries_;
};

template <ExactField F>
struct RrefResult {
  Matrix<F> reduced;
  std::size_t rank;
  std::vector<std::size_t> pivot_columns;
};

/// Reduced row-echelon form. Pivots are the first nonzero entry found scanning
/// columns left to right and rows top to bottom.
template <ExactField F>
RrefResult<F> rref(Matrix<F> m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t pr = r;
    while (pr < m.rows() && m(pr, c).is_zero()) ++pr;
    if (pr == m.rows()) continue;
    if (pr != r) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pr, j), m(r, j));
    }
    auto inv = m(r, c).inverse();
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = m(r, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      auto factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = m(i, j) - factor * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return RrefResult<F>{std::move(m), r, std::move(pivots)};
}

/// Determinant by Gaussian elimination. Throws NotSquare.
template <ExactField F>
typename F::Element det(Matrix<F> m) {
  if (!m.is_square()) {
    throw NotSquare("determinant of a " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()) + " matrix");
  }
  const std::size_t n = m.rows();
  auto result = m.field().one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pr = c;
    while (pr < n && m(pr, c).is_zero()) ++pr;
    if (pr == n) return m.field().zero();
    if (pr != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(pr, j), m(c, j));
      result = -result;
    }
    result = result * m(c, c);
    auto inv = m(c, c).inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      auto factor = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(i, j) = m(i, j) - factor * m(c, j);
    }
  }
  return result;
}

/// Solution set of a·x = b: particular + span(homogeneous_basis).
template <ExactField F>
struct AffineSolutionSpace {
  Vector<F> particular;
  std::vector<Vector<F>> homogeneous_basis;

  std::size_t dimension() const { return homogeneous_basis.size(); }
  std::size_t ambient_dim() const { return particular.dim(); }

  /// particular + Σ tᵢ·basisᵢ. Throws DimensionMismatch on a wrong parameter count.
  Vector<F> at(std::span<const typename F::Element> params) const {
    if (params.size() != dimension()) throw DimensionMismatch("wrong number of parameters");
    Vector<F> x = particular;
    for (std::size_t k = 0; k < params.size(); ++k) {
      x = x + homogeneous_basis[k].scaled(params[k]);
    }
    return x;
  }
};

/// Full solution set of a·x = b, or nullopt when the system is inconsistent.
/// Free variables are the non-pivot columns in ascending order; basis vector k
/// sets the k-th free variable to 1 and the others to 0.
template <ExactField F>
std::optional<AffineSolutionSpace<F>> solve_affine(const Matrix<F>& a, const Vector<F>& b) {
  if (a.rows() != b.dim()) {
    throw DimensionMismatch("system has " + std::to_string(a.rows()) + " rows but rhs has " +
                            std::to_string(b.dim()));
  }
  const F& field = a.field();
  const std::size_t n = a.cols();
  Matrix<F> aug(field, a.rows(), n + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  auto [reduced, rank, pivots] = rref(std::move(aug));
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;

  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;

  Vector<F> particular(field, n);
  for (std::size_t i = 0; i < rank; ++i) particular[pivots[i]] = reduced(i, n);

  std::vector<Vector<F>> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector<F> v(field, n);
    v[f] = field.one();
    for (std::size_t i = 0; i < rank; ++i) v[pivots[i]] = -reduced(i, f);
    basis.push_back(std::move(v));
  }
  return AffineSolutionSpace<F>{std::move(particular), std::move(basis)};
}

/// Row-major Kronecker product: entry[i·dim(v) + j] = u[i]·v[j].
template <ExactField F>
Vector<F> tensor_vec(const Vector<F>& u, const Vector<F>& v) {
  if (!(u.field() == v.field())) throw FieldMismatch("tensor product across fields");
  std::vector<typename F::Element> out;
  out.reserve(u.dim() * v.dim());
  for (std::size_t i = 0; i < u.dim(); ++i) {
    for (std::size_t j = 0; j < v.dim(); ++j) out.push_back(u[i] * v[j]);
  }
  return Vector<F>(u.field(), std::move(out));
}

/// True iff the vectors number exactly their common dimension and are independent.
template <ExactField F>
bool is_basis(std::span<const Vector<F>> vs) {
  if (vs.empty()) throw DimensionMismatch("empty vector sequence");
  const std::size_t d = vs.front().dim();
  for (const auto& v : vs) {
    if (v.dim() != d) throw DimensionMismatch("vectors differ in dimension");
  }
  if (vs.size() != d) return false;
  return !det(Matrix<F>::from_rows(vs.front().field(), vs)).is_zero();
}

template <ExactField F>
std::size_t rank(const Matrix<F>& m) {
  return rref(m).rank;
}

}  // namespace modalkit

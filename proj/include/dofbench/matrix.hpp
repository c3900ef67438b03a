#pragma once

#include "dofbench/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dofbench {

/// Dense row-major matrix with value semantics.
template <typename Scalar>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {}

  Matrix(std::initializer_list<std::initializer_list<Scalar>> init) : rows_(init.size()) {
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
  }

  static Matrix diagonal(const std::vector<Scalar>& entries) {
    Matrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
  }

  static Matrix column_vector(const std::vector<Scalar>& entries) {
    Matrix m(entries.size(), 1);
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, 0) = entries[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Scalar> column(std::size_t c) const {
    std::vector<Scalar> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  Matrix select_columns(const std::vector<std::size_t>& indices) const {
    Matrix out(rows_, indices.size());
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t j = 0; j < indices.size(); ++j) out(r, j) = (*this)(r, indices.at(j));
    return out;
  }

  bool is_zero() const {
    for (const auto& v : data_)
      if (v != 0) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product dimension mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum dimension mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend Matrix operator*(const Scalar& s, Matrix a) {
    for (auto& v : a.data_) v *= s;
    return a;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

using RationalMatrix = Matrix<Rational>;

/// Horizontal concatenation; all blocks must share the row count.
template <typename Scalar>
Matrix<Scalar> hstack(const std::vector<Matrix<Scalar>>& blocks, std::size_t rows) {
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != rows) throw std::invalid_argument("hstack row mismatch");
    cols += b.cols();
  }
  Matrix<Scalar> out(rows, cols);
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, offset + c) = b(r, c);
    offset += b.cols();
  }
  return out;
}

/// Vertical concatenation; all blocks must share the column count.
template <typename Scalar>
Matrix<Scalar> vstack(const std::vector<Matrix<Scalar>>& blocks, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw std::invalid_argument("vstack column mismatch");
    rows += b.rows();
  }
  Matrix<Scalar> out(rows, cols);
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < cols; ++c) out(offset + r, c) = b(r, c);
    offset += b.rows();
  }
  return out;
}

namespace detail {

/// Clears denominators row by row. Returns the integer matrix and the product
/// of the row scale factors (needed to undo the scaling in a determinant).
inline std::pair<Matrix<Integer>, Integer> integer_rows(const RationalMatrix& m) {
  Matrix<Integer> out(m.rows(), m.cols());
  Integer scale = 1;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Integer lcm = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m(r, c).get_den_mpz_t());
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).get_num() * (lcm / m(r, c).get_den());
    scale *= lcm;
  }
  return {std::move(out), std::move(scale)};
}

struct EliminationResult {
  std::size_t rank = 0;
  int swap_sign = 1;
  Integer last_pivot = 1;
};

/// Fraction-free (Bareiss) row echelon reduction in place. Every intermediate
/// entry is a minor of the input, so each division is exact.
inline EliminationResult bareiss_in_place(Matrix<Integer>& m) {
  EliminationResult result;
  Integer previous = 1;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < m.cols() && pivot_row < m.rows(); ++col) {
    std::size_t found = pivot_row;
    while (found < m.rows() && m(found, col) == 0) ++found;
    if (found == m.rows()) continue;
    if (found != pivot_row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(found, c), m(pivot_row, c));
      result.swap_sign = -result.swap_sign;
    }
    const Integer pivot = m(pivot_row, col);
    for (std::size_t r = pivot_row + 1; r < m.rows(); ++r) {
      const Integer factor = m(r, col);
      for (std::size_t c = col + 1; c < m.cols(); ++c) {
        Integer v = pivot * m(r, c) - factor * m(pivot_row, c);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), previous.get_mpz_t());
        m(r, c) = std::move(v);
      }
      m(r, col) = 0;
    }
    previous = pivot;
    ++pivot_row;
  }
  result.rank = pivot_row;
  result.last_pivot = previous;
  return result;
}

}  // namespace detail

/// Rank over the rationals; exact.
inline std::size_t exact_rank(const RationalMatrix& m) {
  if (m.empty()) return 0;
  auto [ints, scale] = detail::integer_rows(m);
  return detail::bareiss_in_place(ints).rank;
}

/// Exact determinant of a square rational matrix.
inline Rational exact_determinant(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (m.rows() == 0) return Rational(1);
  auto [ints, scale] = detail::integer_rows(m);
  const auto result = detail::bareiss_in_place(ints);
  if (result.rank < m.rows()) return Rational(0);
  Rational det(result.last_pivot * result.swap_sign, scale);
  det.canonicalize();
  return det;
}

}  // namespace dofbench

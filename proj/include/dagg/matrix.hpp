#pragma once

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "dagg/errors.hpp"
#include "dagg/rational.hpp"

namespace dagg {

/// Dense matrix with fixed dimensions and bounds-checked access.
/// T is BigInt or BigRat; everything is exact.
template <class T>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}

  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionMismatch("Matrix: ragged rows");
      for (const auto& x : r) data_.push_back(x);
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const T& at(std::size_t i, std::size_t j) const {
    check(i, j);
    return data_[i * cols_ + j];
  }
  T& at(std::size_t i, std::size_t j) {
    check(i, j);
    return data_[i * cols_ + j];
  }

  const T& operator()(std::size_t i, std::size_t j) const { return at(i, j); }
  T& operator()(std::size_t i, std::size_t j) { return at(i, j); }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = T(1);
    return m;
  }

  std::vector<T> col(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
  }

  std::vector<T> row(std::size_t i) const {
    std::vector<T> r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
  }

  void set_col(std::size_t j, const std::vector<T>& c) {
    if (c.size() != rows_) throw DimensionMismatch("set_col: length");
    for (std::size_t i = 0; i < rows_; ++i) at(i, j) = c[i];
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  void check(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_)
      throw std::out_of_range("Matrix index out of range");
  }

  std::size_t rows_, cols_;
  std::vector<T> data_;
};

using IntMatrix = Matrix<BigInt>;
using RatMatrix = Matrix<BigRat>;

template <class T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("multiply: inner dims");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a.at(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        c.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return c;
}

template <class T>
std::vector<T> multiply(const Matrix<T>& a, const std::vector<T>& v) {
  if (a.cols() != v.size()) throw DimensionMismatch("multiply: vector length");
  std::vector<T> r(a.rows(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r[i] += a.at(i, j) * v[j];
  return r;
}

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r.at(i, j) = BigRat(m.at(i, j));
  return r;
}

/// Induced infinity norm: the largest absolute row sum.
inline BigInt infinity_norm(const IntMatrix& m) {
  BigInt best = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    BigInt s = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += abs(m.at(i, j));
    if (s > best) best = s;
  }
  return best;
}

inline BigRat infinity_norm(const RatMatrix& m) {
  BigRat best = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    BigRat s = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += abs(m.at(i, j));
    if (s > best) best = s;
  }
  return best;
}

/// Largest absolute column sum (the induced 1-norm).
inline BigInt max_column_l1(const IntMatrix& m) {
  BigInt best = 0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    BigInt s = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) s += abs(m.at(i, j));
    if (s > best) best = s;
  }
  return best;
}

}  // namespace dagg

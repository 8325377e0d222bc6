#pragma once

// Dense row-major matrices over any scalar, plus exact linear algebra over the rationals.

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hypcurve/scalar.hpp"

namespace hypcurve {

template <class S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, S(0)) {}
  Matrix(std::size_t rows, std::size_t cols, const S& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  S& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const S& aik = a(i, k);
        if (is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    check_same(a, b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    check_same(a, b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend Matrix operator*(const S& s, Matrix a) {
    for (auto& v : a.data_) v *= s;
    return a;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// Largest absolute entry (zero for the empty matrix).
  S max_abs() const {
    S best(0);
    for (const auto& v : data_) {
      S a = abs_of(v);
      if (a > best) best = a;
    }
    return best;
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
  }

  template <class T, class F>
  Matrix<T> map(F&& f) const {
    Matrix<T> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
    return out;
  }

 private:
  static void check_same(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::invalid_argument("matrix sum: shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

// ---- exact rational linear algebra -------------------------------------------------------

struct RrefResult {
  Matrix<Rational> reduced;
  std::vector<std::size_t> pivot_cols;
};

/// Reduced row echelon form by Gauss-Jordan elimination over Q.
RrefResult rref(Matrix<Rational> m);

/// Basis of the right nullspace, one column per free variable (free entry equal to one).
Matrix<Rational> nullspace(const Matrix<Rational>& m);

std::size_t rank(const Matrix<Rational>& m);

Rational determinant(Matrix<Rational> m);

/// Solves a square nonsingular system exactly; throws std::domain_error when singular.
std::vector<Rational> solve(Matrix<Rational> m, std::vector<Rational> rhs);

/// Exact definiteness tests for symmetric rational matrices (symmetric elimination).
bool is_positive_definite(const Matrix<Rational>& m);
bool is_positive_semidefinite(const Matrix<Rational>& m);

}  // namespace hypcurve

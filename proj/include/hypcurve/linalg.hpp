#pragma once

// Floating-point dense linear algebra over Real and double. Implemented on Eigen and
// explicitly instantiated in linalg.cpp so that Eigen stays out of most translation units.

#include <cstdint>
#include <memory>
#include <vector>

#include "hypcurve/matrix.hpp"

namespace hypcurve {

/// Eigenvalues of a symmetric matrix, ascending.
template <class S>
std::vector<S> symmetric_eigenvalues(const Matrix<S>& m);

template <class S>
S min_eigenvalue(const Matrix<S>& m);

/// Eigenvalues of the pencil a - t*b with b positive definite, ascending.
template <class S>
std::vector<S> generalized_eigenvalues(const Matrix<S>& a, const Matrix<S>& b);

/// Singular values, descending.
template <class S>
std::vector<S> singular_values(const Matrix<S>& m);

/// Singular values of re + i*im (each listed once), descending.
template <class S>
std::vector<S> complex_singular_values(const Matrix<S>& re, const Matrix<S>& im);

/// Orthonormal basis (columns) of the numerical nullspace; singular values below
/// rel_tol * sigma_max count as zero.
template <class S>
Matrix<S> numeric_nullspace(const Matrix<S>& m, const S& rel_tol);

/// Orthonormal basis of the column span, Householder QR (columns assumed independent).
template <class S>
Matrix<S> orthonormalize_columns(const Matrix<S>& m);

template <class S>
S determinant_numeric(const Matrix<S>& m);

template <class S>
Matrix<S> inverse_numeric(const Matrix<S>& m);

/// Minimum-norm least-squares solver for a fixed matrix and many right-hand sides.
template <class S>
class LeastSquaresSolver {
 public:
  LeastSquaresSolver(const Matrix<S>& a, const S& rel_tol);
  ~LeastSquaresSolver();
  LeastSquaresSolver(LeastSquaresSolver&&) noexcept;
  LeastSquaresSolver& operator=(LeastSquaresSolver&&) noexcept;

  std::vector<S> solve(const std::vector<S>& rhs) const;
  std::size_t rank() const;
  std::size_t rows() const;
  std::size_t cols() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

template <class S>
std::vector<S> mat_vec(const Matrix<S>& m, const std::vector<S>& v) {
  std::vector<S> out(m.rows(), S(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

template <class S>
S norm2(const std::vector<S>& v) {
  S acc(0);
  for (const auto& x : v) acc += x * x;
  return sqrt_of(acc);
}

}  // namespace hypcurve

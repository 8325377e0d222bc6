#pragma once

// Symmetric linear matrix pencils M = xA + yB + zC.

#include <cstddef>
#include <stdexcept>

#include "hypcurve/form.hpp"
#include "hypcurve/matrix.hpp"

namespace hypcurve {

template <class S>
struct LinearPencil {
  std::size_t size = 0;
  Matrix<S> a, b, c;
  S gamma{1};

  LinearPencil() = default;
  LinearPencil(Matrix<S> a_, Matrix<S> b_, Matrix<S> c_, S gamma_ = S(1))
      : size(a_.rows()), a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), gamma(std::move(gamma_)) {
    if (a.cols() != size || b.rows() != size || b.cols() != size || c.rows() != size ||
        c.cols() != size)
      throw std::invalid_argument("pencil matrices must be square of one size");
  }

  template <class T = S>
  Matrix<T> at(const Point3<T>& p) const {
    Matrix<T> m(size, size);
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = 0; j < size; ++j)
        m(i, j) = lift<T>(a(i, j)) * p[0] + lift<T>(b(i, j)) * p[1] + lift<T>(c(i, j)) * p[2];
    return m;
  }

  FormMatrix<S> forms() const {
    FormMatrix<S> m(size, std::vector<Form<S>>(size));
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = 0; j < size; ++j) m[i][j] = Form<S>::linear(a(i, j), b(i, j), c(i, j));
    return m;
  }

  bool is_symmetric() const { return a.is_symmetric() && b.is_symmetric() && c.is_symmetric(); }

  S max_abs() const {
    S m = a.max_abs();
    if (b.max_abs() > m) m = b.max_abs();
    if (c.max_abs() > m) m = c.max_abs();
    return m;
  }

  template <class T>
  LinearPencil<T> convert() const {
    auto cv = [](const S& v) { return lift<T>(v); };
    return LinearPencil<T>(a.template map<T>(cv), b.template map<T>(cv), c.template map<T>(cv),
                           lift<T>(gamma));
  }

  /// The pencil x -> M(T x).
  LinearPencil compose(const Matrix<S>& t) const {
    LinearPencil out = *this;
    out.a = t(0, 0) * a + t(1, 0) * b + t(2, 0) * c;
    out.b = t(0, 1) * a + t(1, 1) * b + t(2, 1) * c;
    out.c = t(0, 2) * a + t(1, 2) * b + t(2, 2) * c;
    return out;
  }
};

/// Pencil from a symmetric matrix of linear forms.
template <class S>
LinearPencil<S> pencil_from_forms(const FormMatrix<S>& m) {
  const std::size_t n = m.size();
  Matrix<S> a(n, n), b(n, n), c(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw std::invalid_argument("pencil matrix is not square");
    for (std::size_t j = 0; j < n; ++j) {
      if (m[i][j].degree() != 1 && !m[i][j].is_zero())
        throw std::invalid_argument("pencil entries must be linear forms");
      if (m[i][j].is_zero()) continue;
      a(i, j) = m[i][j].coeff(1, 0, 0);
      b(i, j) = m[i][j].coeff(0, 1, 0);
      c(i, j) = m[i][j].coeff(0, 0, 1);
    }
  }
  return LinearPencil<S>(a, b, c);
}

}  // namespace hypcurve

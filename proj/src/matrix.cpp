#include "hypcurve/matrix.hpp"

#include <stdexcept>

namespace hypcurve {

RrefResult rref(Matrix<Rational> m) {
  RrefResult out;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (sgn(m(i, c)) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot == rows) continue;
    if (pivot != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(pivot, j), m(r, j));
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < cols; ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      Rational factor = m(i, c);
      for (std::size_t j = c; j < cols; ++j) m(i, j) -= factor * m(r, j);
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

Matrix<Rational> nullspace(const Matrix<Rational>& m) {
  RrefResult red = rref(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto c : red.pivot_cols) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix<Rational> basis(cols, free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const std::size_t fc = free_cols[k];
    basis(fc, k) = 1;
    for (std::size_t p = 0; p < red.pivot_cols.size(); ++p)
      basis(red.pivot_cols[p], k) = -red.reduced(p, fc);
  }
  return basis;
}

std::size_t rank(const Matrix<Rational>& m) { return rref(m).pivot_cols.size(); }

Rational determinant(Matrix<Rational> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = n;
    for (std::size_t i = c; i < n; ++i)
      if (sgn(m(i, c)) != 0) {
        pivot = i;
        break;
      }
    if (pivot == n) return Rational(0);
    if (pivot != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(pivot, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(m(i, c)) == 0) continue;
      Rational factor = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= factor * m(c, j);
    }
  }
  return det;
}

std::vector<Rational> solve(Matrix<Rational> m, std::vector<Rational> rhs) {
  const std::size_t n = m.rows();
  if (m.cols() != n || rhs.size() != n) throw std::invalid_argument("solve: shape mismatch");
  Matrix<Rational> aug(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n) = rhs[i];
  }
  RrefResult red = rref(std::move(aug));
  if (red.pivot_cols.size() != n || red.pivot_cols.back() != n - 1)
    throw std::domain_error("solve: singular system");
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = red.reduced(i, n);
  return x;
}

namespace {

// Symmetric elimination with diagonal pivoting. Returns false as soon as the matrix is
// seen not to be PSD; sets `definite` when every pivot was strictly positive.
bool symmetric_elimination(Matrix<Rational> m, bool& definite) {
  const std::size_t n = m.rows();
  definite = true;
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pivot = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      if (sgn(m(i, i)) < 0) return false;
      if (sgn(m(i, i)) > 0 && pivot == n) pivot = i;
    }
    if (pivot == n) {
      // Remaining block has zero diagonal; PSD forces it to vanish entirely.
      definite = false;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!done[i] && !done[j] && sgn(m(i, j)) != 0) return false;
      return true;
    }
    done[pivot] = true;
    const Rational p = m(pivot, pivot);
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || sgn(m(i, pivot)) == 0) continue;
      Rational factor = m(i, pivot) / p;
      for (std::size_t j = 0; j < n; ++j) {
        if (done[j]) continue;
        m(i, j) -= factor * m(pivot, j);
      }
    }
  }
  return true;
}

}  // namespace

bool is_positive_definite(const Matrix<Rational>& m) {
  if (!m.is_symmetric()) throw std::invalid_argument("definiteness test needs a symmetric matrix");
  bool definite = false;
  return symmetric_elimination(m, definite) && definite;
}

bool is_positive_semidefinite(const Matrix<Rational>& m) {
  if (!m.is_symmetric()) throw std::invalid_argument("definiteness test needs a symmetric matrix");
  bool definite = false;
  return symmetric_elimination(m, definite);
}

}  // namespace hypcurve

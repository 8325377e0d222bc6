#include "hypcurve/eigen_support.hpp"
#include "hypcurve/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace hypcurve {

namespace {

template <class S>
EMatrix<S> to_eigen(const Matrix<S>& m) {
  EMatrix<S> e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
  return e;
}

template <class S>
Matrix<S> from_eigen(const EMatrix<S>& e) {
  Matrix<S> m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j)
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = e(i, j);
  return m;
}

template <class S>
std::vector<S> to_std(const EVector<S>& v) {
  return std::vector<S>(v.data(), v.data() + v.size());
}

}  // namespace

template <class S>
std::vector<S> symmetric_eigenvalues(const Matrix<S>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eigenvalues: matrix not square");
  if (m.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<EMatrix<S>> es(to_eigen(m), Eigen::EigenvaluesOnly);
  return to_std<S>(es.eigenvalues());
}

template <class S>
S min_eigenvalue(const Matrix<S>& m) {
  auto ev = symmetric_eigenvalues(m);
  if (ev.empty()) throw std::invalid_argument("min_eigenvalue: empty matrix");
  return ev.front();
}

template <class S>
std::vector<S> generalized_eigenvalues(const Matrix<S>& a, const Matrix<S>& b) {
  Eigen::GeneralizedSelfAdjointEigenSolver<EMatrix<S>> es(to_eigen(a), to_eigen(b),
                                                          Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
  if (es.info() != Eigen::Success)
    throw std::domain_error("generalized eigenproblem: right-hand matrix not definite");
  return to_std<S>(es.eigenvalues());
}

template <class S>
std::vector<S> singular_values(const Matrix<S>& m) {
  if (m.rows() == 0 || m.cols() == 0) return {};
  Eigen::JacobiSVD<EMatrix<S>> svd(to_eigen(m));
  return to_std<S>(svd.singularValues());
}

template <class S>
std::vector<S> complex_singular_values(const Matrix<S>& re, const Matrix<S>& im) {
  const std::size_t r = re.rows(), c = re.cols();
  Matrix<S> big(2 * r, 2 * c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      big(i, j) = re(i, j);
      big(i, j + c) = -im(i, j);
      big(i + r, j) = im(i, j);
      big(i + r, j + c) = re(i, j);
    }
  auto sv = singular_values(big);
  // The real embedding duplicates every singular value.
  std::vector<S> out;
  for (std::size_t k = 0; k < sv.size(); k += 2) out.push_back(sv[k]);
  return out;
}

template <class S>
Matrix<S> numeric_nullspace(const Matrix<S>& m, const S& rel_tol) {
  const auto n = static_cast<Eigen::Index>(m.cols());
  if (m.rows() == 0) return Matrix<S>::identity(m.cols());
  Eigen::JacobiSVD<EMatrix<S>> svd(to_eigen(m), Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  S cutoff = sv.size() > 0 ? S(sv(0) * rel_tol) : S(0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  EMatrix<S> basis = svd.matrixV().rightCols(n - rank);
  return from_eigen<S>(basis);
}

template <class S>
Matrix<S> orthonormalize_columns(const Matrix<S>& m) {
  if (m.cols() == 0) return m;
  Eigen::HouseholderQR<EMatrix<S>> qr(to_eigen(m));
  EMatrix<S> q = qr.householderQ() * EMatrix<S>::Identity(m.rows(), m.cols());
  return from_eigen<S>(q);
}

template <class S>
S determinant_numeric(const Matrix<S>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  if (m.rows() == 0) return S(1);
  Eigen::PartialPivLU<EMatrix<S>> lu(to_eigen(m));
  return lu.determinant();
}

template <class S>
Matrix<S> inverse_numeric(const Matrix<S>& m) {
  Eigen::PartialPivLU<EMatrix<S>> lu(to_eigen(m));
  return from_eigen<S>(lu.inverse());
}

template <class S>
struct LeastSquaresSolver<S>::Impl {
  Eigen::CompleteOrthogonalDecomposition<EMatrix<S>> cod;
  std::size_t rows = 0;
  std::size_t cols = 0;
};

template <class S>
LeastSquaresSolver<S>::LeastSquaresSolver(const Matrix<S>& a, const S& rel_tol)
    : impl_(std::make_unique<Impl>()) {
  impl_->rows = a.rows();
  impl_->cols = a.cols();
  EMatrix<S> ea = to_eigen(a);
  // Eigen's threshold is relative to the largest pivot.
  impl_->cod.setThreshold(rel_tol);
  impl_->cod.compute(ea);
}

template <class S>
LeastSquaresSolver<S>::~LeastSquaresSolver() = default;
template <class S>
LeastSquaresSolver<S>::LeastSquaresSolver(LeastSquaresSolver&&) noexcept = default;
template <class S>
LeastSquaresSolver<S>& LeastSquaresSolver<S>::operator=(LeastSquaresSolver&&) noexcept = default;

template <class S>
std::vector<S> LeastSquaresSolver<S>::solve(const std::vector<S>& rhs) const {
  if (rhs.size() != impl_->rows) throw std::invalid_argument("least squares: rhs size mismatch");
  EVector<S> b(static_cast<Eigen::Index>(rhs.size()));
  for (std::size_t i = 0; i < rhs.size(); ++i) b(static_cast<Eigen::Index>(i)) = rhs[i];
  EVector<S> x = impl_->cod.solve(b);
  return to_std<S>(x);
}

template <class S>
std::size_t LeastSquaresSolver<S>::rank() const {
  return static_cast<std::size_t>(impl_->cod.rank());
}
template <class S>
std::size_t LeastSquaresSolver<S>::rows() const {
  return impl_->rows;
}
template <class S>
std::size_t LeastSquaresSolver<S>::cols() const {
  return impl_->cols;
}

#define HYPCURVE_INSTANTIATE_LINALG(S)                                                     \
  template std::vector<S> symmetric_eigenvalues<S>(const Matrix<S>&);                      \
  template S min_eigenvalue<S>(const Matrix<S>&);                                          \
  template std::vector<S> generalized_eigenvalues<S>(const Matrix<S>&, const Matrix<S>&);  \
  template std::vector<S> singular_values<S>(const Matrix<S>&);                            \
  template std::vector<S> complex_singular_values<S>(const Matrix<S>&, const Matrix<S>&);  \
  template Matrix<S> numeric_nullspace<S>(const Matrix<S>&, const S&);                     \
  template Matrix<S> orthonormalize_columns<S>(const Matrix<S>&);                          \
  template S determinant_numeric<S>(const Matrix<S>&);                                     \
  template Matrix<S> inverse_numeric<S>(const Matrix<S>&);                                 \
  template class LeastSquaresSolver<S>;

HYPCURVE_INSTANTIATE_LINALG(Real)
HYPCURVE_INSTANTIATE_LINALG(double)

#undef HYPCURVE_INSTANTIATE_LINALG

}  // namespace hypcurve

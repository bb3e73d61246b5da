#include "core/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qae {

namespace {

using EigenCMat =
    Eigen::Matrix<complexd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const EigenCMat> map_of(const ComplexMatrix& m) {
  return Eigen::Map<const EigenCMat>(m.data(), static_cast<Eigen::Index>(m.rows()),
                                     static_cast<Eigen::Index>(m.cols()));
}

ComplexMatrix from_eigen(const EigenCMat& e) {
  ComplexMatrix out(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
  Eigen::Map<EigenCMat>(out.data(), e.rows(), e.cols()) = e;
  return out;
}

}  // namespace

EigenResult herm_eig(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("herm_eig: matrix not square");
  if (max_abs_diff(m, m.dagger()) > kTol.hermiticity)
    throw std::invalid_argument("herm_eig: matrix not Hermitian within tolerance");

  const EigenCMat sym = 0.5 * (map_of(m) + map_of(m).adjoint());
  Eigen::SelfAdjointEigenSolver<EigenCMat> solver(sym);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("herm_eig: eigendecomposition failed to converge");

  // Eigen sorts ascending; the contract wants descending.
  const Eigen::Index n = sym.rows();
  EigenResult out;
  out.eigenvalues.resize(static_cast<std::size_t>(n));
  EigenCMat vectors(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues[static_cast<std::size_t>(k)] = solver.eigenvalues()(n - 1 - k);
    vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  out.eigenvectors = from_eigen(vectors);
  return out;
}

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m) {
  const EigenResult eig = herm_eig(m);
  for (double lambda : eig.eigenvalues) {
    if (lambda < kTol.psd_floor)
      throw std::invalid_argument("matrix_sqrt_psd: matrix has a negative eigenvalue");
  }
  const std::size_t n = m.rows();
  ComplexMatrix scaled(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    // Eigenvalues inside the noise band around zero are exact zeros of the
    // PSD operator; sqrt would amplify their rounding error to sqrt(eps).
    const double lambda = eig.eigenvalues[c];
    const double root = lambda > kTol.eig_zero ? std::sqrt(lambda) : 0.0;
    for (std::size_t r = 0; r < n; ++r) scaled(r, c) = eig.eigenvectors(r, c) * root;
  }
  return scaled * eig.eigenvectors.dagger();
}

double trace_norm(const ComplexMatrix& m) {
  Eigen::JacobiSVD<EigenCMat> svd(map_of(m));
  return svd.singularValues().sum();
}

std::size_t max_lin_independent(const std::vector<PureState>& states, double tol) {
  if (states.empty()) throw std::invalid_argument("max_lin_independent: empty state set");
  const std::size_t dim = states[0].dim();
  for (const auto& s : states) {
    if (s.dim() != dim)
      throw std::invalid_argument("max_lin_independent: states of mixed dimension");
  }
  EigenCMat stacked(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(states.size()));
  for (std::size_t c = 0; c < states.size(); ++c)
    for (std::size_t r = 0; r < dim; ++r)
      stacked(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = states[c][r];
  Eigen::JacobiSVD<EigenCMat> svd(stacked);
  const auto& sigma = svd.singularValues();
  if (sigma.size() == 0) return 0;
  const double cutoff = tol * sigma(0);
  std::size_t count = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cutoff) ++count;
  }
  return count;
}

}  // namespace qae

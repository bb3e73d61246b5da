#include "core/tomo.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "core/linalg.hpp"
#include "core/tolerances.hpp"

namespace qae {

namespace {

const ComplexMatrix& single_pauli(std::size_t which) {
  static const ComplexMatrix paulis[4] = {
      ComplexMatrix{{1, 0}, {0, 1}},
      ComplexMatrix{{0, 1}, {1, 0}},
      ComplexMatrix{{0, complexd(0, -1)}, {complexd(0, 1), 0}},
      ComplexMatrix{{1, 0}, {0, -1}},
  };
  return paulis[which];
}

void require_process_matrix(const ProcessMatrix& p, const char* who) {
  const std::size_t dim = std::size_t{1} << (2 * p.n_qubits);
  if (p.chi.rows() != dim || p.chi.cols() != dim)
    throw std::invalid_argument(std::string(who) + ": chi dimension does not match qubit count");
  if (max_abs_diff(p.chi, p.chi.dagger()) > kTol.chi_validation)
    throw std::invalid_argument(std::string(who) + ": chi is not Hermitian");
  if (std::abs(p.chi.trace() - complexd(1.0)) > kTol.chi_validation)
    throw std::invalid_argument(std::string(who) + ": chi trace is not 1");
  const EigenResult eig = herm_eig(p.chi);
  if (eig.eigenvalues.back() < -kTol.chi_validation)
    throw std::invalid_argument(std::string(who) + ": chi is not PSD");
}

}  // namespace

std::vector<ComplexMatrix> pauli_basis(std::size_t n_qubits) {
  if (n_qubits == 0 || n_qubits > 8)
    throw std::invalid_argument("pauli_basis: qubit count out of range");
  const std::size_t count = std::size_t{1} << (2 * n_qubits);
  std::vector<ComplexMatrix> basis;
  basis.reserve(count);
  for (std::size_t m = 0; m < count; ++m) {
    // Peel base-4 digits from the most significant (leftmost qubit) down.
    ComplexMatrix word = single_pauli((m >> (2 * (n_qubits - 1))) & 3u);
    for (std::size_t q = 1; q < n_qubits; ++q)
      word = tensor(word, single_pauli((m >> (2 * (n_qubits - 1 - q))) & 3u));
    basis.push_back(std::move(word));
  }
  return basis;
}

ProcessMatrix chi_of_unitary(const ComplexMatrix& u) {
  require_unitary(u, kTol.unitarity, "chi_of_unitary");
  std::size_t n_qubits = 0;
  for (std::size_t dim = u.rows(); dim > 1; dim >>= 1) {
    if (dim & 1u) throw std::invalid_argument("chi_of_unitary: dimension is not a power of 2");
    ++n_qubits;
  }
  if (n_qubits == 0) throw std::invalid_argument("chi_of_unitary: dimension must be at least 2");

  const std::vector<ComplexMatrix> basis = pauli_basis(n_qubits);
  const double dim = static_cast<double>(u.rows());
  std::vector<complexd> c(basis.size());
  for (std::size_t m = 0; m < basis.size(); ++m)
    c[m] = (basis[m].dagger() * u).trace() / dim;

  ProcessMatrix out;
  out.n_qubits = n_qubits;
  out.chi = ComplexMatrix(basis.size(), basis.size());
  for (std::size_t r = 0; r < basis.size(); ++r)
    for (std::size_t col = 0; col < basis.size(); ++col)
      out.chi(r, col) = c[r] * std::conj(c[col]);
  return out;
}

double process_fidelity(const ProcessMatrix& a, const ProcessMatrix& b) {
  require_process_matrix(a, "process_fidelity");
  require_process_matrix(b, "process_fidelity");
  if (a.n_qubits != b.n_qubits)
    throw std::invalid_argument("process_fidelity: qubit counts differ");
  const ComplexMatrix root = matrix_sqrt_psd(a.chi);
  const EigenResult eig = herm_eig(root * b.chi * root);
  double fidelity = 0.0;
  // Same noise-band floor as matrix_sqrt_psd: keep rounding junk in the
  // zero eigenvalues from leaking sqrt(eps)-sized terms into the trace.
  for (double lambda : eig.eigenvalues)
    if (lambda > kTol.eig_zero) fidelity += std::sqrt(lambda);
  return fidelity;
}

}  // namespace qae

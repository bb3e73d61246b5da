#pragma once

#include <vector>

#include "core/matrix.hpp"

namespace qae {

// Tensor words over {I, X, Y, Z} in that per-qubit order, leftmost qubit
// most significant: index m spells the word in base 4 (n = 2: index 1 is
// I (x) X, index 4 is X (x) I).
std::vector<ComplexMatrix> pauli_basis(std::size_t n_qubits);

struct ProcessMatrix {
  ComplexMatrix chi;
  std::size_t n_qubits = 0;
};

// chi = c c^dag with c_m = Tr(E_m^dag U) / 2^n; rank one and unit trace for
// a unitary channel.
ProcessMatrix chi_of_unitary(const ComplexMatrix& u);

// Tr sqrt( sqrt(chi1) chi2 sqrt(chi1) ). Validates Hermiticity, positivity,
// and unit trace of both inputs within 1e-10.
double process_fidelity(const ProcessMatrix& a, const ProcessMatrix& b);

}  // namespace qae

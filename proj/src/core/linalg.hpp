#pragma once

#include <vector>

#include "core/matrix.hpp"
#include "core/tolerances.hpp"

namespace qae {

// Eigenvalues sorted descending; eigenvectors() column k pairs with
// eigenvalues[k] and the column frame is unitary.
struct EigenResult {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

// Hermitian eigendecomposition. Validates Hermiticity of the input within
// kTol.hermiticity and decomposes the symmetrized matrix.
EigenResult herm_eig(const ComplexMatrix& m);

// Principal square root of a PSD Hermitian matrix; eigenvalues below
// kTol.psd_floor are rejected, tiny negatives are clamped to zero.
ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m);

// Sum of singular values (equals the sum of |eigenvalues| for Hermitian input).
double trace_norm(const ComplexMatrix& m);

// Largest number of linearly independent vectors in the set: the count of
// singular values of the stacked column matrix above tol relative to the
// largest one.
std::size_t max_lin_independent(const std::vector<PureState>& states, double tol = kTol.rank);

}  // namespace qae

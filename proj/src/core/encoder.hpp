#pragma once

#include "core/linalg.hpp"
#include "core/matrix.hpp"
#include "core/states.hpp"

namespace qae {

// Pure state on the trash subsystem the encoder rotates the trash into.
using ReferenceState = PureState;

struct EncoderSolution {
  ComplexMatrix unitary;    // trash-major encoder on the full space
  std::size_t rank = 0;     // largest linearly independent subset of the ensemble
  bool lossless = false;    // rank <= dim_latent
  double achieved_cost = 0.0;
};

// J(U) = 1 - sum_i p_i <ref| Tr_latent(U |s_i><s_i| U^dag) |ref>.
double infidelity_cost(const ComplexMatrix& u, const Ensemble& e, const ReferenceState& ref);

// Largest eigenvalue of a density matrix: the best fidelity any pure state
// can have with it. Validates Hermiticity, unit trace, and positivity.
double max_fidelity_bound(const ComplexMatrix& density);

// Unitary mapping |source> to |target> exactly (phase included), built from
// the eigenvector frames of the two rank-1 projectors.
ComplexMatrix align_unitary(const PureState& target, const PureState& source);

// Closed-form encoder: U = (U_A x I_B) U_AB with U_AB the adjoint of the
// density eigenvector frame (descending eigenvalues) and U_A aligning the
// first trash basis vector with the reference. Lossless exactly when the
// ensemble rank fits the latent dimension; the unitary and the honestly
// achieved cost are returned either way.
EncoderSolution perfect_encoder(const Ensemble& e, const ReferenceState& ref);

bool compressible(const Ensemble& e, double tol = kTol.rank);

}  // namespace qae

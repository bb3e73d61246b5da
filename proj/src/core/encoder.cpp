#include "core/encoder.hpp"

#include <cmath>
#include <stdexcept>

namespace qae {

namespace {

// <ref| Tr_latent(|phi><phi|) |ref> without forming the reduced matrix:
// project phi onto ref on the trash factor for each latent basis index.
double trash_overlap(const std::vector<complexd>& phi, const ReferenceState& ref,
                     std::size_t dim_trash, std::size_t dim_latent) {
  double total = 0.0;
  for (std::size_t b = 0; b < dim_latent; ++b) {
    complexd amp = 0.0;
    for (std::size_t a = 0; a < dim_trash; ++a)
      amp += std::conj(ref[a]) * phi[a * dim_latent + b];
    total += std::norm(amp);
  }
  return total;
}

// Unitary whose first column is v, from the eigenvector frame of |v><v|.
// herm_eig sorts descending, so the eigenvalue-1 vector leads; it equals v
// up to a phase, which gets fixed so the first column is exactly v.
ComplexMatrix frame_with_leading(const PureState& v) {
  ComplexMatrix frame = herm_eig(outer(v)).eigenvectors;
  complexd phase = 0.0;
  for (std::size_t r = 0; r < v.dim(); ++r) phase += std::conj(frame(r, 0)) * v[r];
  const double mag = std::abs(phase);
  if (mag < 0.5)
    throw std::runtime_error("align_unitary: projector frame lost the leading vector");
  phase /= mag;
  for (std::size_t r = 0; r < v.dim(); ++r) frame(r, 0) *= phase;
  return frame;
}

}  // namespace

double infidelity_cost(const ComplexMatrix& u, const Ensemble& e, const ReferenceState& ref) {
  const std::size_t dim = e.dim_trash * e.dim_latent;
  require_unitary(u, kTol.unitarity, "infidelity_cost");
  if (u.rows() != dim)
    throw std::invalid_argument("infidelity_cost: unitary does not match the ensemble space");
  if (ref.dim() != e.dim_trash)
    throw std::invalid_argument("infidelity_cost: reference is not on the trash subsystem");
  double fidelity = 0.0;
  for (std::size_t i = 0; i < e.states.size(); ++i) {
    const std::vector<complexd> phi = u * e.states[i].amplitudes();
    fidelity += e.priors[i] * trash_overlap(phi, ref, e.dim_trash, e.dim_latent);
  }
  return 1.0 - fidelity;
}

double max_fidelity_bound(const ComplexMatrix& density) {
  require_density(density, "max_fidelity_bound");
  const EigenResult eig = herm_eig(density);
  if (eig.eigenvalues.back() < kTol.psd_floor)
    throw std::invalid_argument("max_fidelity_bound: density matrix is not PSD");
  return eig.eigenvalues.front();
}

ComplexMatrix align_unitary(const PureState& target, const PureState& source) {
  if (target.dim() != source.dim())
    throw std::invalid_argument("align_unitary: dimension mismatch");
  const ComplexMatrix w = frame_with_leading(target);
  const ComplexMatrix v = frame_with_leading(source);
  return w * v.dagger();
}

EncoderSolution perfect_encoder(const Ensemble& e, const ReferenceState& ref) {
  if (ref.dim() != e.dim_trash)
    throw std::invalid_argument("perfect_encoder: reference is not on the trash subsystem");
  const ComplexMatrix rho = ensemble_density(e);
  const EigenResult eig = herm_eig(rho);

  // V^dag sends the eigenvector of the k-th largest eigenvalue to basis
  // vector k. With rank <= dim_latent all the weight lands inside the
  // trash-index-0 block, so the trash state is exactly |e0><e0| and the
  // local rotation U_A carries it onto the reference.
  const ComplexMatrix u_ab = eig.eigenvectors.dagger();
  const ComplexMatrix u_a = align_unitary(ref, PureState::basis(e.dim_trash, 0));

  EncoderSolution out;
  out.unitary = tensor(u_a, ComplexMatrix::identity(e.dim_latent)) * u_ab;
  out.rank = max_lin_independent(e.states, kTol.rank);
  out.lossless = out.rank <= e.dim_latent;
  out.achieved_cost = infidelity_cost(out.unitary, e, ref);
  return out;
}

bool compressible(const Ensemble& e, double tol) {
  return max_lin_independent(e.states, tol) <= e.dim_latent;
}

}  // namespace qae

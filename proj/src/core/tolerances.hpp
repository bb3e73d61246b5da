#pragma once

namespace qae {

// Every numeric tolerance the public contracts depend on lives here, so a
// reviewer can audit the pinned values in one place.
struct Tolerances {
  double unitarity = 1e-12;          // max-entry norm of U^dag U - I
  double hermiticity = 1e-10;        // herm_eig input gate
  double density_trace = 1e-12;      // |Tr(rho) - 1|
  double psd_floor = -1e-10;         // smallest admissible eigenvalue of PSD input
  double rank = 1e-8;                // relative singular-value cutoff
  double lossless_cost = 1e-9;       // perfect-encoder residual when rank <= latent dim
  double eig_zero = 1e-12;           // eigenvalues <= this are exact zeros (projectors, sqrt)
  double orthogonal_targets = 1e-10; // discrimination trash targets must satisfy |<ta|tb>|
  double chi_validation = 1e-10;     // process-matrix PSD / unit-trace gate
  double norm_zero = 1e-14;          // vectors shorter than this count as the zero vector
};

inline constexpr Tolerances kTol{};

}  // namespace qae

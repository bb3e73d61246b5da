#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "core/matrix.hpp"
#include "core/rng.hpp"

namespace qae {

// Two-qubit basis: path first (R before L), polarization second (H before V),
// so the computational order is RH, RV, LH, LV and |0> means |R> or |H>.
enum class Path { R, L };
enum class Pol { H, V };

struct BasisLabel {
  Path path;
  Pol pol;
};

std::size_t basis_index(BasisLabel label);
BasisLabel basis_label(std::size_t index);
BasisLabel parse_basis_label(std::string_view text);  // "RH", "RV", "LH", "LV"
std::string basis_name(BasisLabel label);

// Amplitudes in RH, RV, LH, LV order; normalized, zero vector rejected.
PureState two_qubit_state(complexd rh, complexd rv, complexd lh, complexd lv);
PureState two_qubit_state(const std::vector<complexd>& amps);

// Angles in radians, each in [0, pi].
struct AlphaTriple {
  double a1;
  double a2;
  double a3;
};

// cos(a1)sin(a2)|00> + cos(a1)cos(a2)|01> + sin(a1)sin(a3)|10> + sin(a1)cos(a3)|11>
PureState alpha_state(const AlphaTriple& alpha);
AlphaTriple sample_alpha(RngStream& rng);

// States with priors over a bipartite space in trash-major order: the first
// (dim_trash) factor is the subsystem the encoder purifies into the
// reference, index i = a * dim_latent + b.
struct Ensemble {
  std::vector<PureState> states;
  std::vector<double> priors;
  std::size_t dim_trash = 2;
  std::size_t dim_latent = 2;
};

// Validates shape: nonempty states, matching dimensions, priors nonnegative
// and summing to 1 within 1e-12. Omitted priors mean equal weights.
Ensemble make_ensemble(std::vector<PureState> states, std::vector<double> priors,
                       std::size_t dim_trash = 2, std::size_t dim_latent = 2);
Ensemble make_ensemble(std::vector<PureState> states, std::size_t dim_trash = 2,
                       std::size_t dim_latent = 2);

ComplexMatrix ensemble_density(const Ensemble& e);

// Reorders a bipartite state from (first x second) to (second x first).
// This is the adapter that turns physically path-major states into
// trash-major order when the trash subsystem is the polarization qubit.
PureState swap_subsystems(const PureState& s, std::size_t dim_first, std::size_t dim_second);
Ensemble swap_subsystems(const Ensemble& e);

}  // namespace qae

#include "core/states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qae {

std::size_t basis_index(BasisLabel label) {
  return (label.path == Path::L ? 2u : 0u) + (label.pol == Pol::V ? 1u : 0u);
}

BasisLabel basis_label(std::size_t index) {
  if (index > 3) throw std::invalid_argument("basis_label: index out of range");
  return BasisLabel{index >= 2 ? Path::L : Path::R, (index & 1u) ? Pol::V : Pol::H};
}

BasisLabel parse_basis_label(std::string_view text) {
  if (text.size() != 2) throw std::invalid_argument("basis label must be two letters, e.g. RH");
  BasisLabel label{};
  switch (text[0]) {
    case 'R': label.path = Path::R; break;
    case 'L': label.path = Path::L; break;
    default: throw std::invalid_argument("basis label path letter must be R or L");
  }
  switch (text[1]) {
    case 'H': label.pol = Pol::H; break;
    case 'V': label.pol = Pol::V; break;
    default: throw std::invalid_argument("basis label polarization letter must be H or V");
  }
  return label;
}

std::string basis_name(BasisLabel label) {
  std::string out;
  out += label.path == Path::R ? 'R' : 'L';
  out += label.pol == Pol::H ? 'H' : 'V';
  return out;
}

PureState two_qubit_state(complexd rh, complexd rv, complexd lh, complexd lv) {
  return PureState({rh, rv, lh, lv});
}

PureState two_qubit_state(const std::vector<complexd>& amps) {
  if (amps.size() != 4)
    throw std::invalid_argument("two_qubit_state: expected 4 amplitudes (RH, RV, LH, LV)");
  return PureState(amps);
}

PureState alpha_state(const AlphaTriple& alpha) {
  constexpr double slack = 1e-12;
  for (double a : {alpha.a1, alpha.a2, alpha.a3}) {
    if (a < -slack || a > std::numbers::pi + slack)
      throw std::invalid_argument("alpha_state: angles must lie in [0, pi]");
  }
  const double c1 = std::cos(alpha.a1);
  const double s1 = std::sin(alpha.a1);
  return two_qubit_state(c1 * std::sin(alpha.a2), c1 * std::cos(alpha.a2),
                         s1 * std::sin(alpha.a3), s1 * std::cos(alpha.a3));
}

AlphaTriple sample_alpha(RngStream& rng) {
  return AlphaTriple{rng.uniform(0.0, std::numbers::pi), rng.uniform(0.0, std::numbers::pi),
                     rng.uniform(0.0, std::numbers::pi)};
}

Ensemble make_ensemble(std::vector<PureState> states, std::vector<double> priors,
                       std::size_t dim_trash, std::size_t dim_latent) {
  if (states.empty()) throw std::invalid_argument("ensemble: empty");
  const std::size_t dim = dim_trash * dim_latent;
  if (dim == 0) throw std::invalid_argument("ensemble: zero subsystem dimension");
  for (const auto& s : states) {
    if (s.dim() != dim)
      throw std::invalid_argument("ensemble: state dimension does not match the partition");
  }
  if (priors.empty()) {
    priors.assign(states.size(), 1.0 / static_cast<double>(states.size()));
  }
  if (priors.size() != states.size())
    throw std::invalid_argument("ensemble: priors and states differ in count");
  double total = 0.0;
  for (double p : priors) {
    if (p < 0.0) throw std::invalid_argument("ensemble: negative prior");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("ensemble: priors must sum to 1");
  return Ensemble{std::move(states), std::move(priors), dim_trash, dim_latent};
}

Ensemble make_ensemble(std::vector<PureState> states, std::size_t dim_trash,
                       std::size_t dim_latent) {
  return make_ensemble(std::move(states), {}, dim_trash, dim_latent);
}

ComplexMatrix ensemble_density(const Ensemble& e) {
  const std::size_t dim = e.dim_trash * e.dim_latent;
  ComplexMatrix rho(dim, dim);
  for (std::size_t i = 0; i < e.states.size(); ++i) {
    const PureState& s = e.states[i];
    const double p = e.priors[i];
    if (p == 0.0) continue;
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) rho(r, c) += p * s[r] * std::conj(s[c]);
  }
  return rho;
}

PureState swap_subsystems(const PureState& s, std::size_t dim_first, std::size_t dim_second) {
  if (s.dim() != dim_first * dim_second)
    throw std::invalid_argument("swap_subsystems: dimensions do not factor the state");
  std::vector<complexd> out(s.dim());
  for (std::size_t a = 0; a < dim_first; ++a)
    for (std::size_t b = 0; b < dim_second; ++b)
      out[b * dim_first + a] = s[a * dim_second + b];
  return PureState(std::move(out));
}

Ensemble swap_subsystems(const Ensemble& e) {
  std::vector<PureState> swapped;
  swapped.reserve(e.states.size());
  for (const auto& s : e.states) swapped.push_back(swap_subsystems(s, e.dim_trash, e.dim_latent));
  return Ensemble{std::move(swapped), e.priors, e.dim_latent, e.dim_trash};
}

}  // namespace qae

#include "core/disc.hpp"

#include <cmath>
#include <stdexcept>

#include "core/linalg.hpp"
#include "core/tolerances.hpp"

namespace qae {

namespace {

double trash_target_overlap(const std::vector<complexd>& phi, const PureState& target,
                            std::size_t dim_trash, std::size_t dim_latent) {
  double total = 0.0;
  for (std::size_t b = 0; b < dim_latent; ++b) {
    complexd amp = 0.0;
    for (std::size_t a = 0; a < dim_trash; ++a)
      amp += std::conj(target[a]) * phi[a * dim_latent + b];
    total += std::norm(amp);
  }
  return total;
}

}  // namespace

void validate_problem(const DiscriminationProblem& p) {
  if (p.group_a.empty() || p.group_b.empty())
    throw std::invalid_argument("discrimination: both groups need at least one state");
  const std::size_t dim = p.group_a.front().state.dim();
  double total = 0.0;
  for (const auto* group : {&p.group_a, &p.group_b}) {
    for (const auto& member : *group) {
      if (member.state.dim() != dim)
        throw std::invalid_argument("discrimination: states of mixed dimension");
      if (member.prior < 0.0) throw std::invalid_argument("discrimination: negative prior");
      total += member.prior;
    }
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("discrimination: priors must sum to 1");
}

HelstromResult helstrom_bound(const DiscriminationProblem& p) {
  validate_problem(p);
  const std::size_t dim = p.group_a.front().state.dim();
  ComplexMatrix m(dim, dim);
  double prior_a = 0.0;
  for (const auto& member : p.group_a) {
    m += member.prior * outer(member.state);
    prior_a += member.prior;
  }
  for (const auto& member : p.group_b) m -= member.prior * outer(member.state);

  const EigenResult eig = herm_eig(m);
  HelstromResult out;
  out.projector_a = ComplexMatrix(dim, dim);
  double positive_part = 0.0;
  out.trace_norm_m = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    out.trace_norm_m += std::abs(eig.eigenvalues[k]);
    if (eig.eigenvalues[k] > kTol.eig_zero) {
      positive_part += eig.eigenvalues[k];
      for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
          out.projector_a(r, c) +=
              eig.eigenvectors(r, k) * std::conj(eig.eigenvectors(c, k));
    }
  }
  out.p_error = prior_a - positive_part;
  return out;
}

double helstrom_two_density(const ComplexMatrix& rho_a, double w_a, const ComplexMatrix& rho_b,
                            double w_b) {
  if (w_a < 0.0 || w_b < 0.0 || std::abs(w_a + w_b - 1.0) > 1e-12)
    throw std::invalid_argument("helstrom_two_density: weights must be a distribution");
  require_density(rho_a, "helstrom_two_density");
  require_density(rho_b, "helstrom_two_density");
  return 0.5 * (1.0 - trace_norm(w_a * rho_a - w_b * rho_b));
}

double closed_form_radicand(double theta1, double theta2, const std::array<double, 4>& priors) {
  const double pa1 = priors[0];
  const double pa2 = priors[1];
  const double pb1 = priors[2];
  const double pb2 = priors[3];
  for (double p : priors) {
    if (p < 0.0) throw std::invalid_argument("closed_form_perror: negative prior");
  }
  if (std::abs(pa1 + pa2 + pb1 + pb2 - 1.0) > 1e-12)
    throw std::invalid_argument("closed_form_perror: priors must sum to 1");
  const double c1 = std::cos(2.0 * theta1);
  const double c2 = std::cos(2.0 * theta2);
  const double cap_c = pa1 + pb1;
  const double cap_d = pa2 + pb2;
  return 1.0 - 4.0 * pa1 * pb1 * c1 * c1 - 4.0 * pa2 * pb2 * c2 * c2 +
         2.0 * ((pa1 * pa2 + pb1 * pb2) * std::cos(2.0 * theta1 - 2.0 * theta2) -
                (pa2 * pb1 + pa1 * pb2) * std::cos(2.0 * theta1 + 2.0 * theta2)) -
         2.0 * cap_c * cap_d;
}

double closed_form_perror(double theta1, double theta2, const std::array<double, 4>& priors) {
  const double radicand = closed_form_radicand(theta1, theta2, priors);
  return 0.5 * (1.0 - std::sqrt(std::max(radicand, 0.0)));
}

std::pair<PureState, PureState> optimal_symmetric_measurement() {
  const double r = 1.0 / std::sqrt(2.0);
  return {PureState({r, r}), PureState({r, -r})};
}

double group_encoding_cost(const ComplexMatrix& u, const DiscriminationProblem& p,
                           std::size_t dim_trash, std::size_t dim_latent,
                           const PureState& target_a, const PureState& target_b) {
  validate_problem(p);
  require_unitary(u, kTol.unitarity, "group_encoding_cost");
  const std::size_t dim = dim_trash * dim_latent;
  if (u.rows() != dim || p.group_a.front().state.dim() != dim)
    throw std::invalid_argument("group_encoding_cost: dimensions do not match the partition");
  if (target_a.dim() != dim_trash || target_b.dim() != dim_trash)
    throw std::invalid_argument("group_encoding_cost: targets are not on the trash subsystem");
  if (std::abs(inner(target_a, target_b)) > kTol.orthogonal_targets)
    throw std::invalid_argument("group_encoding_cost: trash targets must be orthogonal");

  double kept = 0.0;
  for (const auto& member : p.group_a) {
    const std::vector<complexd> phi = u * member.state.amplitudes();
    kept += member.prior * trash_target_overlap(phi, target_a, dim_trash, dim_latent);
  }
  for (const auto& member : p.group_b) {
    const std::vector<complexd> phi = u * member.state.amplitudes();
    kept += member.prior * trash_target_overlap(phi, target_b, dim_trash, dim_latent);
  }
  return 1.0 - kept;
}

}  // namespace qae

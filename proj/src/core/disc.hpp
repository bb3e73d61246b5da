#pragma once

#include <array>
#include <utility>
#include <vector>

#include "core/matrix.hpp"

namespace qae {

struct WeightedState {
  PureState state;
  double prior;
};

// Two labelled groups of pure states; priors are absolute (all of them
// together sum to 1).
struct DiscriminationProblem {
  std::vector<WeightedState> group_a;
  std::vector<WeightedState> group_b;
};

void validate_problem(const DiscriminationProblem& p);

struct HelstromResult {
  double p_error = 0.0;
  ComplexMatrix projector_a;  // optimal POVM element assigned to group a
  double trace_norm_m = 0.0;  // ||sum_a P|psi><psi| - sum_b P|psi><psi||_1
};

// Minimum group-discrimination error: M = sum_a P_i |psi_i><psi_i| -
// sum_b P_i |psi_i><psi_i|, Pi_a the projector onto the strictly positive
// eigenspace of M (zero eigenvalues go to Pi_b), p_error = sum_a P_i -
// Tr(M Pi_a).
HelstromResult helstrom_bound(const DiscriminationProblem& p);

// Minimum error for discriminating two mixed states with weights w_a, w_b:
// (w_a + w_b)/2 ... specifically  p = (1 - ||w_a rho_a - w_b rho_b||_1) / 2
// when w_a + w_b = 1.
double helstrom_two_density(const ComplexMatrix& rho_a, double w_a, const ComplexMatrix& rho_b,
                            double w_b);

// Closed form for the symmetric single-qubit family
//   group a: cos t |0> + sin t |1>  at t = theta1, theta2
//   group b: cos t |0> - sin t |1>  at t = theta1, theta2
// with priors (Pa1, Pa2, Pb1, Pb2):
//   P_err = 1/2 (1 - sqrt(radicand)), presuming M has one nonnegative and
// one nonpositive eigenvalue (holds away from extreme prior imbalance).
double closed_form_perror(double theta1, double theta2, const std::array<double, 4>& priors);

// The expression under that square root; algebraically the squared eigenvalue
// gap of M, so it is nonnegative for every valid prior vector.
double closed_form_radicand(double theta1, double theta2, const std::array<double, 4>& priors);

// The measurement achieving the bound for the equal-prior symmetric family:
// the projectors onto (|0> + |1>)/sqrt2 (group a) and (|0> - |1>)/sqrt2.
std::pair<PureState, PureState> optimal_symmetric_measurement();

// Cost of an encoding that routes group a's trash to target_a and group b's
// to target_b (targets must be orthogonal): 1 - sum_i P_i <t_g(i)|
// Tr_latent(U rho_i U^dag) |t_g(i)>. States are trash-major.
double group_encoding_cost(const ComplexMatrix& u, const DiscriminationProblem& p,
                           std::size_t dim_trash, std::size_t dim_latent,
                           const PureState& target_a, const PureState& target_b);

}  // namespace qae

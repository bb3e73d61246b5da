#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "core/disc.hpp"
#include "core/linalg.hpp"
#include "core/matrix.hpp"
#include "core/rng.hpp"
#include "core/states.hpp"
#include "support/test_support.hpp"

using namespace qae;
using test::random_pure;
using test::random_unitary;

namespace {

constexpr double kPi = std::numbers::pi;

PureState family_state(double theta, bool mirrored) {
  const double s = mirrored ? -std::sin(theta) : std::sin(theta);
  return PureState({std::cos(theta), s});
}

DiscriminationProblem symmetric_family(double theta1, double theta2,
                                       const std::array<double, 4>& priors) {
  DiscriminationProblem p;
  p.group_a = {{family_state(theta1, false), priors[0]}, {family_state(theta2, false), priors[1]}};
  p.group_b = {{family_state(theta1, true), priors[2]}, {family_state(theta2, true), priors[3]}};
  return p;
}

std::array<double, 4> random_priors(RngStream& rng) {
  std::array<double, 4> p{};
  double total = 0.0;
  for (auto& pi : p) {
    pi = rng.uniform();
    total += pi;
  }
  for (auto& pi : p) pi /= total;
  // Renormalization error must stay under the validation gate.
  p[3] = 1.0 - p[0] - p[1] - p[2];
  return p;
}

// Test-side 2x2 real-symmetric determinant of M for the mirrored family.
double family_det_m(double theta1, double theta2, const std::array<double, 4>& priors) {
  double m00 = 0.0, m01 = 0.0, m11 = 0.0;
  const double sgn[4] = {1.0, 1.0, -1.0, -1.0};
  const double th[4] = {theta1, theta2, theta1, theta2};
  const double mirror[4] = {0.0, 0.0, 1.0, 1.0};
  for (int i = 0; i < 4; ++i) {
    const double c = std::cos(th[i]);
    const double s = mirror[i] > 0.5 ? -std::sin(th[i]) : std::sin(th[i]);
    m00 += sgn[i] * priors[i] * c * c;
    m01 += sgn[i] * priors[i] * c * s;
    m11 += sgn[i] * priors[i] * s * s;
  }
  return m00 * m11 - m01 * m01;
}

double measurement_error(const DiscriminationProblem& p, const PureState& povm_a) {
  const ComplexMatrix proj = outer(povm_a);
  double err = 0.0;
  for (const auto& m : p.group_a) err += m.prior * (1.0 - expectation(m.state, proj).real());
  for (const auto& m : p.group_b) err += m.prior * expectation(m.state, proj).real();
  return err;
}

}  // namespace

TEST_CASE("validate_problem rejects malformed input") {
  DiscriminationProblem p;
  CHECK_THROWS(validate_problem(p));
  p.group_a = {{PureState::basis(2, 0), 0.5}};
  CHECK_THROWS(validate_problem(p));

  p.group_b = {{PureState::basis(4, 0), 0.5}};
  CHECK_THROWS(validate_problem(p));

  p.group_b = {{PureState::basis(2, 1), 0.4}};
  CHECK_THROWS(validate_problem(p));

  p.group_b = {{PureState::basis(2, 1), -0.5}};
  CHECK_THROWS(validate_problem(p));

  p.group_b = {{PureState::basis(2, 1), 0.5}};
  CHECK_NOTHROW(validate_problem(p));
}

TEST_CASE("helstrom_bound on pinned problems") {
  DiscriminationProblem orth;
  orth.group_a = {{PureState::basis(2, 0), 0.5}};
  orth.group_b = {{PureState::basis(2, 1), 0.5}};
  const HelstromResult r = helstrom_bound(orth);
  CHECK(r.p_error <= 1e-15);
  CHECK(max_abs_diff(r.projector_a, outer(PureState::basis(2, 0))) <= 1e-12);
  CHECK(r.trace_norm_m == doctest::Approx(1.0).epsilon(1e-12));

  // The same state on both sides is indistinguishable.
  DiscriminationProblem same;
  same.group_a = {{PureState::basis(2, 0), 0.5}};
  same.group_b = {{PureState::basis(2, 0), 0.5}};
  CHECK(helstrom_bound(same).p_error == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("helstrom_bound matches the two-pure-state closed form") {
  RngStream rng(501);
  for (std::size_t dim : {std::size_t{2}, std::size_t{4}}) {
    for (int draw = 0; draw < 100; ++draw) {
      const PureState psi_a = random_pure(dim, rng);
      const PureState psi_b = random_pure(dim, rng);
      const double w = rng.uniform(0.05, 0.95);
      DiscriminationProblem p;
      p.group_a = {{psi_a, w}};
      p.group_b = {{psi_b, 1.0 - w}};
      const double overlap2 = std::norm(inner(psi_a, psi_b));
      const double expected =
          0.5 * (1.0 - std::sqrt(1.0 - 4.0 * w * (1.0 - w) * overlap2));
      CHECK(helstrom_bound(p).p_error == doctest::Approx(expected).epsilon(1e-10));
      CHECK(helstrom_two_density(outer(psi_a), w, outer(psi_b), 1.0 - w) ==
            doctest::Approx(expected).epsilon(1e-10));
    }
  }
}

TEST_CASE("helstrom projector invariants and achievability") {
  RngStream rng(503);
  for (int draw = 0; draw < 100; ++draw) {
    DiscriminationProblem p;
    const auto priors = random_priors(rng);
    p.group_a = {{random_pure(4, rng), priors[0]}, {random_pure(4, rng), priors[1]}};
    p.group_b = {{random_pure(4, rng), priors[2]}, {random_pure(4, rng), priors[3]}};
    const HelstromResult r = helstrom_bound(p);

    CHECK(max_abs_diff(r.projector_a, r.projector_a.dagger()) <= 1e-12);
    CHECK(max_abs_diff(r.projector_a * r.projector_a, r.projector_a) <= 1e-11);
    CHECK(r.p_error >= -1e-12);
    CHECK(r.p_error <= 0.5 + 1e-12);
    CHECK(r.p_error == doctest::Approx(0.5 * (1.0 - r.trace_norm_m)).epsilon(1e-11));

    // Measuring {Pi_a, I - Pi_a} achieves exactly the reported error.
    double err = 0.0;
    for (const auto& m : p.group_a)
      err += m.prior * (1.0 - expectation(m.state, r.projector_a).real());
    for (const auto& m : p.group_b) err += m.prior * expectation(m.state, r.projector_a).real();
    CHECK(err == doctest::Approx(r.p_error).epsilon(1e-10));
  }
}

TEST_CASE("zero eigenvalues of M belong to the complement projector") {
  // One pure state per group in dim 4: M has two exactly-zero eigenvalues
  // and Pi_a keeps only the strictly positive direction.
  RngStream rng(507);
  DiscriminationProblem p;
  p.group_a = {{random_pure(4, rng), 0.5}};
  p.group_b = {{random_pure(4, rng), 0.5}};
  const HelstromResult r = helstrom_bound(p);
  CHECK(std::abs(r.projector_a.trace() - complexd(1.0)) <= 1e-10);
}

TEST_CASE("fig5a endpoint bound") {
  // Groups {±4°} vs {56°, 64°} mirror jointly about 30°, so rotating by
  // −30° maps the problem onto the symmetric family at θ₁ = 34°, θ₂ = 26°:
  // p = ½ − (sin 68° + sin 52°)/4.
  const double d = kPi / 180.0;
  DiscriminationProblem p;
  p.group_a = {{family_state(4.0 * d, false), 0.25}, {family_state(-4.0 * d, false), 0.25}};
  p.group_b = {{family_state(56.0 * d, false), 0.25}, {family_state(64.0 * d, false), 0.25}};
  const HelstromResult r = helstrom_bound(p);

  const double oracle = 0.5 - (std::sin(68.0 * d) + std::sin(52.0 * d)) / 4.0;
  CHECK(r.p_error == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(r.trace_norm_m == doctest::Approx(1.0 - 2.0 * oracle).epsilon(1e-12));
  CHECK(closed_form_perror(34.0 * d, 26.0 * d, {0.25, 0.25, 0.25, 0.25}) ==
        doctest::Approx(oracle).epsilon(1e-13));
}

TEST_CASE("closed form on pinned angles") {
  const std::array<double, 4> equal = {0.25, 0.25, 0.25, 0.25};

  // θ₁ = π/2, θ₂ = 0: both groups are {|1⟩, |0⟩} up to sign.
  CHECK(closed_form_perror(kPi / 2.0, 0.0, equal) == doctest::Approx(0.5).epsilon(1e-13));

  // θ = π/4 states are |±⟩: orthogonal groups, perfect discrimination.
  CHECK(closed_form_perror(kPi / 4.0, kPi / 4.0, equal) <= 1e-13);

  // Degenerate overlap at θ₁ = π/4, θ₂ = −π/4 still matches the solver.
  const DiscriminationProblem p = symmetric_family(kPi / 4.0, -kPi / 4.0, equal);
  CHECK(closed_form_perror(kPi / 4.0, -kPi / 4.0, equal) ==
        doctest::Approx(helstrom_bound(p).p_error).epsilon(1e-11));

  CHECK_THROWS(closed_form_perror(0.3, 0.2, {0.5, 0.5, 0.5, 0.5}));
  CHECK_THROWS(closed_form_perror(0.3, 0.2, {-0.25, 0.5, 0.5, 0.25}));
}

TEST_CASE("closed form equals the general solver when det M <= 0") {
  RngStream rng(509);
  int accepted = 0;
  while (accepted < 500) {
    const double theta1 = rng.uniform(0.0, kPi);
    const double theta2 = rng.uniform(0.0, kPi);
    const auto priors = random_priors(rng);
    // The closed form presumes M keeps one sign pair; reject prior draws
    // so imbalanced that both eigenvalues share a sign.
    if (family_det_m(theta1, theta2, priors) > 0.0) continue;
    ++accepted;

    const DiscriminationProblem p = symmetric_family(theta1, theta2, priors);
    const HelstromResult r = helstrom_bound(p);
    const double closed = closed_form_perror(theta1, theta2, priors);
    CHECK(closed == doctest::Approx(r.p_error).epsilon(1e-10));
    CHECK(closed == doctest::Approx(0.5 * (1.0 - r.trace_norm_m)).epsilon(1e-10));
  }
}

TEST_CASE("equal-prior closed form reduces to the printed overlap formula") {
  RngStream rng(511);
  const std::array<double, 4> equal = {0.25, 0.25, 0.25, 0.25};
  for (int draw = 0; draw < 200; ++draw) {
    const double theta1 = rng.uniform(0.0, kPi);
    const double theta2 = rng.uniform(0.0, kPi);
    const double expected = 0.5 - (std::sin(2.0 * theta1) + std::sin(2.0 * theta2)) / 4.0;
    // The reduction assumes the family's M keeps a nonnegative gap, which
    // holds at equal priors whenever sin2θ₁ + sin2θ₂ ≥ 0.
    if (std::sin(2.0 * theta1) + std::sin(2.0 * theta2) < 0.0) continue;
    CHECK(closed_form_perror(theta1, theta2, equal) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("the radicand is a squared eigenvalue gap") {
  RngStream rng(513);
  for (int draw = 0; draw < 10000; ++draw) {
    const double theta1 = rng.uniform(-kPi, kPi);
    const double theta2 = rng.uniform(-kPi, kPi);
    const auto priors = random_priors(rng);
    CHECK(closed_form_radicand(theta1, theta2, priors) >= -1e-12);
  }
}

TEST_CASE("optimal symmetric measurement") {
  const auto [plus, minus] = optimal_symmetric_measurement();
  CHECK(std::abs(inner(plus, minus)) <= 1e-15);
  CHECK(max_abs_diff(outer(plus) + outer(minus), ComplexMatrix::identity(2)) <= 1e-15);

  // At 45° the measurement separates {|+⟩} from {|−⟩} perfectly.
  const std::array<double, 4> equal = {0.25, 0.25, 0.25, 0.25};
  CHECK(measurement_error(symmetric_family(kPi / 4.0, kPi / 4.0, equal), plus) <= 1e-15);

  // The fixed {|+⟩, |−⟩} measurement achieves the closed-form optimum for
  // every equal-prior member of the family.
  RngStream rng(517);
  for (int draw = 0; draw < 100; ++draw) {
    const double theta1 = rng.uniform(0.0, kPi / 2.0);
    const double theta2 = rng.uniform(0.0, kPi / 2.0);
    const DiscriminationProblem p = symmetric_family(theta1, theta2, equal);
    CHECK(measurement_error(p, plus) ==
          doctest::Approx(closed_form_perror(theta1, theta2, equal)).epsilon(1e-10));
  }
}

TEST_CASE("group_encoding_cost on pinned inputs") {
  const ComplexMatrix i4 = ComplexMatrix::identity(4);
  const PureState t0 = PureState::basis(2, 0);
  const PureState t1 = PureState::basis(2, 1);

  DiscriminationProblem orth;
  orth.group_a = {{PureState::basis(4, 0), 0.5}};
  orth.group_b = {{PureState::basis(4, 2), 0.5}};
  CHECK(group_encoding_cost(i4, orth, 2, 2, t0, t1) <= 1e-15);

  CHECK_THROWS(group_encoding_cost(i4, orth, 2, 2, t0, PureState({0.8, 0.6})));
  CHECK_THROWS(group_encoding_cost(ComplexMatrix::identity(2), orth, 2, 2, t0, t1));
  CHECK_THROWS(group_encoding_cost(i4, orth, 2, 2, PureState::basis(4, 0), t1));
}

TEST_CASE("identical groups cost at least one half") {
  RngStream rng(519);
  DiscriminationProblem p;
  const PureState shared = random_pure(4, rng);
  p.group_a = {{shared, 0.5}};
  p.group_b = {{shared, 0.5}};
  for (int draw = 0; draw < 50; ++draw) {
    const ComplexMatrix u = random_unitary(4, rng);
    CHECK(group_encoding_cost(u, p, 2, 2, PureState::basis(2, 0), PureState::basis(2, 1)) >=
          0.5 - 1e-12);
  }
}

TEST_CASE("encoding cost dominates the Helstrom bound") {
  // Reading out orthogonal trash targets after any unitary is one specific
  // POVM, so its error can never beat the optimal measurement.
  RngStream rng(523);
  for (int draw = 0; draw < 200; ++draw) {
    DiscriminationProblem p;
    const auto priors = random_priors(rng);
    p.group_a = {{random_pure(4, rng), priors[0]}, {random_pure(4, rng), priors[1]}};
    p.group_b = {{random_pure(4, rng), priors[2]}, {random_pure(4, rng), priors[3]}};
    const double bound = helstrom_bound(p).p_error;
    const ComplexMatrix u = random_unitary(4, rng);
    const double cost =
        group_encoding_cost(u, p, 2, 2, PureState::basis(2, 0), PureState::basis(2, 1));
    CHECK(cost >= bound - 1e-9);
  }
}

TEST_CASE("fig5a embedded states keep the bound under any device") {
  // cosθ|RH⟩ + sinθ|RV⟩ with trash = polarization becomes, in trash-major
  // indices, cosθ|00⟩ + sinθ|10⟩.
  const double d = kPi / 180.0;
  auto embed = [&](double theta) {
    return PureState({std::cos(theta * d), 0.0, std::sin(theta * d), 0.0});
  };
  DiscriminationProblem p;
  p.group_a = {{embed(4.0), 0.25}, {embed(-4.0), 0.25}};
  p.group_b = {{embed(56.0), 0.25}, {embed(64.0), 0.25}};

  const double bound = helstrom_bound(p).p_error;
  CHECK(bound == doctest::Approx(0.5 - (std::sin(68.0 * d) + std::sin(52.0 * d)) / 4.0)
                     .epsilon(1e-12));

  RngStream rng(527);
  for (int draw = 0; draw < 100; ++draw) {
    const ComplexMatrix u = random_unitary(4, rng);
    const double cost =
        group_encoding_cost(u, p, 2, 2, PureState::basis(2, 0), PureState::basis(2, 1));
    CHECK(cost >= bound - 1e-9);
  }
}

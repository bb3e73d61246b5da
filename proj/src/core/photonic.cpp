#include "core/photonic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "core/tolerances.hpp"

namespace qae {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr complexd kI{0.0, 1.0};

ComplexMatrix block2x2(const ComplexMatrix& rr, const ComplexMatrix& rl,
                       const ComplexMatrix& lr, const ComplexMatrix& ll) {
  ComplexMatrix out(4, 4);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) {
      out(r, c) = rr(r, c);
      out(r, c + 2) = rl(r, c);
      out(r + 2, c) = lr(r, c);
      out(r + 2, c + 2) = ll(r, c);
    }
  return out;
}

}  // namespace

ComplexMatrix wave_plate(WavePlateKind kind, double theta) {
  if (kind == WavePlateKind::half) {
    const double c2 = std::cos(2.0 * theta);
    const double s2 = std::sin(2.0 * theta);
    return ComplexMatrix{{c2, s2}, {s2, -c2}};
  }
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const complexd front = std::exp(complexd(0.0, -kPi / 4.0));
  const complexd off = (1.0 - kI) * s * c;
  return front * ComplexMatrix{{c * c + kI * s * s, off}, {off, s * s + kI * c * c}};
}

ComplexMatrix stage_unitary(const StageParams& p) {
  const complexd phase = std::exp(complexd(0.0, p.phase));
  return phase * (wave_plate(WavePlateKind::quarter, p.qwp2) *
                  wave_plate(WavePlateKind::half, p.hwp) *
                  wave_plate(WavePlateKind::quarter, p.qwp1));
}

StageParams identity_stage() { return StageParams{0.0, 0.0, 0.0, kPi / 2.0}; }

ComplexMatrix synthesize(const ComplexMatrix& v1, const ComplexMatrix& v2,
                         const ComplexMatrix& vr, const ComplexMatrix& vl) {
  for (const auto* v : {&v1, &v2, &vr, &vl}) {
    if (v->rows() != 2 || v->cols() != 2)
      throw std::invalid_argument("synthesize: stage unitaries must be 2x2");
    require_unitary(*v, kTol.unitarity, "synthesize");
  }
  const ComplexMatrix sum = vr + vl;
  const ComplexMatrix diff = vr - vl;
  const ComplexMatrix rr = 0.5 * (v2 * sum * v1);
  const ComplexMatrix rl = complexd(0.0, -0.5) * (v2 * diff);
  const ComplexMatrix lr = complexd(0.0, 0.5) * (diff * v1);
  const ComplexMatrix ll = 0.5 * sum;
  return block2x2(rr, rl, lr, ll);
}

DeviceParams identity_device() {
  return DeviceParams{identity_stage(), identity_stage(), identity_stage(), identity_stage()};
}

ComplexMatrix device_unitary(const DeviceParams& d) {
  return synthesize(stage_unitary(d.v1), stage_unitary(d.v2), stage_unitary(d.vr),
                    stage_unitary(d.vl));
}

std::array<double, kDeviceParamCount> device_to_array(const DeviceParams& d) {
  return {d.v1.qwp1, d.v1.hwp, d.v1.qwp2, d.v1.phase, d.v2.qwp1, d.v2.hwp, d.v2.qwp2,
          d.v2.phase, d.vr.qwp1, d.vr.hwp, d.vr.qwp2, d.vr.phase, d.vl.qwp1, d.vl.hwp,
          d.vl.qwp2, d.vl.phase};
}

DeviceParams device_from_array(const std::array<double, kDeviceParamCount>& a) {
  return DeviceParams{StageParams{a[0], a[1], a[2], a[3]}, StageParams{a[4], a[5], a[6], a[7]},
                      StageParams{a[8], a[9], a[10], a[11]},
                      StageParams{a[12], a[13], a[14], a[15]}};
}

const std::array<std::string, kDeviceParamCount>& device_param_names() {
  static const std::array<std::string, kDeviceParamCount> names = {
      "v1.qwp1", "v1.hwp", "v1.qwp2", "v1.phase", "v2.qwp1", "v2.hwp", "v2.qwp2", "v2.phase",
      "vr.qwp1", "vr.hwp", "vr.qwp2", "vr.phase", "vl.qwp1", "vl.hwp", "vl.qwp2", "vl.phase"};
  return names;
}

double gate_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
    throw std::invalid_argument("gate_distance: shape mismatch");
  return 1.0 - std::abs((a.dagger() * b).trace()) / static_cast<double>(a.rows());
}

ComplexMatrix gate_matrix(GateName g) {
  const double r = 1.0 / std::sqrt(2.0);
  const complexd h{0.5, 0.5};   // (1+i)/2
  const complexd hc{0.5, -0.5}; // (1-i)/2
  switch (g) {
    case GateName::identity:
      return ComplexMatrix::identity(4);
    case GateName::cnot_pol_ctrl_path:
      // V polarization flips the path qubit: RV <-> LV.
      return ComplexMatrix{{1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}};
    case GateName::cnot_path_ctrl_pol:
      // L path flips the polarization qubit: LH <-> LV.
      return ComplexMatrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
    case GateName::cz:
      return ComplexMatrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}};
    case GateName::ch_pol_ctrl_path:
      // V polarization applies Hadamard to the path qubit.
      return ComplexMatrix{{1, 0, 0, 0}, {0, r, 0, r}, {0, 0, 1, 0}, {0, r, 0, -r}};
    case GateName::ch_path_ctrl_pol:
      // L path applies Hadamard to the polarization qubit.
      return ComplexMatrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, r, r}, {0, 0, r, -r}};
    case GateName::swap_gate:
      return ComplexMatrix{{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
    case GateName::sqrt_swap:
      return ComplexMatrix{{1, 0, 0, 0}, {0, h, hc, 0}, {0, hc, h, 0}, {0, 0, 0, 1}};
    case GateName::iswap:
      return ComplexMatrix{{1, 0, 0, 0}, {0, 0, kI, 0}, {0, kI, 0, 0}, {0, 0, 0, 1}};
  }
  throw std::invalid_argument("gate_matrix: unknown gate");
}

const std::vector<std::pair<std::string, GateName>>& gate_library() {
  static const std::vector<std::pair<std::string, GateName>> gates = {
      {"identity", GateName::identity},
      {"cnot_pol_ctrl_path", GateName::cnot_pol_ctrl_path},
      {"cnot_path_ctrl_pol", GateName::cnot_path_ctrl_pol},
      {"cz", GateName::cz},
      {"ch_pol_ctrl_path", GateName::ch_pol_ctrl_path},
      {"ch_path_ctrl_pol", GateName::ch_path_ctrl_pol},
      {"swap", GateName::swap_gate},
      {"sqrt_swap", GateName::sqrt_swap},
      {"iswap", GateName::iswap},
  };
  return gates;
}

std::string gate_name(GateName g) {
  for (const auto& [name, gate] : gate_library()) {
    if (gate == g) return name;
  }
  throw std::invalid_argument("gate_name: unknown gate");
}

std::optional<GateName> gate_from_name(std::string_view name) {
  std::string lowered(name);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  for (const auto& [candidate, gate] : gate_library()) {
    if (candidate == lowered) return gate;
  }
  return std::nullopt;
}

namespace {

// Adam on a numerically differentiated objective; small fixed-dimension
// problems, so clarity over cleverness.
template <std::size_t N>
double adam_minimize(const std::function<double(const std::array<double, N>&)>& f,
                     std::array<double, N>& x, std::size_t steps, double lr_hi, double lr_lo) {
  constexpr double beta1 = 0.9;
  constexpr double beta2 = 0.999;
  constexpr double eps = 1e-8;
  constexpr double h = 1e-5;
  std::array<double, N> m{};
  std::array<double, N> v{};
  std::array<double, N> best_x = x;
  double best = f(x);
  double b1t = 1.0;
  double b2t = 1.0;
  for (std::size_t t = 0; t < steps; ++t) {
    const double lr =
        lr_lo + (lr_hi - lr_lo) * 0.5 * (1.0 + std::cos(kPi * static_cast<double>(t) /
                                                        static_cast<double>(steps)));
    b1t *= beta1;
    b2t *= beta2;
    for (std::size_t k = 0; k < N; ++k) {
      std::array<double, N> probe = x;
      probe[k] = x[k] + h;
      const double fp = f(probe);
      probe[k] = x[k] - h;
      const double fm = f(probe);
      const double g = (fp - fm) / (2.0 * h);
      m[k] = beta1 * m[k] + (1.0 - beta1) * g;
      v[k] = beta2 * v[k] + (1.0 - beta2) * g * g;
      const double mhat = m[k] / (1.0 - b1t);
      const double vhat = v[k] / (1.0 - b2t);
      x[k] -= lr * mhat / (std::sqrt(vhat) + eps);
    }
    const double fx = f(x);
    if (fx < best) {
      best = fx;
      best_x = x;
    }
    if (best < 1e-13) break;
  }
  x = best_x;
  return best;
}

template <std::size_t N>
struct Candidate {
  std::array<double, N> x;
  double value;
  std::size_t start_index;
};

// Shared multi-start schedule: a broad pass from every start, a medium pass
// on the three best, a fine pass on the winner.
template <std::size_t N>
Candidate<N> multi_start_descent(const std::function<double(const std::array<double, N>&)>& f,
                                 const std::array<double, N>& canonical_start,
                                 std::size_t starts, std::size_t iters, RngStream& rng) {
  if (starts == 0) throw std::invalid_argument("solver: needs at least one start");
  if (iters == 0) throw std::invalid_argument("solver: needs at least one iteration");
  std::vector<Candidate<N>> pool;
  pool.reserve(starts);
  for (std::size_t s = 0; s < starts; ++s) {
    std::array<double, N> x;
    if (s == 0) {
      x = canonical_start;
    } else {
      RngStream sub = rng.substream(s);
      for (auto& xi : x) xi = sub.uniform(0.0, 2.0 * kPi);
    }
    const double value = adam_minimize<N>(f, x, iters, 0.2, 0.01);
    pool.push_back(Candidate<N>{x, value, s});
    if (value < 1e-13) break;
  }
  std::stable_sort(pool.begin(), pool.end(), [](const auto& a, const auto& b) {
    return a.value < b.value;
  });
  const std::size_t survivors = std::min<std::size_t>(3, pool.size());
  for (std::size_t i = 0; i < survivors; ++i)
    pool[i].value = adam_minimize<N>(f, pool[i].x, iters, 0.02, 1e-4);
  std::stable_sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(survivors),
                   [](const auto& a, const auto& b) { return a.value < b.value; });
  pool[0].value = adam_minimize<N>(f, pool[0].x, iters, 2e-3, 1e-6);
  return pool[0];
}

}  // namespace

SolveResult solve_device_params(const ComplexMatrix& target, std::size_t starts,
                                std::size_t iters, RngStream& rng) {
  if (target.rows() != 4 || target.cols() != 4)
    throw std::invalid_argument("solve_device_params: target must be 4x4");
  require_unitary(target, kTol.unitarity, "solve_device_params");
  const ComplexMatrix target_dag = target.dagger();
  const std::function<double(const std::array<double, kDeviceParamCount>&)> objective =
      [&target_dag](const std::array<double, kDeviceParamCount>& x) {
        return 1.0 - std::abs((target_dag * device_unitary(device_from_array(x))).trace()) / 4.0;
      };
  const Candidate<kDeviceParamCount> best = multi_start_descent<kDeviceParamCount>(
      objective, device_to_array(identity_device()), starts, iters, rng);
  return SolveResult{device_from_array(best.x), best.value, best.start_index};
}

StageSolveResult solve_stage_params(const ComplexMatrix& target, std::size_t starts,
                                    std::size_t iters, RngStream& rng) {
  if (target.rows() != 2 || target.cols() != 2)
    throw std::invalid_argument("solve_stage_params: target must be 2x2");
  require_unitary(target, kTol.unitarity, "solve_stage_params");
  const ComplexMatrix target_dag = target.dagger();
  const std::function<double(const std::array<double, 4>&)> objective =
      [&target_dag](const std::array<double, 4>& x) {
        return 1.0 -
               std::abs((target_dag * stage_unitary(StageParams{x[0], x[1], x[2], x[3]})).trace()) /
                   2.0;
      };
  const StageParams id = identity_stage();
  const Candidate<4> best = multi_start_descent<4>(
      objective, std::array<double, 4>{id.qwp1, id.hwp, id.qwp2, id.phase}, starts, iters, rng);
  return StageSolveResult{StageParams{best.x[0], best.x[1], best.x[2], best.x[3]}, best.value};
}

}  // namespace qae

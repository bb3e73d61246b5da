#include "core/train.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "core/tolerances.hpp"

namespace qae {

namespace {

// Conjugate the physical path-major device unitary by SWAP so it acts on
// trash-major indices when the trash subsystem is the second physical qubit.
ComplexMatrix swap_conjugate(const ComplexMatrix& u) {
  static constexpr std::size_t perm[4] = {0, 2, 1, 3};
  ComplexMatrix out(4, 4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) out(r, c) = u(perm[r], perm[c]);
  return out;
}

void validate_task(const EncodingTask& task) {
  if (task.ensemble.dim_trash != 2 || task.ensemble.dim_latent != 2)
    throw std::invalid_argument("train: the device acts on two qubits (2x2 partition)");
  if (task.targets.size() != task.ensemble.states.size())
    throw std::invalid_argument("train: one trash target per ensemble state required");
  for (const auto& t : task.targets) {
    if (t.dim() != task.ensemble.dim_trash)
      throw std::invalid_argument("train: target is not on the trash subsystem");
  }
}

double weighted_overlap(const EncodingTask& task, const ComplexMatrix& u, long shots,
                        RngStream* rng) {
  double total = 0.0;
  for (std::size_t i = 0; i < task.ensemble.states.size(); ++i) {
    const double p = overlap_probability(u, task.ensemble.states[i], task.targets[i],
                                         task.ensemble.dim_trash, task.ensemble.dim_latent);
    total += task.ensemble.priors[i] * (rng ? sample_overlap(p, shots, *rng) : p);
  }
  return total;
}

}  // namespace

EncodingTask encoding_task(Ensemble e, const ReferenceState& ref, DeviceLayout layout) {
  std::vector<PureState> targets(e.states.size(), ref);
  EncodingTask task{std::move(e), std::move(targets), layout};
  validate_task(task);
  return task;
}

double overlap_probability(const ComplexMatrix& u, const PureState& state,
                           const ReferenceState& ref, std::size_t dim_trash,
                           std::size_t dim_latent) {
  const std::size_t dim = dim_trash * dim_latent;
  if (u.rows() != dim || u.cols() != dim || state.dim() != dim)
    throw std::invalid_argument("overlap_probability: dimension mismatch");
  if (ref.dim() != dim_trash)
    throw std::invalid_argument("overlap_probability: reference is not on the trash subsystem");
  const std::vector<complexd> phi = u * state.amplitudes();
  double total = 0.0;
  for (std::size_t b = 0; b < dim_latent; ++b) {
    complexd amp = 0.0;
    for (std::size_t a = 0; a < dim_trash; ++a)
      amp += std::conj(ref[a]) * phi[a * dim_latent + b];
    total += std::norm(amp);
  }
  return total;
}

double sample_overlap(double p, long shots, RngStream& rng) {
  if (p < -1e-9 || p > 1.0 + 1e-9)
    throw std::invalid_argument("sample_overlap: probability out of range");
  if (shots < 0) throw std::invalid_argument("sample_overlap: negative shot count");
  const double clamped = std::clamp(p, 0.0, 1.0);
  if (shots == 0) return clamped;
  return static_cast<double>(rng.binomial(shots, clamped)) / static_cast<double>(shots);
}

ComplexMatrix task_unitary(const EncodingTask& task, const DeviceParams& p) {
  const ComplexMatrix u = device_unitary(p);
  return task.layout == DeviceLayout::trash_first ? u : swap_conjugate(u);
}

double task_overlap(const EncodingTask& task, const DeviceParams& p) {
  validate_task(task);
  return weighted_overlap(task, task_unitary(task, p), 0, nullptr);
}

double task_cost(const EncodingTask& task, const DeviceParams& p) {
  return 1.0 - task_overlap(task, p);
}

SpsaStep spsa_iteration(DeviceParams& params, std::size_t k, double a, double b,
                        const EncodingTask& task, long shots, RngStream& rng) {
  if (k >= kDeviceParamCount) throw std::invalid_argument("spsa_iteration: coordinate out of range");
  if (a <= 0.0 || b <= 0.0) throw std::invalid_argument("spsa_iteration: a and b must be positive");
  std::array<double, kDeviceParamCount> x = device_to_array(params);
  const double saved = x[k];

  x[k] = saved + a;
  const double x_plus =
      weighted_overlap(task, task_unitary(task, device_from_array(x)), shots, shots > 0 ? &rng : nullptr);
  x[k] = saved - a;
  const double x_minus =
      weighted_overlap(task, task_unitary(task, device_from_array(x)), shots, shots > 0 ? &rng : nullptr);

  x[k] = saved + (b / a) * (x_plus - x_minus);
  params = device_from_array(x);
  return SpsaStep{x_plus, x_minus};
}

TrainTrace train(const TrainConfig& cfg, const EncodingTask& task) {
  validate_task(task);
  if (cfg.a <= 0.0 || cfg.b <= 0.0) throw std::invalid_argument("train: a and b must be positive");
  if (cfg.patience == 0) throw std::invalid_argument("train: patience must be positive");
  if (cfg.max_iterations == 0) throw std::invalid_argument("train: max_iterations must be positive");
  if (cfg.shots < 0) throw std::invalid_argument("train: negative shot count");

  RngStream rng(cfg.seed);
  DeviceParams params;
  if (cfg.init_params) {
    params = *cfg.init_params;
  } else {
    std::array<double, kDeviceParamCount> x;
    for (auto& xi : x) xi = rng.uniform(0.0, 2.0 * std::numbers::pi);
    params = device_from_array(x);
  }

  TrainTrace trace;
  trace.seed = cfg.seed;
  trace.records.reserve(cfg.max_iterations);

  double a = cfg.a;
  double b = cfg.b;
  std::size_t anneals = 0;
  double window_sum = 0.0;
  std::size_t window_count = 0;
  double prev_window_mean = std::numeric_limits<double>::infinity();

  for (std::size_t iter = 1; iter <= cfg.max_iterations; ++iter) {
    const std::size_t k = rng.uniform_index(kDeviceParamCount);
    const SpsaStep step = spsa_iteration(params, k, a, b, task, cfg.shots, rng);
    const double cost = 1.0 - 0.5 * (step.x_plus + step.x_minus);
    trace.records.push_back(IterationRecord{iter, cost, a, b, k});

    window_sum += cost;
    if (++window_count == cfg.patience) {
      const double mean = window_sum / static_cast<double>(cfg.patience);
      // A window that fails to beat the previous one by stall_tol means the
      // step sizes are too coarse for further progress: shrink them.
      if (mean >= prev_window_mean - cfg.stall_tol) {
        a /= 1.2;
        b /= 1.1;
        ++anneals;
        trace.anneal_iterations.push_back(iter);
        if (anneals >= cfg.max_outer) {
          prev_window_mean = mean;
          break;
        }
      }
      prev_window_mean = mean;
      window_sum = 0.0;
      window_count = 0;
    }
  }

  trace.final_params = params;
  trace.final_cost = task_cost(task, params);
  return trace;
}

TrainTrace train(const TrainConfig& cfg, const Ensemble& e, const ReferenceState& ref,
                 DeviceLayout layout) {
  return train(cfg, encoding_task(e, ref, layout));
}

}  // namespace qae

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "core/encoder.hpp"
#include "core/matrix.hpp"
#include "core/photonic.hpp"
#include "core/rng.hpp"
#include "core/states.hpp"

namespace qae {

struct TrainConfig {
  double a = 0.3;                 // perturbation half-width (radians)
  double b = 0.15;                // learning rate; the update scales by b/a
  std::size_t max_outer = 10;     // annealing rounds before stopping
  std::size_t patience = 10;      // window length for the stall check
  double stall_tol = 1e-4;        // improvement below this counts as a stall
  long shots = 0;                 // 0 = exact expectation values
  std::uint64_t seed = 0;
  std::optional<DeviceParams> init_params;  // absent: all angles uniform [0, 2pi)
  std::size_t max_iterations = 1000;
};

struct IterationRecord {
  std::size_t iteration;  // 1-based
  double cost;            // 1 - (x_plus + x_minus) / 2, as observed
  double a;
  double b;
  std::size_t k;          // coordinate perturbed this iteration
};

struct TrainTrace {
  std::vector<IterationRecord> records;
  DeviceParams final_params;
  double final_cost = 0.0;  // exact cost at final_params, even in shots mode
  std::vector<std::size_t> anneal_iterations;
  std::uint64_t seed = 0;
};

// How the physical path-major device sits against the trash-major state
// convention: trash_second means the trash subsystem is the second physical
// qubit (polarization), so the device unitary is conjugated by SWAP before
// cost evaluation.
enum class DeviceLayout { trash_first, trash_second };

// Per-state trash targets generalize the single-reference autoencoder to
// group discrimination (orthogonal targets per group).
struct EncodingTask {
  Ensemble ensemble;
  std::vector<PureState> targets;
  DeviceLayout layout = DeviceLayout::trash_first;
};

EncodingTask encoding_task(Ensemble e, const ReferenceState& ref,
                           DeviceLayout layout = DeviceLayout::trash_first);

// <ref| Tr_latent(u |state><state| u^dag) |ref>; u and state trash-major.
double overlap_probability(const ComplexMatrix& u, const PureState& state,
                           const ReferenceState& ref, std::size_t dim_trash,
                           std::size_t dim_latent);

// Binomial estimate of an overlap probability: hits / shots. shots = 0
// returns p unchanged (exact mode).
double sample_overlap(double p, long shots, RngStream& rng);

// Device unitary in trash-major order per the task's layout.
ComplexMatrix task_unitary(const EncodingTask& task, const DeviceParams& p);
// Exact prior-weighted mean overlap and its cost 1 - overlap.
double task_overlap(const EncodingTask& task, const DeviceParams& p);
double task_cost(const EncodingTask& task, const DeviceParams& p);

struct SpsaStep {
  double x_plus;
  double x_minus;
};

// One training step on coordinate k: evaluates the mean overlap at p_k + a
// and p_k - a (sampled when shots > 0) and applies p_k += (b/a)(x+ - x-).
SpsaStep spsa_iteration(DeviceParams& params, std::size_t k, double a, double b,
                        const EncodingTask& task, long shots, RngStream& rng);

TrainTrace train(const TrainConfig& cfg, const EncodingTask& task);
TrainTrace train(const TrainConfig& cfg, const Ensemble& e, const ReferenceState& ref,
                 DeviceLayout layout = DeviceLayout::trash_first);

}  // namespace qae

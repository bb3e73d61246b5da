#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "core/matrix.hpp"
#include "core/rng.hpp"

namespace qae {

enum class WavePlateKind { half, quarter };

// Jones matrices with fast axis at angle theta:
//   HWP(theta) = [[cos 2t, sin 2t], [sin 2t, -cos 2t]]            (det -1)
//   QWP(theta) = e^{-i pi/4} [[c^2 + i s^2, (1-i) s c],
//                             [(1-i) s c,   s^2 + i c^2]]          (det 1)
ComplexMatrix wave_plate(WavePlateKind kind, double theta);

// One polarization stage: e^{i phase} QWP(qwp2) HWP(hwp) QWP(qwp1).
// All-zero plate angles give QHQ = -i I, so the canonical identity stage
// carries phase pi/2.
struct StageParams {
  double qwp1 = 0.0;
  double hwp = 0.0;
  double qwp2 = 0.0;
  double phase = 0.0;
};

ComplexMatrix stage_unitary(const StageParams& p);
StageParams identity_stage();

// Full interferometer from four 2x2 stage unitaries, written as the closed
// 2x2-block form of  diag(V2, I) U_BS diag(VR, VL) U_mirror U_BS diag(V1, I)
// with U_BS = (1/sqrt2)[[I, iI], [iI, I]] and U_mirror = [[0, -iI], [-iI, 0]]:
//   U_RR =  1/2 V2 (VR + VL) V1        U_RL = -i/2 V2 (VR - VL)
//   U_LR =  i/2 (VR - VL) V1           U_LL =  1/2 (VR + VL)
// Basis is path-major (RH, RV, LH, LV). Inputs must be 2x2 unitaries.
ComplexMatrix synthesize(const ComplexMatrix& v1, const ComplexMatrix& v2,
                         const ComplexMatrix& vr, const ComplexMatrix& vl);

struct DeviceParams {
  StageParams v1;
  StageParams v2;
  StageParams vr;
  StageParams vl;
};

inline constexpr std::size_t kDeviceParamCount = 16;

DeviceParams identity_device();
ComplexMatrix device_unitary(const DeviceParams& d);

// Flat view in stage order v1, v2, vr, vl with fields qwp1, hwp, qwp2, phase.
std::array<double, kDeviceParamCount> device_to_array(const DeviceParams& d);
DeviceParams device_from_array(const std::array<double, kDeviceParamCount>& a);
const std::array<std::string, kDeviceParamCount>& device_param_names();

// Global-phase-insensitive distance 1 - |Tr(a^dag b)| / dim.
double gate_distance(const ComplexMatrix& a, const ComplexMatrix& b);

enum class GateName {
  identity,
  cnot_pol_ctrl_path,
  cnot_path_ctrl_pol,
  cz,
  ch_pol_ctrl_path,
  ch_path_ctrl_pol,
  swap_gate,
  sqrt_swap,
  iswap,
};

ComplexMatrix gate_matrix(GateName g);
std::string gate_name(GateName g);
std::optional<GateName> gate_from_name(std::string_view name);
const std::vector<std::pair<std::string, GateName>>& gate_library();

struct SolveResult {
  DeviceParams params;
  double residual = 0.0;      // gate_distance(target, device_unitary(params))
  std::size_t start_index = 0;
};

// Multi-start local descent on the 16 device parameters. Start 0 is the
// identity device; the rest draw all angles uniformly from [0, 2pi) out of
// per-start substreams of rng, so the argmin is deterministic for a fixed
// seed with ties going to the lowest start index.
SolveResult solve_device_params(const ComplexMatrix& target, std::size_t starts,
                                std::size_t iters, RngStream& rng);

struct StageSolveResult {
  StageParams params;
  double residual = 0.0;
};

// Same scheme for a single stage against a 2x2 target.
StageSolveResult solve_stage_params(const ComplexMatrix& target, std::size_t starts,
                                    std::size_t iters, RngStream& rng);

}  // namespace qae

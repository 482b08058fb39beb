// SPDX-License-Identifier: Apache-2.0
//
// Second-quantized model of the linear-optical CCZ gate. Qubit 1 is the
// signal photon's interferometer arm (|1> = lower arm), qubits 2 and 3 are
// the signal and idler polarizations (|1> = vertical). The central PPBS
// couples the lower signal arm with the idler beam; the upper arm crosses
// it at a displaced spot, so its reflected light is lost. Two auxiliary
// PPBSs attenuate the horizontal components of the signal and idler beams
// to balance the amplitudes. The gate operates in the coincidence basis:
// one photon on the signal side and one on the idler side.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "gatebound/channels.hpp"

namespace gatebound {
namespace optics {

struct OpticsParams {
  double t_h = 1.0;                      // central PPBS amplitude, horizontal
  double t_v = 1.0 / std::sqrt(3.0);     // central PPBS amplitude, vertical
  std::array<double, 2> balance = {1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0)};
  double visibility = 1.0;               // two-photon mode overlap
  double phi0 = 0.0;                     // residual lower-arm phase (rad)

  void validate() const;
  static OpticsParams ideal();
};

// Mode indices of the single-photon network.
enum Mode : int {
  kSigUpperH = 0,
  kSigUpperV = 1,
  kSigLowerH = 2,
  kSigLowerV = 3,
  kIdlerH = 4,
  kIdlerV = 5,
  kLossCentralH = 6,   // upper-arm reflection off the central PPBS
  kLossCentralV = 7,
  kLossBalanceUpper = 8,
  kLossBalanceLower = 9,
  kLossBalanceIdler = 10,
  kModeCount = 11
};

const char* mode_name(int mode);

// Single-photon unitary of the whole network (kModeCount x kModeCount).
ComplexMatrix network_unitary(const OpticsParams& p);

// Two-photon amplitudes over ordered (signal-born photon, idler-born
// photon) mode pairs for one logical computational input.
struct FockAmplitudeMap {
  ComplexVector network_column_signal;  // photon 1 output amplitudes
  ComplexVector network_column_idler;   // photon 2 output amplitudes

  cxd ordered_amplitude(int mode_photon1, int mode_photon2) const {
    return network_column_signal(mode_photon1) * network_column_idler(mode_photon2);
  }
};
FockAmplitudeMap propagate_pair(const OpticsParams& p, int basis_input);

// Conditional coincidence-basis amplitude map A = A_dir + v * A_exch; the
// two-vertical-photon entry carries t_V^2 - v r_V^2.
ComplexMatrix effective_operator(const OpticsParams& p);

// Direct and photon-exchange parts separately (both 8x8).
ComplexMatrix direct_operator(const OpticsParams& p);
ComplexMatrix exchange_operator(const OpticsParams& p);

// Choi matrix of the coincidence map, with partial distinguishability
// handled as a v-weighted blend of the interfering and classical channels,
// then mixed with its qubit-1 (arm) dephased version.
channels::ChoiMatrix choi_from_optics(const OpticsParams& p,
                                      double dephasing_between_arms = 0.0);

// Classification of all two-photon output patterns for one computational
// input, with probability masses. Masses over all patterns sum to 1.
struct OutputPattern {
  int mode_a = 0;
  int mode_b = 0;   // mode_a <= mode_b; equal for bunched events
  double mass = 0.0;
  bool success = false;
};
struct CoincidenceEvents {
  int basis_input = 0;
  std::vector<OutputPattern> patterns;
  double success_mass = 0.0;
  double failure_mass = 0.0;
};
std::vector<CoincidenceEvents> coincidence_events(const OpticsParams& p);

// {t_H, t_V, balance: [b1, b2], visibility, phi0}; the string "ideal"
// expands to the design-point parameters.
OpticsParams params_from_json(const std::string& text);
std::string params_to_json(const OpticsParams& p, int indent = -1);

} // namespace optics
} // namespace gatebound

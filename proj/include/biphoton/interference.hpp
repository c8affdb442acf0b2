#pragma once

#include <string_view>

#include "biphoton/amplitude.hpp"
#include "biphoton/kernel_amplitude.hpp"

namespace biphoton {

/// Phases of the lossless 50/50 splitter. Only the aggregate phi = tau + rho
/// enters the output amplitudes, and no output probability depends on either.
struct BsPhases {
  double phi_tau = 0.0;
  double phi_rho = 0.0;

  double phi() const { return phi_tau + phi_rho; }
};

/// Output of the beamsplitter for a two-photon input. The two bunched
/// channels carry both photons in one port; coincidence_amplitude is the
/// unnormalized (Phi - sigma Phi)/2 component with one photon in each port.
struct BsOutput {
  double p_both_port1;
  double p_both_port2;
  double p_coincidence;
  TwoPhotonAmplitude coincidence_amplitude;
};

/// P_c = (1 - J)/2 with J = sigma_overlap(amp).
double coincidence_probability(const TwoPhotonAmplitude& amp);
double coincidence_probability(const SeparableKernelAmplitude& amp);

/// Transforms every input creation operator through the splitter and
/// evaluates the three detection channels separately: the bunched channels
/// by their bosonic norms ||chi||^2 + <chi, swap chi>, the coincidence channel
/// by ||(Phi - sigma Phi)/2||^2.
BsOutput beamsplitter_output(const TwoPhotonAmplitude& amp, BsPhases phases = {});

enum class WitnessVerdict { kEntangled, kInconclusive };

std::string_view to_string(WitnessVerdict verdict);

inline constexpr double kDefaultWitnessMargin = 1e-6;

/// One-sided witness: entangled iff P_c > 1/2 + margin. Product states never
/// exceed 1/2, so "inconclusive" never certifies separability. Throws
/// std::invalid_argument for a negative margin.
WitnessVerdict entanglement_witness(const TwoPhotonAmplitude& amp,
                                    double margin = kDefaultWitnessMargin);
WitnessVerdict entanglement_witness(const SeparableKernelAmplitude& amp,
                                    double margin = kDefaultWitnessMargin);

}  // namespace biphoton

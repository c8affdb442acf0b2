#include "biphoton/interference.hpp"

#include <cmath>
#include <stdexcept>

namespace biphoton {
namespace {

WitnessVerdict verdict_for(double pc, double margin) {
  if (margin < 0.0) throw std::invalid_argument("witness margin must be non-negative");
  return pc > 0.5 + margin ? WitnessVerdict::kEntangled : WitnessVerdict::kInconclusive;
}

// <0| a a a^dag a^dag |0> for two photons in the same port with amplitude chi.
double bunched_probability(const TwoPhotonAmplitude& chi) {
  return (inner_product(chi, chi) + inner_product(chi, swap_photons(chi))).real();
}

}  // namespace

double coincidence_probability(const TwoPhotonAmplitude& amp) {
  return 0.5 * (1.0 - sigma_overlap(amp));
}

double coincidence_probability(const SeparableKernelAmplitude& amp) {
  return 0.5 * (1.0 - sigma_overlap(amp));
}

BsOutput beamsplitter_output(const TwoPhotonAmplitude& amp, BsPhases phases) {
  require_normalized(amp.norm_squared(), "beamsplitter_output");
  // a1^dag[f] -> (e^{i tau} a1^dag[f] - e^{-i rho} a2^dag[Pi f]) / sqrt2
  // a2^dag[g] -> (e^{i rho} a1^dag[Pi g] + e^{-i tau} a2^dag[g]) / sqrt2
  const Complex port1_phase = 0.5 * std::polar(1.0, phases.phi());
  const Complex port2_phase = -0.5 * std::polar(1.0, -phases.phi());
  std::vector<ProductTerm> port1;
  std::vector<ProductTerm> port2;
  for (const auto& t : amp.terms()) {
    port1.push_back({t.coefficient * port1_phase, t.photon1, t.photon2.reflected_y()});
    port2.push_back({t.coefficient * port2_phase, t.photon1.reflected_y(), t.photon2});
  }
  TwoPhotonAmplitude coincidence = (amp - apply_sigma(amp)).scaled(0.5);
  const double pc = coincidence.norm_squared();
  return {bunched_probability(TwoPhotonAmplitude(std::move(port1))),
          bunched_probability(TwoPhotonAmplitude(std::move(port2))), pc, std::move(coincidence)};
}

std::string_view to_string(WitnessVerdict verdict) {
  return verdict == WitnessVerdict::kEntangled ? "entangled" : "inconclusive";
}

WitnessVerdict entanglement_witness(const TwoPhotonAmplitude& amp, double margin) {
  if (margin < 0.0) throw std::invalid_argument("witness margin must be non-negative");
  return verdict_for(coincidence_probability(amp), margin);
}

WitnessVerdict entanglement_witness(const SeparableKernelAmplitude& amp, double margin) {
  if (margin < 0.0) throw std::invalid_argument("witness margin must be non-negative");
  return verdict_for(coincidence_probability(amp), margin);
}

}  // namespace biphoton

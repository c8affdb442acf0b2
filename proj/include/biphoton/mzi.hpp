#pragma once

#include <string>
#include <variant>
#include <vector>

#include "biphoton/amplitude.hpp"
#include "biphoton/kernel_amplitude.hpp"

namespace biphoton {

/// Spiral phase plate imprinting exp(i zeta theta); zeta need not be an integer.
struct SppParams {
  double zeta = 1.0;
};

/// Individual phases of the interferometer: the adjustable shifter phi and
/// the transmission/reflection phases of its two splitters.
struct RawMziPhases {
  double phi = 0.0;
  double phi1_tau = 0.0;
  double phi1_rho = 0.0;
  double phi2_tau = 0.0;
  double phi2_rho = 0.0;
};

struct MziPhases {
  double alpha_plus = 0.0;
  double alpha_minus = 0.0;

  /// alpha_+- = (phi + phi1_tau + phi2_tau +- (phi1_rho - phi2_rho)) / 2
  static MziPhases from_raw(const RawMziPhases& raw);
};

/// Propagation distances from the source, the photon wavenumber k (the pump
/// has 2k), and the aperture radius in units of the spot size w(z).
struct MziGeometry {
  double z1 = 1.0;
  double z2 = 1.0;
  double k = 1.0;
  double aperture_factor = 40.0;
};

/// Empty when the geometry is usable as is; otherwise human-readable notes
/// (e.g. an aperture too small for the delta-correlation picture). Throws
/// std::invalid_argument for unusable values.
std::vector<std::string> validate_geometry(const MziGeometry& geom);

struct MziResult {
  double conditional_pc;  ///< P_c given that both photons reach the last splitter
  double throughput;      ///< eta, survival probability of photon 1 through the MZI
  double zeta;
  double alpha_plus;
};

/// Multiplies photon-1 factors by exp[i k z1 - i |q|^2 z1/(2k)] and photon-2
/// factors by the same with z2. Momentum representation only.
TwoPhotonAmplitude fresnel_phase(const TwoPhotonAmplitude& amp, double z1, double z2, double k);

/// Pointwise exp(i zeta theta), theta = atan2(v, u) in [0, 2pi).
TransverseMode spp_phase(const TransverseMode& mode, double zeta);

/// sin(zeta (theta - pi) + alpha_+) sampled on a grid: the interferometer's
/// net action on photon 1 once the discarded output is dropped.
ModeArray mzi_envelope(const Grid& grid, SppParams spp, MziPhases phases);

template <class Amplitude>
struct EffectiveAmplitude {
  Amplitude amplitude;  ///< renormalized
  double throughput;    ///< squared norm before renormalization
};

inline constexpr double kMinThroughput = 1e-12;

/// Amplitude arriving at the last splitter, up to the unobservable global
/// prefactor i exp(i(zeta pi + alpha_-)). Rank is unchanged. Expects a
/// normalized position-space amplitude; throws DegenerateAmplitudeError when
/// the throughput falls below kMinThroughput.
EffectiveAmplitude<TwoPhotonAmplitude> mzi_effective_amplitude(const TwoPhotonAmplitude& amp,
                                                               SppParams spp, MziPhases phases);
EffectiveAmplitude<SeparableKernelAmplitude> mzi_effective_amplitude(
    const SeparableKernelAmplitude& amp, SppParams spp, MziPhases phases);

/// Default source: the thin-crystal Gaussian biphoton observed at z = z1 = z2,
/// on an n x n lattice spanning the circular aperture.
struct ThinCrystalSource {
  double w0 = 1.0;
  int grid_n = 256;
  bool keep_phase = true;
};

/// Either the thin-crystal source or an arbitrary amplitude. A momentum-space
/// amplitude is taken to be defined at the source and is propagated with
/// fresnel_phase before transforming to position space; a position-space
/// amplitude is used as given.
using MziSource = std::variant<ThinCrystalSource, TwoPhotonAmplitude>;

/// Position-space amplitude at the plane of the phase plates.
using PreparedSource = std::variant<SeparableKernelAmplitude, TwoPhotonAmplitude>;

PreparedSource prepare_source(const MziSource& source, const MziGeometry& geom);

MziResult mzi_coincidence(const PreparedSource& source, SppParams spp, MziPhases phases);
MziResult mzi_coincidence(const MziSource& source, SppParams spp, MziPhases phases,
                          const MziGeometry& geom);

inline constexpr int kOracleNodes = 8192;

/// Infinite-aperture limit of mzi_coincidence. In that limit the biphoton
/// collapses onto x2 = -x1, the exchange-reflected partner of azimuth theta
/// is (pi - theta) mod 2pi, and
///
///   P_c = (1 - I)/2,  I = int S(theta) S((pi - theta) mod 2pi) / int S(theta)^2
///
/// with S(theta) = sin(zeta (theta - pi) + alpha_+), by midpoint quadrature.
/// For integer zeta this equals (1 + (-1)^zeta cos 2 alpha_+)/2. Throws
/// DegenerateAmplitudeError when the denominator is below 1e-12.
double delta_limit_oracle(SppParams spp, MziPhases phases, int nodes = kOracleNodes);

enum class ScanParameter { kZeta, kAlphaPlus };

std::string_view to_string(ScanParameter p);

struct ScanRow {
  double parameter;
  double conditional_pc;  ///< NaN on degenerate rows
  double oracle_pc;       ///< NaN on degenerate rows
  double throughput;
  bool degenerate;
};

struct ScanRequest {
  ScanParameter parameter = ScanParameter::kZeta;
  double lo = 0.25;
  double hi = 4.0;
  int steps = 16;
  SppParams spp;       ///< zeta when scanning alpha_+
  MziPhases phases;    ///< alpha_+ when scanning zeta
  MziGeometry geometry;
  MziSource source = ThinCrystalSource{};
  /// 0 picks BIPHOTON_THREADS or the hardware concurrency.
  int threads = 0;
};

struct ScanResult {
  ScanRequest request;
  int grid_points;
  std::vector<ScanRow> rows;  ///< ascending parameter, one per step
};

/// Evenly spaced scan over [lo, hi], endpoints included. Rows are evaluated
/// concurrently and returned in parameter order; degenerate settings are
/// flagged rather than aborting. Throws std::invalid_argument for steps < 2
/// or lo >= hi.
ScanResult scan(const ScanRequest& request);

}  // namespace biphoton

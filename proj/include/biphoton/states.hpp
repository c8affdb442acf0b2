#pragma once

#include <string_view>

#include "biphoton/amplitude.hpp"
#include "biphoton/dense.hpp"
#include "biphoton/kernel_amplitude.hpp"

namespace biphoton {

/// Laguerre-Gauss p = 0 ring R(q) e^{i l theta}; w0 is the position-space waist.
struct OamRingParams {
  int l = 1;
  double w0 = 1.0;
};

/// Hermite-Gaussian pump HG_mn. m indexes the x direction and n the y
/// direction, so the y-parity is (-1)^n. In position space the field is
/// H_m(sqrt2 x/w0) H_n(sqrt2 y/w0) exp(-(x^2+y^2)/w0^2); evaluate() returns
/// its exact momentum-space Fourier pair.
struct HermiteGaussPump {
  int m = 0;
  int n = 0;
  double w0 = 1.0;

  Complex evaluate(double qx, double qy) const;
};

struct SpdcParams {
  double crystal_length = 1.0;   ///< L
  double pump_wavenumber = 2.0;  ///< k_p
  HermiteGaussPump pump;
};

/// Gaussian pump beam after propagating a distance z.
struct GaussianBeamParams {
  double w0 = 1.0;
  double z = 1.0;
  double pump_wavenumber = 2.0;

  double rayleigh_length() const;  ///< z0 = k_p w0^2 / 2
  double spot_size() const;        ///< w(z) = w0 sqrt(1 + z^2/z0^2)
  double curvature_radius() const; ///< R(z) = (z^2 + z0^2)/z, infinite at z = 0
};

/// v(q) = (w0/sqrt(2 pi)) exp(-|q|^2 w0^2/4) on a momentum grid, renormalized
/// on the lattice. Throws std::invalid_argument when the spacing exceeds
/// 1/w0 (fewer than four samples across the 1/e^2 intensity width).
TransverseMode gaussian_g00(double w0, const Grid& grid);

TransverseMode hermite_gaussian(int m, int n, double w0, const Grid& grid,
                                Representation rep = Representation::kMomentum);

/// R(q) e^{i l theta} with R(q) ∝ q^|l| exp(-q^2 w0^2/4) in momentum space, or
/// r^|l| exp(-r^2/w0^2) in position space; theta in [0, 2pi).
TransverseMode oam_ring(int l, double w0, const Grid& grid,
                        Representation rep = Representation::kMomentum);

enum class BellKind { kPsiPlus, kPsiMinus, kPhiPlus, kPhiMinus };

std::string_view to_string(BellKind kind);

/// |Psi+-> = (|l,l> +- |-l,-l>)/sqrt2 and |Phi+-> = (|l,-l> +- |-l,l>)/sqrt2.
/// Throws std::invalid_argument for l = 0.
TwoPhotonAmplitude bell_state(BellKind kind, int l, double w0, const Grid& grid);

/// Normalized f (x) g.
TwoPhotonAmplitude product_state(const TransverseMode& f, const TransverseMode& g);

struct SpdcOptions {
  double max_truncation_error = 1e-6;
  /// Truncation target; the kept rank is the smallest meeting it.
  double target_error = 1e-8;
  int max_rank = 4096;
};

/// Phi(q1, q2) ∝ v(q1 + q2) sinc(L |q1 - q2|^2 / (4 k_p)) on a momentum grid,
/// factorized by SVD of its (photon 1) x (photon 2) unfolding and
/// renormalized on the lattice. The pump is evaluated in closed form at
/// q1 + q2. Throws TruncationError when the error bound cannot be met.
CompressedAmplitude spdc_state(const SpdcParams& params, const Grid& grid,
                               SpdcOptions options = {});

/// Unfactorized oracle form of spdc_state (at most DenseAmplitude::kMaxPoints points).
DenseAmplitude spdc_state_dense(const SpdcParams& params, const Grid& grid);

enum class ApertureShape {
  kCircular,  ///< hard stop of radius grid.half_width()
  kSquare,    ///< the full lattice
};

struct ThinCrystalOptions {
  bool keep_phase = true;
  ApertureShape aperture = ApertureShape::kCircular;
};

/// Thin-crystal biphoton pumped by a Gaussian, in position space at equal
/// distances z from the crystal:
///
///   Psi ∝ exp{-|x1+x2|^2/(4 w^2) + i (k_p/4)[z0^2 |x1-x2|^2/(2 z^2 R) + (|x1|^2+|x2|^2)/R]}
///
/// behind an aperture on both photons. At z = 0 the phase is omitted. The
/// exponent splits into x and y parts, giving a SeparableKernelAmplitude.
SeparableKernelAmplitude thin_crystal_kernel(const GaussianBeamParams& params, const Grid& grid,
                                             ThinCrystalOptions options = {});

/// Product-sum form of thin_crystal_kernel, normalized.
CompressedAmplitude thin_crystal_gaussian(const GaussianBeamParams& params, const Grid& grid,
                                          ThinCrystalOptions options = {},
                                          KernelExpansionOptions expansion = {});

/// sin(x)/x with sinc(0) = 1.
double sinc(double x);

}  // namespace biphoton

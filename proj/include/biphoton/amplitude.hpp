#pragma once

#include <vector>

#include "biphoton/mode.hpp"

namespace biphoton {

/// One term c * f (x) g of a product-sum amplitude; photon1 is the photon in
/// input beam a1, photon2 the photon in beam a2.
struct ProductTerm {
  Complex coefficient;
  TransverseMode photon1;
  TransverseMode photon2;
};

/// Two-photon amplitude Phi(1, 2) = sum_r c_r f_r(1) g_r(2).
///
/// All factor modes share one grid and representation. The value is
/// immutable; every operation returns a new amplitude. Global phase is not
/// canonicalized.
class TwoPhotonAmplitude {
 public:
  explicit TwoPhotonAmplitude(std::vector<ProductTerm> terms);

  const std::vector<ProductTerm>& terms() const { return terms_; }
  int rank() const { return static_cast<int>(terms_.size()); }
  const Grid& grid() const { return terms_.front().photon1.grid(); }
  Representation representation() const { return terms_.front().photon1.representation(); }

  double norm_squared() const;
  TwoPhotonAmplitude scaled(Complex factor) const;

  /// Stacked factor samples, one column per term (length n^2 each).
  Eigen::MatrixXcd photon1_matrix() const;
  Eigen::MatrixXcd photon2_matrix() const;
  Eigen::VectorXcd coefficients() const;

 private:
  std::vector<ProductTerm> terms_;
};

/// Term-concatenating sum and difference.
TwoPhotonAmplitude operator+(const TwoPhotonAmplitude& a, const TwoPhotonAmplitude& b);
TwoPhotonAmplitude operator-(const TwoPhotonAmplitude& a, const TwoPhotonAmplitude& b);

/// <a, b> over both photons.
Complex inner_product(const TwoPhotonAmplitude& a, const TwoPhotonAmplitude& b);

/// Throws std::invalid_argument for a zero-norm amplitude.
TwoPhotonAmplitude normalize(const TwoPhotonAmplitude& amp);

/// Exchange-reflection involution:
/// (sigma Phi)(qx1, qy1, qx2, qy2) = Phi(qx2, -qy2, qx1, -qy1),
/// i.e. each term (c, f, g) becomes (c, Pi_y g, Pi_y f).
TwoPhotonAmplitude apply_sigma(const TwoPhotonAmplitude& amp);

/// Photon exchange without reflection: (c, f, g) -> (c, g, f).
TwoPhotonAmplitude swap_photons(const TwoPhotonAmplitude& amp);

/// Multiplies every photon-1 factor pointwise by `multiplier`.
TwoPhotonAmplitude multiply_photon1(const TwoPhotonAmplitude& amp, const ModeArray& multiplier);

/// Exchange overlap J = <sigma Phi, Phi>, the integral appearing in the
/// coincidence probability. Real for every amplitude because sigma is a
/// self-adjoint involution; an imaginary part above 1e-10 is treated as an
/// internal error. Requires |norm - 1| <= 1e-6.
double sigma_overlap(const TwoPhotonAmplitude& amp);

struct SymmetryWeights {
  double symmetric;      ///< ||(Phi + sigma Phi)/2||^2 = (1 + J)/2
  double antisymmetric;  ///< ||(Phi - sigma Phi)/2||^2 = (1 - J)/2
};

SymmetryWeights symmetry_decompose(const TwoPhotonAmplitude& amp);

/// Factor-wise forward Fourier transform of a momentum-space amplitude.
TwoPhotonAmplitude position_representation(const TwoPhotonAmplitude& amp);

struct RecompressionOptions {
  /// Terms whose singular value falls below this fraction of the largest are dropped.
  double relative_cutoff = 1e-12;
};

/// Re-orthogonalizes both factor sets (QR), takes the SVD of the small core
/// and drops negligible terms. The result has orthonormal factors.
TwoPhotonAmplitude recompress(const TwoPhotonAmplitude& amp, RecompressionOptions options = {});

/// A low-rank amplitude together with the relative norm error of its truncation.
struct CompressedAmplitude {
  TwoPhotonAmplitude amplitude;
  double truncation_error;
};

/// Tolerance on the norm used by operations that presume a normalized state.
inline constexpr double kNormalizationTolerance = 1e-6;

void require_normalized(double norm_squared, const char* operation);

}  // namespace biphoton

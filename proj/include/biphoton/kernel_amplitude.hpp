#pragma once

#include "biphoton/amplitude.hpp"
#include "biphoton/dense.hpp"

namespace biphoton {

/// Two-photon amplitude with an axis-separable kernel and pointwise photon weights:
///
///   Phi(x1, y1, x2, y2) = w1(x1, y1) * w2(x2, y2) * kx(x1, x2) * ky(y1, y2).
///
/// Gaussian-beam biphotons such as the thin-crystal state factor this way,
/// with the aperture and any phase plates folded into w1 and w2. Its Schmidt
/// rank grows with (aperture / spot size)^2, which makes a generic product-sum
/// expensive, while every overlap here costs O(n^3) through matrix products.
/// Expanding kx and ky by SVD yields an equivalent product-sum
/// (to_product_sum). Kernel indices: kx(ix1, ix2), ky(iy1, iy2).
class SeparableKernelAmplitude {
 public:
  SeparableKernelAmplitude(Grid grid, Representation rep, ModeArray weight1, ModeArray weight2,
                           Eigen::MatrixXcd kernel_x, Eigen::MatrixXcd kernel_y);

  const Grid& grid() const { return grid_; }
  Representation representation() const { return rep_; }
  const ModeArray& weight1() const { return weight1_; }
  const ModeArray& weight2() const { return weight2_; }
  const Eigen::MatrixXcd& kernel_x() const { return kernel_x_; }
  const Eigen::MatrixXcd& kernel_y() const { return kernel_y_; }

  Complex operator()(int ix1, int iy1, int ix2, int iy2) const {
    return weight1_(ix1, iy1) * weight2_(ix2, iy2) * kernel_x_(ix1, ix2) * kernel_y_(iy1, iy2);
  }

  double norm_squared() const;
  SeparableKernelAmplitude scaled(Complex factor) const;
  SeparableKernelAmplitude multiplied_photon1(const ModeArray& multiplier) const;

 private:
  Grid grid_;
  Representation rep_;
  ModeArray weight1_;
  ModeArray weight2_;
  Eigen::MatrixXcd kernel_x_;
  Eigen::MatrixXcd kernel_y_;
};

Complex inner_product(const SeparableKernelAmplitude& a, const SeparableKernelAmplitude& b);
SeparableKernelAmplitude normalize(const SeparableKernelAmplitude& amp);
SeparableKernelAmplitude apply_sigma(const SeparableKernelAmplitude& amp);
double sigma_overlap(const SeparableKernelAmplitude& amp);
SymmetryWeights symmetry_decompose(const SeparableKernelAmplitude& amp);

struct KernelExpansionOptions {
  /// Relative norm error the expansion may leave behind.
  double target_error = 1e-9;
  int max_rank = 20000;
};

/// Product-sum expansion through the SVDs of kx and ky. The reported
/// truncation_error is an upper bound on ||Phi - Phi_r|| / ||Phi||. Throws
/// TruncationError when max_rank terms cannot reach target_error.
CompressedAmplitude to_product_sum(const SeparableKernelAmplitude& amp,
                                   KernelExpansionOptions options = {});

DenseAmplitude to_dense(const SeparableKernelAmplitude& amp);

}  // namespace biphoton

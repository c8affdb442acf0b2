#pragma once

#include <functional>
#include <vector>

#include "biphoton/amplitude.hpp"

namespace biphoton {

/// Brute-force 4D sampling of a two-photon amplitude, kept as a correctness
/// oracle for the product-sum algebra. Index order (ix1, iy1, ix2, iy2).
class DenseAmplitude {
 public:
  static constexpr int kMaxPoints = 32;

  DenseAmplitude(Grid grid, Representation rep, std::vector<Complex> values);

  /// Samples f(u1, v1, u2, v2) on every lattice point.
  static DenseAmplitude sample(const Grid& grid, Representation rep,
                               const std::function<Complex(double, double, double, double)>& f);

  const Grid& grid() const { return grid_; }
  Representation representation() const { return rep_; }
  const std::vector<Complex>& values() const { return values_; }

  Complex operator()(int ix1, int iy1, int ix2, int iy2) const {
    return values_[index(ix1, iy1, ix2, iy2)];
  }

  double norm_squared() const;
  DenseAmplitude normalized() const;

  /// Entry-wise (sigma Phi)[i1, j1, i2, j2] = Phi[i2, n-1-j2, i1, n-1-j1].
  DenseAmplitude sigma() const;

  /// Direct 4D sum of Phi(1,2) conj(Phi(sigma(1,2))); normalization is the caller's job.
  Complex sigma_overlap() const;

  /// Unfolding as an (n^2 x n^2) matrix over (photon1 point, photon2 point),
  /// with point index ix + n * iy.
  Eigen::MatrixXcd unfolded() const;

 private:
  std::size_t index(int ix1, int iy1, int ix2, int iy2) const {
    const std::size_t n = static_cast<std::size_t>(grid_.size());
    return ((static_cast<std::size_t>(ix1) * n + static_cast<std::size_t>(iy1)) * n +
            static_cast<std::size_t>(ix2)) * n + static_cast<std::size_t>(iy2);
  }

  Grid grid_;
  Representation rep_;
  std::vector<Complex> values_;
};

Complex inner_product(const DenseAmplitude& a, const DenseAmplitude& b);

/// values[i1,j1,i2,j2] = sum_r c_r f_r[i1,j1] g_r[i2,j2]. Throws
/// std::invalid_argument above DenseAmplitude::kMaxPoints points per axis.
DenseAmplitude to_dense(const TwoPhotonAmplitude& amp);

}  // namespace biphoton

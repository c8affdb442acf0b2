#pragma once

#include <span>
#include <vector>

namespace biphoton {

/// Square lattice of n x n cell centres covering [-half_width, half_width]^2.
///
/// Samples sit at half-cell offsets, x_i = -half_width + (i + 1/2) * spacing,
/// so the origin is never sampled and x_{n-1-i} = -x_i holds exactly. Every
/// reflection y -> -y therefore maps samples onto samples by index reversal.
/// Integrals use the midpoint rule with weight spacing^2 per cell.
class Grid {
 public:
  Grid(int n, double half_width);

  int size() const { return n_; }
  double half_width() const { return half_width_; }
  double spacing() const { return 2.0 * half_width_ / n_; }
  double cell_weight() const { return spacing() * spacing(); }

  std::span<const double> axis() const { return axis_; }
  double sample(int i) const { return axis_[static_cast<std::size_t>(i)]; }
  int mirror_index(int i) const { return n_ - 1 - i; }

  /// Reciprocal lattice of the discrete Fourier transform: spacing pi/half_width
  /// and the same number of points.
  Grid conjugate() const;

  bool operator==(const Grid& other) const {
    return n_ == other.n_ && half_width_ == other.half_width_;
  }

 private:
  int n_;
  double half_width_;
  std::vector<double> axis_;
};

inline constexpr int kMinGridPoints = 8;

/// Validating factory. Requires n even and >= 8, half_width > 0.
Grid make_grid(int n, double half_width);

}  // namespace biphoton

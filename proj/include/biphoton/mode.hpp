#pragma once

#include <complex>
#include <functional>
#include <string_view>

#include <Eigen/Dense>

#include "biphoton/grid.hpp"

namespace biphoton {

using Complex = std::complex<double>;
/// Sample array indexed (ix, iy).
using ModeArray = Eigen::MatrixXcd;

enum class Representation { kMomentum, kPosition };

std::string_view to_string(Representation rep);

/// Single-photon transverse amplitude sampled on a Grid.
///
/// The representation tag distinguishes wavevector space (q_x, q_y) from
/// transverse position space (x, y). Arithmetic between modes with different
/// tags or grids throws std::invalid_argument.
class TransverseMode {
 public:
  TransverseMode(Grid grid, Representation rep, ModeArray values);

  /// Samples f(u, v) at every lattice point, where (u, v) are the coordinates
  /// in the chosen representation.
  static TransverseMode sample(const Grid& grid, Representation rep,
                               const std::function<Complex(double, double)>& f);

  const Grid& grid() const { return grid_; }
  Representation representation() const { return rep_; }
  const ModeArray& values() const { return values_; }
  Complex operator()(int ix, int iy) const { return values_(ix, iy); }

  double norm() const;
  TransverseMode normalized() const;
  TransverseMode scaled(Complex factor) const;

  /// Pointwise product with a multiplier sampled on the same lattice.
  TransverseMode multiplied(const ModeArray& multiplier) const;

  /// y-reflection: (Pi_y f)(u, v) = f(u, -v).
  TransverseMode reflected_y() const;

 private:
  Grid grid_;
  Representation rep_;
  ModeArray values_;
};

/// Throws std::invalid_argument unless a and b share grid and representation.
void require_compatible(const TransverseMode& a, const TransverseMode& b);

/// Midpoint-rule inner product sum(conj(a) * b) * spacing^2.
Complex inner_product_2d(const TransverseMode& a, const TransverseMode& b);

/// Azimuth atan2(v, u) folded into [0, 2 pi). The origin maps to 0.
double azimuth(double u, double v);

}  // namespace biphoton

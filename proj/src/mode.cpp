#include "biphoton/mode.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace biphoton {

std::string_view to_string(Representation rep) {
  return rep == Representation::kMomentum ? "momentum" : "position";
}

TransverseMode::TransverseMode(Grid grid, Representation rep, ModeArray values)
    : grid_(std::move(grid)), rep_(rep), values_(std::move(values)) {
  if (values_.rows() != grid_.size() || values_.cols() != grid_.size()) {
    throw std::invalid_argument("mode samples do not match the grid size");
  }
}

TransverseMode TransverseMode::sample(const Grid& grid, Representation rep,
                                      const std::function<Complex(double, double)>& f) {
  const int n = grid.size();
  ModeArray values(n, n);
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) values(ix, iy) = f(grid.sample(ix), grid.sample(iy));
  }
  return TransverseMode(grid, rep, std::move(values));
}

double TransverseMode::norm() const {
  return std::sqrt(values_.squaredNorm() * grid_.cell_weight());
}

TransverseMode TransverseMode::normalized() const {
  const double n = norm();
  if (!(n > 0.0)) throw std::invalid_argument("cannot normalize a zero mode");
  return scaled(1.0 / n);
}

TransverseMode TransverseMode::scaled(Complex factor) const {
  return TransverseMode(grid_, rep_, values_ * factor);
}

TransverseMode TransverseMode::multiplied(const ModeArray& multiplier) const {
  if (multiplier.rows() != values_.rows() || multiplier.cols() != values_.cols()) {
    throw std::invalid_argument("multiplier does not match the grid size");
  }
  return TransverseMode(grid_, rep_, values_.cwiseProduct(multiplier));
}

TransverseMode TransverseMode::reflected_y() const {
  return TransverseMode(grid_, rep_, values_.rowwise().reverse());
}

void require_compatible(const TransverseMode& a, const TransverseMode& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("modes live on different grids");
  if (a.representation() != b.representation()) {
    throw std::invalid_argument("modes mix momentum and position representations");
  }
}

Complex inner_product_2d(const TransverseMode& a, const TransverseMode& b) {
  require_compatible(a, b);
  // cwiseProduct + sum keeps conjugate symmetry exact in floating point.
  return a.values().conjugate().cwiseProduct(b.values()).sum() * a.grid().cell_weight();
}

double azimuth(double u, double v) {
  if (u == 0.0 && v == 0.0) return 0.0;
  double theta = std::atan2(v, u);
  if (theta < 0.0) theta += 2.0 * std::numbers::pi;
  return theta;
}

}  // namespace biphoton

#include "biphoton/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace biphoton {

Grid::Grid(int n, double half_width) : n_(n), half_width_(half_width) {
  if (n < kMinGridPoints || n % 2 != 0) {
    throw std::invalid_argument("grid size must be even and at least " +
                                std::to_string(kMinGridPoints) + ", got " + std::to_string(n));
  }
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw std::invalid_argument("grid half-width must be positive and finite");
  }
  const double h = spacing();
  axis_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n / 2; ++i) {
    const double x = -half_width + (i + 0.5) * h;
    axis_[static_cast<std::size_t>(i)] = x;
    axis_[static_cast<std::size_t>(n - 1 - i)] = -x;
  }
}

Grid Grid::conjugate() const {
  return Grid(n_, n_ * std::numbers::pi / (2.0 * half_width_));
}

Grid make_grid(int n, double half_width) { return Grid(n, half_width); }

}  // namespace biphoton

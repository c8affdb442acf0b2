#include "biphoton/dense.hpp"

#include <cmath>
#include <stdexcept>

namespace biphoton {
namespace {

void check_size(const Grid& grid) {
  if (grid.size() > DenseAmplitude::kMaxPoints) {
    throw std::invalid_argument("dense amplitudes are limited to " +
                                std::to_string(DenseAmplitude::kMaxPoints) + " points per axis");
  }
}

}  // namespace

DenseAmplitude::DenseAmplitude(Grid grid, Representation rep, std::vector<Complex> values)
    : grid_(std::move(grid)), rep_(rep), values_(std::move(values)) {
  check_size(grid_);
  const std::size_t n = static_cast<std::size_t>(grid_.size());
  if (values_.size() != n * n * n * n) throw std::invalid_argument("dense amplitude size mismatch");
}

DenseAmplitude DenseAmplitude::sample(
    const Grid& grid, Representation rep,
    const std::function<Complex(double, double, double, double)>& f) {
  check_size(grid);
  const int n = grid.size();
  std::vector<Complex> values;
  values.reserve(static_cast<std::size_t>(n) * n * n * n);
  for (int i1 = 0; i1 < n; ++i1)
    for (int j1 = 0; j1 < n; ++j1)
      for (int i2 = 0; i2 < n; ++i2)
        for (int j2 = 0; j2 < n; ++j2)
          values.push_back(f(grid.sample(i1), grid.sample(j1), grid.sample(i2), grid.sample(j2)));
  return DenseAmplitude(grid, rep, std::move(values));
}

double DenseAmplitude::norm_squared() const {
  double s = 0.0;
  for (const auto& v : values_) s += std::norm(v);
  const double w = grid_.cell_weight();
  return s * w * w;
}

DenseAmplitude DenseAmplitude::normalized() const {
  const double n2 = norm_squared();
  if (!(n2 > 0.0)) throw std::invalid_argument("cannot normalize a zero dense amplitude");
  std::vector<Complex> v = values_;
  for (auto& x : v) x /= std::sqrt(n2);
  return DenseAmplitude(grid_, rep_, std::move(v));
}

DenseAmplitude DenseAmplitude::sigma() const {
  const int n = grid_.size();
  std::vector<Complex> v(values_.size());
  for (int i1 = 0; i1 < n; ++i1)
    for (int j1 = 0; j1 < n; ++j1)
      for (int i2 = 0; i2 < n; ++i2)
        for (int j2 = 0; j2 < n; ++j2)
          v[index(i1, j1, i2, j2)] = values_[index(i2, n - 1 - j2, i1, n - 1 - j1)];
  return DenseAmplitude(grid_, rep_, std::move(v));
}

Complex DenseAmplitude::sigma_overlap() const {
  const int n = grid_.size();
  Complex s = 0.0;
  for (int i1 = 0; i1 < n; ++i1)
    for (int j1 = 0; j1 < n; ++j1)
      for (int i2 = 0; i2 < n; ++i2)
        for (int j2 = 0; j2 < n; ++j2)
          s += values_[index(i1, j1, i2, j2)] *
               std::conj(values_[index(i2, n - 1 - j2, i1, n - 1 - j1)]);
  const double w = grid_.cell_weight();
  return s * (w * w);
}

Eigen::MatrixXcd DenseAmplitude::unfolded() const {
  const int n = grid_.size();
  Eigen::MatrixXcd m(n * n, n * n);
  for (int i1 = 0; i1 < n; ++i1)
    for (int j1 = 0; j1 < n; ++j1)
      for (int i2 = 0; i2 < n; ++i2)
        for (int j2 = 0; j2 < n; ++j2) m(i1 + n * j1, i2 + n * j2) = (*this)(i1, j1, i2, j2);
  return m;
}

Complex inner_product(const DenseAmplitude& a, const DenseAmplitude& b) {
  if (!(a.grid() == b.grid()) || a.representation() != b.representation()) {
    throw std::invalid_argument("dense amplitudes live on different grids or representations");
  }
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) s += std::conj(a.values()[i]) * b.values()[i];
  const double w = a.grid().cell_weight();
  return s * (w * w);
}

DenseAmplitude to_dense(const TwoPhotonAmplitude& amp) {
  const Grid& grid = amp.grid();
  check_size(grid);
  const int n = grid.size();
  std::vector<Complex> v(static_cast<std::size_t>(n) * n * n * n, Complex(0.0));
  for (const auto& t : amp.terms()) {
    std::size_t idx = 0;
    for (int i1 = 0; i1 < n; ++i1)
      for (int j1 = 0; j1 < n; ++j1) {
        const Complex a = t.coefficient * t.photon1(i1, j1);
        for (int i2 = 0; i2 < n; ++i2)
          for (int j2 = 0; j2 < n; ++j2) v[idx++] += a * t.photon2(i2, j2);
      }
  }
  return DenseAmplitude(grid, amp.representation(), std::move(v));
}

}  // namespace biphoton

#include "biphoton/kernel_amplitude.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "biphoton/errors.hpp"

namespace biphoton {

SeparableKernelAmplitude::SeparableKernelAmplitude(Grid grid, Representation rep,
                                                   ModeArray weight1, ModeArray weight2,
                                                   Eigen::MatrixXcd kernel_x,
                                                   Eigen::MatrixXcd kernel_y)
    : grid_(std::move(grid)),
      rep_(rep),
      weight1_(std::move(weight1)),
      weight2_(std::move(weight2)),
      kernel_x_(std::move(kernel_x)),
      kernel_y_(std::move(kernel_y)) {
  const Eigen::Index n = grid_.size();
  for (const Eigen::MatrixXcd* m : {&weight1_, &weight2_, &kernel_x_, &kernel_y_}) {
    if (m->rows() != n || m->cols() != n) {
      throw std::invalid_argument("kernel amplitude factors must be n x n");
    }
  }
}

double SeparableKernelAmplitude::norm_squared() const {
  return std::max(0.0, inner_product(*this, *this).real());
}

SeparableKernelAmplitude SeparableKernelAmplitude::scaled(Complex factor) const {
  return SeparableKernelAmplitude(grid_, rep_, weight1_ * factor, weight2_, kernel_x_, kernel_y_);
}

SeparableKernelAmplitude SeparableKernelAmplitude::multiplied_photon1(
    const ModeArray& multiplier) const {
  if (multiplier.rows() != weight1_.rows() || multiplier.cols() != weight1_.cols()) {
    throw std::invalid_argument("multiplier does not match the grid size");
  }
  return SeparableKernelAmplitude(grid_, rep_, weight1_.cwiseProduct(multiplier), weight2_,
                                  kernel_x_, kernel_y_);
}

Complex inner_product(const SeparableKernelAmplitude& a, const SeparableKernelAmplitude& b) {
  if (!(a.grid() == b.grid()) || a.representation() != b.representation()) {
    throw std::invalid_argument("kernel amplitudes live on different grids or representations");
  }
  // sum_{x1,y1} P1(x1,y1) * sum_{x2,y2} Mx(x1,x2) P2(x2,y2) My(y1,y2)
  const Eigen::MatrixXcd p1 = a.weight1().conjugate().cwiseProduct(b.weight1());
  const Eigen::MatrixXcd p2 = a.weight2().conjugate().cwiseProduct(b.weight2());
  const Eigen::MatrixXcd mx = a.kernel_x().conjugate().cwiseProduct(b.kernel_x());
  const Eigen::MatrixXcd my = a.kernel_y().conjugate().cwiseProduct(b.kernel_y());
  const Eigen::MatrixXcd inner = mx * p2 * my.transpose();
  const double w = a.grid().cell_weight();
  return p1.cwiseProduct(inner).sum() * (w * w);
}

SeparableKernelAmplitude normalize(const SeparableKernelAmplitude& amp) {
  const double n2 = amp.norm_squared();
  if (!(n2 > 0.0)) throw std::invalid_argument("cannot normalize a zero-norm kernel amplitude");
  return amp.scaled(1.0 / std::sqrt(n2));
}

SeparableKernelAmplitude apply_sigma(const SeparableKernelAmplitude& amp) {
  // Phi(x2, -y2, x1, -y1): the weights swap and reflect, kx transposes, and
  // ky transposes with both indices mirrored.
  return SeparableKernelAmplitude(amp.grid(), amp.representation(),
                                  amp.weight2().rowwise().reverse(),
                                  amp.weight1().rowwise().reverse(), amp.kernel_x().transpose(),
                                  amp.kernel_y().reverse().transpose());
}

double sigma_overlap(const SeparableKernelAmplitude& amp) {
  require_normalized(amp.norm_squared(), "sigma_overlap");
  const Complex j = inner_product(apply_sigma(amp), amp);
  if (std::abs(j.imag()) > 1e-10) {
    throw std::logic_error("exchange overlap has imaginary part " + std::to_string(j.imag()));
  }
  return j.real();
}

SymmetryWeights symmetry_decompose(const SeparableKernelAmplitude& amp) {
  const double j = sigma_overlap(amp);
  return {0.5 * (1.0 + j), 0.5 * (1.0 - j)};
}

CompressedAmplitude to_product_sum(const SeparableKernelAmplitude& amp,
                                   KernelExpansionOptions options) {
  const Grid& grid = amp.grid();
  Eigen::BDCSVD<Eigen::MatrixXcd> sx(amp.kernel_x(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::BDCSVD<Eigen::MatrixXcd> sy(amp.kernel_y(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& s = sx.singularValues();
  const Eigen::VectorXd& t = sy.singularValues();

  struct Pair {
    double value;
    int a, b;
  };
  std::vector<Pair> pairs;
  pairs.reserve(static_cast<std::size_t>(s.size() * t.size()));
  for (int a = 0; a < s.size(); ++a)
    for (int b = 0; b < t.size(); ++b) pairs.push_back({s(a) * t(b), a, b});
  std::sort(pairs.begin(), pairs.end(), [](const Pair& p, const Pair& q) {
    return p.value != q.value ? p.value > q.value : (p.a != q.a ? p.a < q.a : p.b < q.b);
  });

  const double w = grid.cell_weight();
  const double norm = std::sqrt(amp.norm_squared());
  if (!(norm > 0.0)) throw std::invalid_argument("cannot expand a zero-norm kernel amplitude");
  const double weight_bound =
      amp.weight1().cwiseAbs().maxCoeff() * amp.weight2().cwiseAbs().maxCoeff();

  // Tail sums from the back so the error bound is available for every cut.
  std::vector<double> tail(pairs.size() + 1, 0.0);
  for (std::size_t i = pairs.size(); i-- > 0;) tail[i] = tail[i + 1] + pairs[i].value * pairs[i].value;
  auto bound_at = [&](std::size_t keep) { return weight_bound * std::sqrt(tail[keep]) * w / norm; };

  std::size_t keep = 1;
  while (keep < pairs.size() && bound_at(keep) > options.target_error) ++keep;
  if (keep > static_cast<std::size_t>(options.max_rank)) {
    throw TruncationError("kernel expansion needs " + std::to_string(keep) +
                          " terms, above the limit of " + std::to_string(options.max_rank));
  }

  const Eigen::MatrixXcd& ux = sx.matrixU();
  const Eigen::MatrixXcd& uy = sy.matrixU();
  const Eigen::MatrixXcd vx = sx.matrixV().conjugate();
  const Eigen::MatrixXcd vy = sy.matrixV().conjugate();
  std::vector<ProductTerm> terms;
  terms.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) {
    const auto [value, a, b] = pairs[i];
    ModeArray f = amp.weight1().cwiseProduct(ux.col(a) * uy.col(b).transpose());
    ModeArray g = amp.weight2().cwiseProduct(vx.col(a) * vy.col(b).transpose());
    terms.push_back({Complex(value, 0.0), TransverseMode(grid, amp.representation(), std::move(f)),
                     TransverseMode(grid, amp.representation(), std::move(g))});
  }
  return {TwoPhotonAmplitude(std::move(terms)), bound_at(keep)};
}

DenseAmplitude to_dense(const SeparableKernelAmplitude& amp) {
  const int n = amp.grid().size();
  if (n > DenseAmplitude::kMaxPoints) {
    throw std::invalid_argument("dense amplitudes are limited to " +
                                std::to_string(DenseAmplitude::kMaxPoints) + " points per axis");
  }
  std::vector<Complex> v;
  v.reserve(static_cast<std::size_t>(n) * n * n * n);
  for (int i1 = 0; i1 < n; ++i1)
    for (int j1 = 0; j1 < n; ++j1)
      for (int i2 = 0; i2 < n; ++i2)
        for (int j2 = 0; j2 < n; ++j2) v.push_back(amp(i1, j1, i2, j2));
  return DenseAmplitude(amp.grid(), amp.representation(), std::move(v));
}

}  // namespace biphoton

#include "biphoton/amplitude.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "biphoton/fourier.hpp"

namespace biphoton {
namespace {

Eigen::MatrixXcd stack(const std::vector<ProductTerm>& terms, bool first) {
  const Eigen::Index n = terms.front().photon1.grid().size();
  Eigen::MatrixXcd m(n * n, static_cast<Eigen::Index>(terms.size()));
  for (std::size_t r = 0; r < terms.size(); ++r) {
    const ModeArray& v = first ? terms[r].photon1.values() : terms[r].photon2.values();
    m.col(static_cast<Eigen::Index>(r)) = Eigen::Map<const Eigen::VectorXcd>(v.data(), n * n);
  }
  return m;
}

TransverseMode column_mode(const Grid& grid, Representation rep, const Eigen::VectorXcd& column) {
  const int n = grid.size();
  return TransverseMode(grid, rep, Eigen::Map<const ModeArray>(column.data(), n, n));
}

}  // namespace

TwoPhotonAmplitude::TwoPhotonAmplitude(std::vector<ProductTerm> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw std::invalid_argument("a two-photon amplitude needs at least one term");
  const TransverseMode& ref = terms_.front().photon1;
  for (const auto& t : terms_) {
    require_compatible(ref, t.photon1);
    require_compatible(ref, t.photon2);
  }
}

Eigen::MatrixXcd TwoPhotonAmplitude::photon1_matrix() const { return stack(terms_, true); }
Eigen::MatrixXcd TwoPhotonAmplitude::photon2_matrix() const { return stack(terms_, false); }

Eigen::VectorXcd TwoPhotonAmplitude::coefficients() const {
  Eigen::VectorXcd c(rank());
  for (int r = 0; r < rank(); ++r) c(r) = terms_[static_cast<std::size_t>(r)].coefficient;
  return c;
}

double TwoPhotonAmplitude::norm_squared() const {
  return std::max(0.0, inner_product(*this, *this).real());
}

TwoPhotonAmplitude TwoPhotonAmplitude::scaled(Complex factor) const {
  auto terms = terms_;
  for (auto& t : terms) t.coefficient *= factor;
  return TwoPhotonAmplitude(std::move(terms));
}

TwoPhotonAmplitude operator+(const TwoPhotonAmplitude& a, const TwoPhotonAmplitude& b) {
  auto terms = a.terms();
  terms.insert(terms.end(), b.terms().begin(), b.terms().end());
  return TwoPhotonAmplitude(std::move(terms));
}

TwoPhotonAmplitude operator-(const TwoPhotonAmplitude& a, const TwoPhotonAmplitude& b) {
  return a + b.scaled(-1.0);
}

Complex inner_product(const TwoPhotonAmplitude& a, const TwoPhotonAmplitude& b) {
  require_compatible(a.terms().front().photon1, b.terms().front().photon1);
  const double w = a.grid().cell_weight();
  const Eigen::MatrixXcd g1 = a.photon1_matrix().adjoint() * b.photon1_matrix();
  const Eigen::MatrixXcd g2 = a.photon2_matrix().adjoint() * b.photon2_matrix();
  const Complex s = a.coefficients().adjoint() * g1.cwiseProduct(g2) * b.coefficients();
  return s * (w * w);
}

TwoPhotonAmplitude normalize(const TwoPhotonAmplitude& amp) {
  const double n2 = amp.norm_squared();
  if (!(n2 > 0.0)) throw std::invalid_argument("cannot normalize a zero-norm two-photon amplitude");
  return amp.scaled(1.0 / std::sqrt(n2));
}

TwoPhotonAmplitude apply_sigma(const TwoPhotonAmplitude& amp) {
  std::vector<ProductTerm> terms;
  terms.reserve(amp.terms().size());
  for (const auto& t : amp.terms()) {
    terms.push_back({t.coefficient, t.photon2.reflected_y(), t.photon1.reflected_y()});
  }
  return TwoPhotonAmplitude(std::move(terms));
}

TwoPhotonAmplitude swap_photons(const TwoPhotonAmplitude& amp) {
  std::vector<ProductTerm> terms;
  terms.reserve(amp.terms().size());
  for (const auto& t : amp.terms()) terms.push_back({t.coefficient, t.photon2, t.photon1});
  return TwoPhotonAmplitude(std::move(terms));
}

TwoPhotonAmplitude multiply_photon1(const TwoPhotonAmplitude& amp, const ModeArray& multiplier) {
  std::vector<ProductTerm> terms;
  terms.reserve(amp.terms().size());
  for (const auto& t : amp.terms()) {
    terms.push_back({t.coefficient, t.photon1.multiplied(multiplier), t.photon2});
  }
  return TwoPhotonAmplitude(std::move(terms));
}

void require_normalized(double norm_squared, const char* operation) {
  if (std::abs(std::sqrt(norm_squared) - 1.0) > kNormalizationTolerance) {
    throw std::invalid_argument(std::string(operation) + " requires a normalized amplitude (norm " +
                                std::to_string(std::sqrt(norm_squared)) + ")");
  }
}

double sigma_overlap(const TwoPhotonAmplitude& amp) {
  require_normalized(amp.norm_squared(), "sigma_overlap");
  const Complex j = inner_product(apply_sigma(amp), amp);
  if (std::abs(j.imag()) > 1e-10) {
    throw std::logic_error("exchange overlap has imaginary part " + std::to_string(j.imag()));
  }
  return j.real();
}

SymmetryWeights symmetry_decompose(const TwoPhotonAmplitude& amp) {
  const double j = sigma_overlap(amp);
  return {0.5 * (1.0 + j), 0.5 * (1.0 - j)};
}

TwoPhotonAmplitude position_representation(const TwoPhotonAmplitude& amp) {
  if (amp.representation() != Representation::kMomentum) {
    throw std::invalid_argument("amplitude is already in the position representation");
  }
  std::vector<ProductTerm> terms;
  terms.reserve(amp.terms().size());
  for (const auto& t : amp.terms()) {
    terms.push_back({t.coefficient, fourier_2d(t.photon1, FourierDirection::kForward),
                     fourier_2d(t.photon2, FourierDirection::kForward)});
  }
  return TwoPhotonAmplitude(std::move(terms));
}

TwoPhotonAmplitude recompress(const TwoPhotonAmplitude& amp, RecompressionOptions options) {
  const Grid& grid = amp.grid();
  const Representation rep = amp.representation();
  const double h2 = grid.cell_weight();

  Eigen::HouseholderQR<Eigen::MatrixXcd> qr1(amp.photon1_matrix());
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr2(amp.photon2_matrix());
  const Eigen::Index rows = qr1.matrixQR().rows();
  const Eigen::Index k = std::min<Eigen::Index>(rows, amp.rank());
  const Eigen::MatrixXcd r1 = qr1.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  const Eigen::MatrixXcd r2 = qr2.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  const Eigen::MatrixXcd q1 = qr1.householderQ() * Eigen::MatrixXcd::Identity(rows, k);
  const Eigen::MatrixXcd q2 = qr2.householderQ() * Eigen::MatrixXcd::Identity(rows, k);

  // Phi = Q1 (R1 diag(c) R2^T) Q2^T as a matrix over (point1, point2).
  const Eigen::MatrixXcd core = r1 * amp.coefficients().asDiagonal() * r2.transpose();
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(core, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  if (s.size() == 0 || !(s(0) > 0.0)) {
    throw std::invalid_argument("cannot recompress a zero amplitude");
  }
  const Eigen::MatrixXcd left = q1 * svd.matrixU();
  const Eigen::MatrixXcd right = q2 * svd.matrixV().conjugate();

  std::vector<ProductTerm> terms;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) < options.relative_cutoff * s(0)) break;
    // Unit columns become unit modes after dividing by the cell spacing.
    const double scale = 1.0 / std::sqrt(h2);
    terms.push_back({Complex(s(i) * h2, 0.0), column_mode(grid, rep, left.col(i) * scale),
                     column_mode(grid, rep, right.col(i) * scale)});
  }
  return TwoPhotonAmplitude(std::move(terms));
}

}  // namespace biphoton

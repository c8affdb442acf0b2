#include "biphoton/states.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "biphoton/errors.hpp"

namespace biphoton {
namespace {

constexpr double kPi = std::numbers::pi;

void require_resolved(double w0, const Grid& grid, Representation rep, const char* what) {
  if (!(w0 > 0.0)) throw std::invalid_argument(std::string(what) + ": waist must be positive");
  const double limit = rep == Representation::kMomentum ? 1.0 / w0 : 0.5 * w0;
  if (grid.spacing() > limit) {
    throw std::invalid_argument(std::string(what) + ": grid spacing " +
                                std::to_string(grid.spacing()) + " does not resolve waist " +
                                std::to_string(w0));
  }
}

// (-i)^k
Complex minus_i_power(int k) {
  static constexpr Complex table[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
  return table[k % 4];
}

}  // namespace

Complex HermiteGaussPump::evaluate(double qx, double qy) const {
  const double s = w0 / std::numbers::sqrt2;
  const double hx = std::hermite(static_cast<unsigned>(m), s * qx);
  const double hy = std::hermite(static_cast<unsigned>(n), s * qy);
  return minus_i_power(m + n) * hx * hy * std::exp(-(qx * qx + qy * qy) * w0 * w0 / 4.0);
}

double GaussianBeamParams::rayleigh_length() const { return pump_wavenumber * w0 * w0 / 2.0; }

double GaussianBeamParams::spot_size() const {
  const double z0 = rayleigh_length();
  return w0 * std::sqrt(1.0 + z * z / (z0 * z0));
}

double GaussianBeamParams::curvature_radius() const {
  if (z == 0.0) return std::numeric_limits<double>::infinity();
  const double z0 = rayleigh_length();
  return (z * z + z0 * z0) / z;
}

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

TransverseMode gaussian_g00(double w0, const Grid& grid) {
  require_resolved(w0, grid, Representation::kMomentum, "gaussian_g00");
  const double a = w0 / std::sqrt(2.0 * kPi);
  return TransverseMode::sample(grid, Representation::kMomentum,
                                [&](double qx, double qy) {
                                  return Complex(a * std::exp(-(qx * qx + qy * qy) * w0 * w0 / 4.0));
                                })
      .normalized();
}

TransverseMode hermite_gaussian(int m, int n, double w0, const Grid& grid, Representation rep) {
  if (m < 0 || n < 0) throw std::invalid_argument("Hermite-Gaussian indices must be non-negative");
  require_resolved(w0, grid, rep, "hermite_gaussian");
  if (rep == Representation::kMomentum) {
    const HermiteGaussPump hg{m, n, w0};
    return TransverseMode::sample(grid, rep, [&](double qx, double qy) { return hg.evaluate(qx, qy); })
        .normalized();
  }
  const double s = std::numbers::sqrt2 / w0;
  return TransverseMode::sample(grid, rep,
                                [&](double x, double y) {
                                  return Complex(std::hermite(static_cast<unsigned>(m), s * x) *
                                                 std::hermite(static_cast<unsigned>(n), s * y) *
                                                 std::exp(-(x * x + y * y) / (w0 * w0)));
                                })
      .normalized();
}

TransverseMode oam_ring(int l, double w0, const Grid& grid, Representation rep) {
  if (!(w0 > 0.0)) throw std::invalid_argument("oam_ring: waist must be positive");
  const double decay = rep == Representation::kMomentum ? w0 * w0 / 4.0 : 1.0 / (w0 * w0);
  const int order = std::abs(l);
  return TransverseMode::sample(grid, rep,
                                [&](double u, double v) {
                                  const double r2 = u * u + v * v;
                                  const double radial =
                                      std::pow(std::sqrt(r2), order) * std::exp(-r2 * decay);
                                  return std::polar(radial, l * azimuth(u, v));
                                })
      .normalized();
}

std::string_view to_string(BellKind kind) {
  switch (kind) {
    case BellKind::kPsiPlus: return "psi-plus";
    case BellKind::kPsiMinus: return "psi-minus";
    case BellKind::kPhiPlus: return "phi-plus";
    case BellKind::kPhiMinus: return "phi-minus";
  }
  return "unknown";
}

TwoPhotonAmplitude bell_state(BellKind kind, int l, double w0, const Grid& grid) {
  if (l == 0) throw std::invalid_argument("Bell states need l != 0");
  const TransverseMode plus = oam_ring(l, w0, grid);
  const TransverseMode minus = oam_ring(-l, w0, grid);
  const double c = 1.0 / std::numbers::sqrt2;
  const bool psi = kind == BellKind::kPsiPlus || kind == BellKind::kPsiMinus;
  const double sign = (kind == BellKind::kPsiPlus || kind == BellKind::kPhiPlus) ? 1.0 : -1.0;
  std::vector<ProductTerm> terms;
  if (psi) {
    terms.push_back({c, plus, plus});
    terms.push_back({sign * c, minus, minus});
  } else {
    terms.push_back({c, plus, minus});
    terms.push_back({sign * c, minus, plus});
  }
  return normalize(TwoPhotonAmplitude(std::move(terms)));
}

TwoPhotonAmplitude product_state(const TransverseMode& f, const TransverseMode& g) {
  require_compatible(f, g);
  return normalize(TwoPhotonAmplitude({ProductTerm{1.0, f, g}}));
}

namespace {

Complex spdc_value(const SpdcParams& p, double qx1, double qy1, double qx2, double qy2) {
  const double dx = qx1 - qx2;
  const double dy = qy1 - qy2;
  const double arg = p.crystal_length * (dx * dx + dy * dy) / (4.0 * p.pump_wavenumber);
  return p.pump.evaluate(qx1 + qx2, qy1 + qy2) * sinc(arg);
}

void validate(const SpdcParams& p) {
  if (!(p.crystal_length > 0.0) || !(p.pump_wavenumber > 0.0)) {
    throw std::invalid_argument("SPDC crystal length and pump wavenumber must be positive");
  }
  if (p.pump.m < 0 || p.pump.n < 0 || !(p.pump.w0 > 0.0)) {
    throw std::invalid_argument("invalid SPDC pump mode");
  }
}

}  // namespace

CompressedAmplitude spdc_state(const SpdcParams& params, const Grid& grid, SpdcOptions options) {
  validate(params);
  const int n = grid.size();
  const Eigen::Index points = static_cast<Eigen::Index>(n) * n;
  Eigen::MatrixXcd unfolded(points, points);
  for (int j2 = 0; j2 < n; ++j2)
    for (int i2 = 0; i2 < n; ++i2)
      for (int j1 = 0; j1 < n; ++j1)
        for (int i1 = 0; i1 < n; ++i1)
          unfolded(i1 + n * j1, i2 + n * j2) =
              spdc_value(params, grid.sample(i1), grid.sample(j1), grid.sample(i2), grid.sample(j2));

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(unfolded, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double total = s.squaredNorm();
  if (!(total > 0.0)) throw std::invalid_argument("SPDC amplitude vanishes on this grid");

  Eigen::Index keep = 0;
  double tail = total;
  while (keep < s.size() && std::sqrt(tail / total) > options.target_error) {
    tail -= s(keep) * s(keep);
    ++keep;
  }
  keep = std::max<Eigen::Index>(keep, 1);
  tail = s.tail(s.size() - keep).squaredNorm();
  if (keep > options.max_rank) {
    keep = options.max_rank;
    tail = s.tail(s.size() - keep).squaredNorm();
  }
  const double error = std::sqrt(tail / total);
  if (error > options.max_truncation_error) {
    throw TruncationError("SPDC factorization error " + std::to_string(error) + " exceeds " +
                          std::to_string(options.max_truncation_error));
  }

  const double h = grid.spacing();
  std::vector<ProductTerm> terms;
  terms.reserve(static_cast<std::size_t>(keep));
  for (Eigen::Index i = 0; i < keep; ++i) {
    const Eigen::VectorXcd u = svd.matrixU().col(i) / h;
    const Eigen::VectorXcd v = svd.matrixV().col(i).conjugate() / h;
    terms.push_back({Complex(s(i) * h * h, 0.0),
                     TransverseMode(grid, Representation::kMomentum,
                                    Eigen::Map<const ModeArray>(u.data(), n, n)),
                     TransverseMode(grid, Representation::kMomentum,
                                    Eigen::Map<const ModeArray>(v.data(), n, n))});
  }
  return {normalize(TwoPhotonAmplitude(std::move(terms))), error};
}

DenseAmplitude spdc_state_dense(const SpdcParams& params, const Grid& grid) {
  validate(params);
  return DenseAmplitude::sample(grid, Representation::kMomentum,
                                [&](double qx1, double qy1, double qx2, double qy2) {
                                  return spdc_value(params, qx1, qy1, qx2, qy2);
                                })
      .normalized();
}

SeparableKernelAmplitude thin_crystal_kernel(const GaussianBeamParams& params, const Grid& grid,
                                             ThinCrystalOptions options) {
  if (!(params.z >= 0.0)) throw std::invalid_argument("thin_crystal: z must be non-negative");
  if (!(params.w0 > 0.0) || !(params.pump_wavenumber > 0.0)) {
    throw std::invalid_argument("thin_crystal: waist and pump wavenumber must be positive");
  }
  const int n = grid.size();
  const double w = params.spot_size();
  const bool phased = options.keep_phase && params.z > 0.0;
  const double kp = params.pump_wavenumber;
  const double z0 = params.rayleigh_length();
  const double radius = params.curvature_radius();
  const double relative_coeff =
      phased ? kp / 4.0 * z0 * z0 / (2.0 * params.z * params.z * radius) : 0.0;
  const double local_coeff = phased ? kp / 4.0 / radius : 0.0;

  Eigen::MatrixXcd kernel(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double u1 = grid.sample(i);
      const double u2 = grid.sample(j);
      const double s = u1 + u2;
      const double d = u1 - u2;
      const double phase = relative_coeff * d * d + local_coeff * (u1 * u1 + u2 * u2);
      kernel(i, j) = std::polar(std::exp(-s * s / (4.0 * w * w)), phase);
    }
  }
  ModeArray aperture = ModeArray::Ones(n, n);
  if (options.aperture == ApertureShape::kCircular) {
    const double r2max = grid.half_width() * grid.half_width();
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix) {
        const double x = grid.sample(ix);
        const double y = grid.sample(iy);
        if (x * x + y * y > r2max) aperture(ix, iy) = 0.0;
      }
  }
  return normalize(SeparableKernelAmplitude(grid, Representation::kPosition, aperture, aperture,
                                            kernel, kernel));
}

CompressedAmplitude thin_crystal_gaussian(const GaussianBeamParams& params, const Grid& grid,
                                          ThinCrystalOptions options,
                                          KernelExpansionOptions expansion) {
  auto expanded = to_product_sum(thin_crystal_kernel(params, grid, options), expansion);
  return {normalize(expanded.amplitude), expanded.truncation_error};
}

}  // namespace biphoton

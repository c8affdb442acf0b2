#include <doctest.h>

#include <cmath>
#include <numbers>

#include "biphoton/dense.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/interference.hpp"
#include "biphoton/kernel_amplitude.hpp"
#include "biphoton/states.hpp"

using namespace biphoton;

namespace {

double max_diff(const ModeArray& a, const ModeArray& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("g00 is real, positive, y-even and normalized") {
  const Grid g = make_grid(32, 8.0);
  const auto v = gaussian_g00(1.0, g);
  CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(v.values().imag().cwiseAbs().maxCoeff() == 0.0);
  CHECK(v.values().real().minCoeff() > 0.0);
  CHECK(v.reflected_y().values() == v.values());
  CHECK(std::abs(v(15, 15)) == doctest::Approx(v.values().cwiseAbs().maxCoeff()));
  CHECK_THROWS_AS(gaussian_g00(1.0, make_grid(8, 8.0)), std::invalid_argument);
}

TEST_CASE("Hermite-Gaussian parity and orthogonality") {
  const Grid g = make_grid(32, 8.0);
  CHECK(max_diff(hermite_gaussian(0, 0, 1.0, g).values(), gaussian_g00(1.0, g).values()) < 1e-10);
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n) {
      const auto hg = hermite_gaussian(m, n, 1.0, g);
      const double sign = n % 2 == 0 ? 1.0 : -1.0;
      CHECK(hg.reflected_y().values() == (sign * hg.values()).eval());
    }
  CHECK(std::abs(inner_product_2d(hermite_gaussian(1, 0, 1.0, g), hermite_gaussian(0, 1, 1.0, g))) <
        1e-10);
  CHECK_THROWS_AS(hermite_gaussian(-1, 0, 1.0, g), std::invalid_argument);
}

TEST_CASE("OAM rings are orthonormal and reflect onto opposite charge") {
  const Grid g = make_grid(64, 10.0);
  for (int l = -3; l <= 3; ++l)
    for (int m = -3; m <= 3; ++m) {
      const Complex ip = inner_product_2d(oam_ring(l, 1.0, g), oam_ring(m, 1.0, g));
      CHECK(std::abs(ip - (l == m ? 1.0 : 0.0)) < 1e-8);
    }
  CHECK(max_diff(oam_ring(2, 1.0, g).reflected_y().values(), oam_ring(-2, 1.0, g).values()) < 1e-12);
  const auto flat = oam_ring(0, 1.0, g);
  CHECK(flat.values().imag().cwiseAbs().maxCoeff() == 0.0);
  CHECK(std::abs(flat(10, 20) - flat(20, 10)) < 1e-15);
}

TEST_CASE("Bell states have definite exchange symmetry") {
  const Grid g = make_grid(64, 10.0);
  CHECK_THROWS_AS(bell_state(BellKind::kPsiPlus, 0, 1.0, g), std::invalid_argument);
  for (int l = 1; l <= 3; ++l) {
    CHECK(symmetry_decompose(bell_state(BellKind::kPsiMinus, l, 1.0, g)).antisymmetric ==
          doctest::Approx(1.0).epsilon(1e-10));
    for (auto kind : {BellKind::kPsiPlus, BellKind::kPhiPlus, BellKind::kPhiMinus}) {
      CHECK(symmetry_decompose(bell_state(kind, l, 1.0, g)).symmetric ==
            doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("reflecting one photon maps the Psi family onto the Phi family") {
  const Grid g = make_grid(16, 6.0);
  auto reflect_second = [](const TwoPhotonAmplitude& a) {
    std::vector<ProductTerm> terms;
    for (const auto& t : a.terms()) terms.push_back({t.coefficient, t.photon1, t.photon2.reflected_y()});
    return TwoPhotonAmplitude(std::move(terms));
  };
  const std::pair<BellKind, BellKind> pairs[] = {{BellKind::kPsiPlus, BellKind::kPhiPlus},
                                                 {BellKind::kPsiMinus, BellKind::kPhiMinus}};
  for (const auto& [psi, phi] : pairs) {
    const auto mapped = reflect_second(bell_state(psi, 1, 1.0, g));
    CHECK(inner_product(mapped, bell_state(phi, 1, 1.0, g)).real() ==
          doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("product states") {
  const Grid g = make_grid(64, 10.0);
  for (int l = 1; l <= 2; ++l) {
    CHECK(coincidence_probability(product_state(oam_ring(l, 1.0, g), oam_ring(l, 1.0, g))) ==
          doctest::Approx(0.5).epsilon(1e-8));
    CHECK(std::abs(coincidence_probability(
              product_state(oam_ring(l, 1.0, g), oam_ring(-l, 1.0, g)))) < 1e-10);
  }
}

TEST_CASE("SPDC factorization matches the dense oracle") {
  const Grid g = make_grid(12, 4.0);
  for (const HermiteGaussPump pump : {HermiteGaussPump{0, 0, 1.0}, HermiteGaussPump{0, 1, 1.0},
                                      HermiteGaussPump{1, 0, 1.0}}) {
    const SpdcParams params{1.0, 2.0, pump};
    const auto c = spdc_state(params, g);
    const auto dense = spdc_state_dense(params, g);
    CHECK(c.truncation_error < 1e-6);
    CHECK(std::abs(std::abs(inner_product(to_dense(c.amplitude), dense)) - 1.0) < 1e-10);
    const double expect = pump.n % 2 == 0 ? 1.0 : -1.0;
    CHECK(sigma_overlap(c.amplitude) == doctest::Approx(expect).epsilon(1e-8));
    CHECK(dense.sigma_overlap().real() == doctest::Approx(expect).epsilon(1e-8));
  }
}

TEST_CASE("SPDC validation and truncation limit") {
  const Grid g = make_grid(12, 4.0);
  CHECK_THROWS_AS(spdc_state({0.0, 2.0, {}}, g), std::invalid_argument);
  CHECK_THROWS_AS(spdc_state({1.0, 2.0, {}}, g, {1e-12, 1e-12, 2}), TruncationError);
}

TEST_CASE("Gaussian beam parameters") {
  const GaussianBeamParams beam{1.0, 1.0, 2.0};
  CHECK(beam.rayleigh_length() == doctest::Approx(1.0));
  CHECK(beam.spot_size() == doctest::Approx(std::numbers::sqrt2));
  CHECK(beam.curvature_radius() == doctest::Approx(2.0));
  CHECK(std::isinf(GaussianBeamParams{1.0, 0.0, 2.0}.curvature_radius()));
  CHECK(GaussianBeamParams{1.3, 0.0, 2.0}.spot_size() == doctest::Approx(1.3));
}

TEST_CASE("thin-crystal state is exchange symmetric") {
  const Grid g = make_grid(16, 6.0);
  const auto k = thin_crystal_kernel({1.0, 1.0, 2.0}, g);
  CHECK(sigma_overlap(k) == doctest::Approx(1.0).epsilon(1e-10));
  const auto dense = to_dense(k);
  CHECK(dense.sigma_overlap().real() == doctest::Approx(1.0).epsilon(1e-10));
  const auto ps = thin_crystal_gaussian({1.0, 1.0, 2.0}, g);
  CHECK(sigma_overlap(ps.amplitude) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("thin-crystal state at z = 0 is real and positive inside the aperture") {
  const Grid g = make_grid(16, 6.0);
  const auto k = thin_crystal_kernel({1.0, 0.0, 2.0}, g);
  const auto d = to_dense(k);
  double min_inside = 1.0;
  for (const Complex v : d.values()) {
    CHECK(v.imag() == 0.0);
    CHECK(v.real() >= 0.0);
    if (v.real() > 0.0) min_inside = std::min(min_inside, v.real());
  }
  CHECK(min_inside > 0.0);
}

TEST_CASE("sinc") {
  CHECK(sinc(0.0) == 1.0);
  CHECK(sinc(std::numbers::pi) == doctest::Approx(0.0));
  CHECK(sinc(1.0) == doctest::Approx(std::sin(1.0)));
}

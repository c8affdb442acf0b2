#include <doctest.h>

#include <cmath>
#include <random>

#include "biphoton/amplitude.hpp"
#include "biphoton/dense.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/kernel_amplitude.hpp"
#include "biphoton/states.hpp"
#include "support.hpp"

using namespace biphoton;

namespace {

double max_diff(const DenseAmplitude& a, const DenseAmplitude& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i)
    worst = std::max(worst, std::abs(a.values()[i] - b.values()[i]));
  return worst;
}

SeparableKernelAmplitude random_kernel(std::mt19937_64& rng, const Grid& g) {
  const int n = g.size();
  auto random_matrix = [&] {
    Eigen::MatrixXcd m(n, n);
    std::normal_distribution<double> gauss;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
    return m;
  };
  return normalize(SeparableKernelAmplitude(g, Representation::kPosition, random_matrix(),
                                            random_matrix(), random_matrix(), random_matrix()));
}

}  // namespace

TEST_CASE("amplitude construction validates its terms") {
  const Grid g = make_grid(8, 4.0);
  const Grid other = make_grid(8, 5.0);
  CHECK_THROWS_AS(TwoPhotonAmplitude({}), std::invalid_argument);
  const auto f = oam_ring(1, 1.0, g);
  const auto h = oam_ring(1, 1.0, other);
  CHECK_THROWS_AS(TwoPhotonAmplitude({{1.0, f, h}}), std::invalid_argument);
  CHECK_THROWS_AS(normalize(TwoPhotonAmplitude({{0.0, f, f}})), std::invalid_argument);
}

TEST_CASE("product-sum algebra matches the dense oracle") {
  std::mt19937_64 rng(11);
  const Grid g = make_grid(8, 4.0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = testing::random_state(rng, g);
    const auto b = testing::random_state(rng, g);
    const auto da = to_dense(a);
    const auto db = to_dense(b);
    CHECK(std::abs(inner_product(a, b) - inner_product(da, db)) < 1e-12);
    CHECK(a.norm_squared() == doctest::Approx(da.norm_squared()).epsilon(1e-12));
    CHECK(max_diff(to_dense(apply_sigma(a)), da.sigma()) < 1e-14);
    CHECK(std::abs(sigma_overlap(a) - da.sigma_overlap()) < 1e-12);
    const auto sum = to_dense(a + b);
    for (std::size_t i = 0; i < sum.values().size(); ++i)
      CHECK(std::abs(sum.values()[i] - da.values()[i] - db.values()[i]) < 1e-12);
    CHECK(std::abs((a - a).norm_squared()) < 1e-12);
  }
}

TEST_CASE("swap and sigma differ by the reflections") {
  std::mt19937_64 rng(3);
  const Grid g = make_grid(8, 4.0);
  const auto a = testing::random_state(rng, g);
  const auto s = to_dense(swap_photons(a));
  const auto d = to_dense(a);
  const int n = 8;
  for (int i1 = 0; i1 < n; ++i1)
    for (int j1 = 0; j1 < n; ++j1)
      for (int i2 = 0; i2 < n; ++i2)
        for (int j2 = 0; j2 < n; ++j2) CHECK(std::abs(s(i1, j1, i2, j2) - d(i2, j2, i1, j1)) < 1e-14);
}

TEST_CASE("sigma overlap of a product state is |<f, Pi g>|^2") {
  std::mt19937_64 rng(5);
  const Grid g = make_grid(16, 6.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = testing::random_mode(rng, g);
    const auto h = testing::random_mode(rng, g);
    const double expect = std::norm(inner_product_2d(f, h.reflected_y()));
    CHECK(sigma_overlap(product_state(f, h)) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("sigma overlap requires a normalized amplitude") {
  const Grid g = make_grid(8, 4.0);
  const auto f = oam_ring(1, 1.0, g);
  CHECK_THROWS_AS(sigma_overlap(TwoPhotonAmplitude({{2.0, f, f}})), std::invalid_argument);
}

TEST_CASE("symmetry weights sum to one and match the projections") {
  std::mt19937_64 rng(17);
  const Grid g = make_grid(8, 4.0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = testing::random_state(rng, g);
    const auto w = symmetry_decompose(a);
    CHECK(w.symmetric + w.antisymmetric == doctest::Approx(1.0).epsilon(1e-14));
    const auto sym = (a + apply_sigma(a)).scaled(0.5);
    const auto anti = (a - apply_sigma(a)).scaled(0.5);
    CHECK(sym.norm_squared() == doctest::Approx(w.symmetric).epsilon(1e-10));
    CHECK(anti.norm_squared() == doctest::Approx(w.antisymmetric).epsilon(1e-10));
  }
}

TEST_CASE("recompression preserves the amplitude") {
  std::mt19937_64 rng(23);
  const Grid g = make_grid(8, 4.0);
  const auto a = testing::random_state(rng, g);
  const auto doubled = a + a + a.scaled(Complex(0.0, 1.0));
  const auto r = recompress(doubled);
  CHECK(r.rank() <= a.rank());
  CHECK(max_diff(to_dense(r), to_dense(doubled)) < 1e-12);
}

TEST_CASE("position representation keeps norm and sigma overlap") {
  std::mt19937_64 rng(29);
  const Grid g = make_grid(16, 6.0);
  const auto a = testing::random_state(rng, g);
  const auto x = position_representation(a);
  CHECK(x.representation() == Representation::kPosition);
  CHECK(x.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sigma_overlap(x) == doctest::Approx(sigma_overlap(a)).epsilon(1e-10));
  CHECK_THROWS_AS(position_representation(x), std::invalid_argument);
}

TEST_CASE("kernel amplitude agrees with its dense and product-sum forms") {
  std::mt19937_64 rng(31);
  const Grid g = make_grid(8, 4.0);
  for (int trial = 0; trial < 5; ++trial) {
    const auto k = random_kernel(rng, g);
    const auto d = to_dense(k);
    CHECK(k.norm_squared() == doctest::Approx(d.norm_squared()).epsilon(1e-12));
    CHECK(max_diff(to_dense(apply_sigma(k)), d.sigma()) < 1e-15);
    CHECK(sigma_overlap(k) == doctest::Approx(d.sigma_overlap().real()).epsilon(1e-10));
    const auto ps = to_product_sum(k);
    CHECK(ps.truncation_error < 1e-9);
    CHECK(max_diff(to_dense(ps.amplitude), d) < 1e-10);
    const auto other = random_kernel(rng, g);
    CHECK(std::abs(inner_product(k, other) - inner_product(d, to_dense(other))) < 1e-12);
  }
}

TEST_CASE("kernel expansion honours its rank limit") {
  std::mt19937_64 rng(37);
  const auto k = random_kernel(rng, make_grid(8, 4.0));
  CHECK_THROWS_AS(to_product_sum(k, {1e-12, 3}), TruncationError);
}

TEST_CASE("dense amplitudes are bounded in size") {
  const Grid g = make_grid(34, 4.0);
  const auto f = oam_ring(1, 1.0, g);
  CHECK_THROWS_AS(to_dense(product_state(f, f)), std::invalid_argument);
}

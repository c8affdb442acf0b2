#include <doctest.h>

#include <cmath>
#include <random>

#include "biphoton/interference.hpp"
#include "biphoton/states.hpp"
#include "support.hpp"

using namespace biphoton;

TEST_CASE("coincidence probability of the Bell states and products") {
  const Grid g = make_grid(64, 10.0);
  CHECK(coincidence_probability(bell_state(BellKind::kPsiMinus, 1, 1.0, g)) ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(coincidence_probability(bell_state(BellKind::kPhiPlus, 1, 1.0, g))) < 1e-6);
  CHECK(coincidence_probability(product_state(oam_ring(1, 1.0, g), oam_ring(1, 1.0, g))) ==
        doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("beamsplitter channels") {
  const Grid g = make_grid(32, 8.0);
  const auto psi = beamsplitter_output(bell_state(BellKind::kPsiMinus, 1, 1.0, g));
  CHECK(std::abs(psi.p_both_port1) < 1e-12);
  CHECK(std::abs(psi.p_both_port2) < 1e-12);
  CHECK(psi.p_coincidence == doctest::Approx(1.0).epsilon(1e-12));

  const auto opposite =
      beamsplitter_output(product_state(oam_ring(1, 1.0, g), oam_ring(-1, 1.0, g)), {0.3, -1.1});
  CHECK(opposite.p_both_port1 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(opposite.p_both_port2 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(opposite.p_coincidence) < 1e-12);
}

TEST_CASE("beamsplitter output is unitary and phase independent on random states") {
  std::mt19937_64 rng(41);
  const Grid g = make_grid(16, 6.0);
  std::uniform_real_distribution<double> angle(-3.2, 3.2);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = testing::random_state(rng, g);
    const auto ref = beamsplitter_output(a);
    CHECK(ref.p_both_port1 + ref.p_both_port2 + ref.p_coincidence ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(ref.p_coincidence == doctest::Approx(coincidence_probability(a)).epsilon(1e-12));
    CHECK(ref.p_both_port1 == doctest::Approx(ref.p_both_port2).epsilon(1e-12));
    const auto moved = beamsplitter_output(a, {angle(rng), angle(rng)});
    CHECK(std::abs(moved.p_both_port1 - ref.p_both_port1) < 1e-12);
    CHECK(std::abs(moved.p_coincidence - ref.p_coincidence) < 1e-12);
  }
}

TEST_CASE("P_c equals the antisymmetric weight") {
  std::mt19937_64 rng(43);
  const Grid g = make_grid(16, 6.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = testing::random_state(rng, g);
    CHECK(std::abs(coincidence_probability(a) - symmetry_decompose(a).antisymmetric) < 1e-12);
  }
}

TEST_CASE("witness") {
  const Grid g = make_grid(64, 10.0);
  CHECK(entanglement_witness(bell_state(BellKind::kPsiMinus, 1, 1.0, g)) ==
        WitnessVerdict::kEntangled);
  CHECK(entanglement_witness(bell_state(BellKind::kPhiPlus, 1, 1.0, g)) ==
        WitnessVerdict::kInconclusive);
  const auto same = product_state(oam_ring(2, 1.0, g), oam_ring(2, 1.0, g));
  CHECK(entanglement_witness(same) == WitnessVerdict::kInconclusive);
  CHECK_THROWS_AS(entanglement_witness(same, -1e-3), std::invalid_argument);
  CHECK(to_string(WitnessVerdict::kEntangled) == "entangled");
}

TEST_CASE("random products never exceed one half") {
  std::mt19937_64 rng(47);
  const Grid g = make_grid(16, 6.0);
  for (int trial = 0; trial < 500; ++trial) {
    const auto p = testing::random_product(rng, g);
    CHECK(coincidence_probability(p) <= 0.5 + 1e-9);
    CHECK(entanglement_witness(p) == WitnessVerdict::kInconclusive);
  }
}

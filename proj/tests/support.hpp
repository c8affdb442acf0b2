#pragma once

#include <random>
#include <vector>

#include "biphoton/amplitude.hpp"
#include "biphoton/states.hpp"

namespace biphoton::testing {

// Random superposition of low-order HG modes and OAM rings.
inline TransverseMode random_mode(std::mt19937_64& rng, const Grid& grid,
                                  Representation rep = Representation::kMomentum) {
  std::normal_distribution<double> gauss;
  std::uniform_int_distribution<int> order(0, 2);
  std::uniform_int_distribution<int> charge(-3, 3);
  std::uniform_int_distribution<int> count(1, 4);
  const double w0 = rep == Representation::kMomentum ? 1.0 : 0.25 * grid.half_width();
  ModeArray values = ModeArray::Zero(grid.size(), grid.size());
  const int terms = count(rng);
  for (int t = 0; t < terms; ++t) {
    const Complex c(gauss(rng), gauss(rng));
    if (t % 2 == 0) {
      values += c * hermite_gaussian(order(rng), order(rng), w0, grid, rep).values();
    } else {
      values += c * oam_ring(charge(rng), w0, grid, rep).values();
    }
  }
  return TransverseMode(grid, rep, values).normalized();
}

inline TwoPhotonAmplitude random_product(std::mt19937_64& rng, const Grid& grid,
                                         Representation rep = Representation::kMomentum) {
  return product_state(random_mode(rng, grid, rep), random_mode(rng, grid, rep));
}

// Random entangled state of rank 1..4.
inline TwoPhotonAmplitude random_state(std::mt19937_64& rng, const Grid& grid,
                                       Representation rep = Representation::kMomentum) {
  std::normal_distribution<double> gauss;
  std::uniform_int_distribution<int> rank(1, 4);
  std::vector<ProductTerm> terms;
  const int r = rank(rng);
  for (int i = 0; i < r; ++i) {
    terms.push_back({Complex(gauss(rng), gauss(rng)), random_mode(rng, grid, rep),
                     random_mode(rng, grid, rep)});
  }
  return normalize(TwoPhotonAmplitude(std::move(terms)));
}

}  // namespace biphoton::testing

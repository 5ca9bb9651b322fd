#pragma once

#include <complex>
#include <random>
#include <vector>

#include "hardylab/series.hpp"

namespace hardylab::testing {

inline std::mt19937_64 seeded_rng(std::uint64_t seed) {
  return std::mt19937_64(seed);
}

inline complex_t random_unit_coeff(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return {u(rng), u(rng)};
}

// Random series with coefficients in the unit box.
inline TaylorSeries random_series(std::mt19937_64& rng, int order) {
  std::vector<complex_t> c(order + 1);
  for (auto& x : c) x = random_unit_coeff(rng);
  return TaylorSeries(std::move(c));
}

inline double max_coeff_distance(const TaylorSeries& a, const TaylorSeries& b) {
  double d = 0.0;
  const int n = std::min(a.order(), b.order());
  for (int k = 0; k <= n; ++k) d = std::max(d, std::abs(a.coeff(k) - b.coeff(k)));
  return d;
}

}  // namespace hardylab::testing

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hardylab/checks.hpp"
#include "hardylab/jsonio.hpp"
#include "hardylab/measure.hpp"
#include "test_util.hpp"

using namespace hardylab;
using hardylab::testing::seeded_rng;

namespace {
const complex_t kI{0.0, 1.0};
}

TEST_CASE("measure validation and atom merging") {
  CHECK_THROWS_AS(DiscreteMeasure({}), InvalidMeasure);
  CHECK_THROWS_AS(DiscreteMeasure({{complex_t{1.0}, 0.5}}), InvalidMeasure);
  CHECK_THROWS_AS(DiscreteMeasure({{complex_t{0.5}, 1.0}}), InvalidMeasure);
  CHECK_THROWS_AS(DiscreteMeasure({{complex_t{1.0}, -0.5}, {kI, 1.5}}),
                  InvalidMeasure);

  // Atoms closer than 1e-12 in arc length merge.
  const DiscreteMeasure merged(
      {{complex_t{1.0}, 0.5}, {std::polar(1.0, 1e-13), 0.25}, {kI, 0.25}});
  CHECK(merged.atoms().size() == 2);
  CHECK(merged.mass_at(complex_t{1.0}) == doctest::Approx(0.75));
}

TEST_CASE("moments: point mass, symmetric pair, sector parameter") {
  const DiscreteMeasure delta1({{complex_t{1.0}, 1.0}});
  CHECK(std::abs(moment(delta1, 1) - 1.0) < 1e-15);

  const DiscreteMeasure sym({{complex_t{1.0}, 0.5}, {complex_t{-1.0}, 0.5}});
  CHECK(std::abs(moment(sym, 1)) < 1e-15);

  const double t = 0.8;
  const DiscreteMeasure two({{complex_t{1.0}, t}, {complex_t{-1.0}, 1.0 - t}});
  CHECK(moment(two, 1).real() == doctest::Approx(2.0 * t - 1.0));
}

TEST_CASE("Caratheodory series: half-plane kernel, symmetric pair, bound") {
  const DiscreteMeasure delta1({{complex_t{1.0}, 1.0}});
  const TaylorSeries h = caratheodory_series(delta1, 16);
  CHECK(h.coeff(0) == complex_t{1.0});
  for (int n = 1; n <= 16; ++n) CHECK(std::abs(h.coeff(n) - 2.0) < 1e-14);

  // (1 + z^2)/(1 - z^2): even coefficients 2, odd 0.
  const DiscreteMeasure sym({{complex_t{1.0}, 0.5}, {complex_t{-1.0}, 0.5}});
  const TaylorSeries hs = caratheodory_series(sym, 16);
  for (int n = 1; n <= 16; ++n) {
    const double expect = (n % 2 == 0) ? 2.0 : 0.0;
    CHECK(std::abs(hs.coeff(n) - expect) < 1e-14);
  }

  auto rng = seeded_rng(21);
  for (int rep = 0; rep < 20; ++rep) {
    const DiscreteMeasure mu = random_measure(rng);
    const TaylorSeries hr = caratheodory_series(mu, 64);
    for (int n = 1; n <= 64; ++n) {
      CHECK(std::abs(hr.coeff(n)) <= 2.0 + 1e-14);
    }
    // Closed-form evaluator agrees with the series inside the disk.
    const PointEvaluator ev = caratheodory_evaluator(mu);
    const complex_t z{0.3, -0.4};
    CHECK(std::abs(ev.eval(z) - eval(hr, z)) < 1e-12);
  }
}

TEST_CASE("boundary rotation: full circle, point mass, quarter atom") {
  const DiscreteMeasure delta1({{complex_t{1.0}, 1.0}});
  CHECK(boundary_rotation(delta1, 0.0, 2.0 * std::numbers::pi) ==
        doctest::Approx(2.0 * std::numbers::pi));
  CHECK(boundary_rotation(delta1, -0.1, 0.1) ==
        doctest::Approx(2.0 * std::numbers::pi));

  const DiscreteMeasure mix({{complex_t{1.0}, 0.75}, {kI, 0.25}});
  CHECK(boundary_rotation(mix, 1.0, 2.0) ==
        doctest::Approx(0.5 * std::numbers::pi));
}

TEST_CASE("boundary rotation sums to 2 pi over a partition") {
  auto rng = seeded_rng(22);
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  for (int rep = 0; rep < 20; ++rep) {
    const DiscreteMeasure mu = random_measure(rng);
    std::vector<double> cuts{u(rng), u(rng), u(rng), u(rng)};
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (size_t i = 0; i < cuts.size(); ++i) {
      const double a = cuts[i];
      const double b = cuts[(i + 1) % cuts.size()];
      total += boundary_rotation(
          mu, a, i + 1 == cuts.size() ? b + 2.0 * std::numbers::pi : b);
    }
    CHECK(total == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-14));
  }
}

TEST_CASE("angle at infinity from the pole mass") {
  const DiscreteMeasure full({{complex_t{1.0}, 1.0}});
  CHECK(angle_at_infinity_measure(full, complex_t{1.0}) ==
        doctest::Approx(std::numbers::pi));

  const DiscreteMeasure strip({{complex_t{1.0}, 0.5}, {complex_t{-1.0}, 0.5}});
  CHECK(angle_at_infinity_measure(strip, complex_t{1.0}) ==
        doctest::Approx(0.0));

  const DiscreteMeasure mix({{complex_t{1.0}, 0.75}, {complex_t{-1.0}, 0.25}});
  CHECK(angle_at_infinity_measure(mix, complex_t{1.0}) ==
        doctest::Approx(0.5 * std::numbers::pi));

  CHECK_THROWS_AS(angle_at_infinity_measure(mix, complex_t{-1.0}), NoPoleMass);
}

TEST_CASE("appendix theorem check: conforming, vacuous, violating") {
  const DiscreteMeasure antipodal(
      {{complex_t{1.0}, 0.5}, {complex_t{-1.0}, 0.5}});
  CHECK(appendix_theorem_check(antipodal).conforms);

  // Nonzero first moment: hypothesis not met, vacuously conforming.
  const DiscreteMeasure skew({{complex_t{1.0}, 0.75}, {complex_t{-1.0}, 0.25}});
  CHECK(appendix_theorem_check(skew).conforms);

  // Even a grossly loosened tolerance cannot manufacture a violation: the
  // moment identity bounds the off-antipodal spread by 1.5 tol whenever the
  // hypothesis holds, which is the theorem itself.
  const DiscreteMeasure spread({{complex_t{1.0}, 0.5}, {kI, 0.25}, {-kI, 0.25}});
  CHECK(appendix_theorem_check(spread, 0.6).conforms);
  CHECK(appendix_theorem_check(spread).conforms);  // vacuous at tight tol
}

TEST_CASE("measures round-trip through the JSON atom list") {
  auto rng = seeded_rng(23);
  for (int rep = 0; rep < 10; ++rep) {
    const DiscreteMeasure mu = random_measure(rng);
    const DiscreteMeasure back = measure_from_json(to_json(mu));
    REQUIRE(back.atoms().size() == mu.atoms().size());
    for (size_t i = 0; i < mu.atoms().size(); ++i) {
      CHECK(std::abs(back.atoms()[i].position - mu.atoms()[i].position) <
            1e-15);
      CHECK(back.atoms()[i].weight == mu.atoms()[i].weight);
    }
  }
}

TEST_CASE("randomized search cannot break the two-atom conclusion") {
  const AppendixSearchOutcome out = appendix_random_search(7, 20000);
  CHECK(out.attempted == 20000);
  CHECK(out.hypothesis_met > 100);  // the generator does reach the hypothesis
  CHECK(out.violations == 0);
}

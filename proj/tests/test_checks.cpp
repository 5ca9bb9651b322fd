#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hardylab/checks.hpp"
#include "hardylab/jsonio.hpp"
#include "hardylab/means.hpp"
#include "test_util.hpp"

using namespace hardylab;
using hardylab::testing::seeded_rng;

TEST_CASE("gamma function: integers, half-integers, reflection") {
  CHECK(gamma_function(1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(gamma_function(1.5) ==
        doctest::Approx(0.5 * std::sqrt(std::numbers::pi)).epsilon(1e-11));
  CHECK(gamma_function(0.5) ==
        doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-11));
  double fact = 1.0;
  for (int n = 1; n <= 10; ++n) {
    fact *= n;
    CHECK(gamma_function(n + 1.0) == doctest::Approx(fact).epsilon(1e-11));
  }
  CHECK_THROWS_AS(gamma_function(0.0), CheckError);
}

TEST_CASE("Hayman constants and the dilation limit of the Koebe map") {
  const HaymanConstants h2 = hayman_gamma(2.0);
  CHECK(h2.lambda == doctest::Approx(0.5));
  CHECK(h2.gamma == doctest::Approx(1.0));

  const HaymanConstants h1 = hayman_gamma(1.0);
  CHECK(h1.lambda == doctest::Approx(1.0));
  CHECK(h1.gamma == doctest::Approx(4.0 * std::exp(-2.0)));

  // lambda = 1/(2 - sqrt(2-alpha)) decreases from 1/(2-sqrt(2)) to 1/2.
  double prev = hayman_gamma(0.0).lambda;
  CHECK(prev == doctest::Approx(1.0 / (2.0 - std::sqrt(2.0))));
  for (double a = 0.1; a <= 2.0; a += 0.1) {
    const double cur = hayman_gamma(a).lambda;
    CHECK(cur <= prev);
    prev = cur;
  }

  // Cross-check gamma(alpha=2) against (1-r)^2 M_inf(r, k) near r = 1.
  const ZooFunction k = make_koebe_dilated(1.0, 16);
  const double r = 1.0 - std::pow(0.5, 10);
  const double lim = (1.0 - r) * (1.0 - r) * max_modulus(k.value, r, 4096);
  CHECK(std::abs(lim - hayman_gamma(2.0).gamma) < 0.01);
}

TEST_CASE("a3 bounds: sector equality, random strictness, polylog") {
  for (const double a : {0.0, 0.5, 1.0}) {
    const CheckResult r = check_a3_bounds(make_sector(a, 16));
    CHECK(r.passed);
    CHECK(std::abs(r.margin) < 1e-8);  // equality case
    CHECK(r.params.at("equality_case") == 1.0);
  }

  auto rng = seeded_rng(61);
  for (int rep = 0; rep < 10; ++rep) {
    const ZooFunction f = make_convex_from_measure(random_measure(rng, 3, 5), 16);
    const CheckResult r = check_a3_bounds(f);
    CHECK(r.passed);
    CHECK(r.params.at("equality_case") == 0.0);
  }

  // polylog(1): a2 = 1/2, a3 = 1/3 <= (1 + 2/4)/3 = 1/2.
  const CheckResult pl = check_a3_bounds(make_polylog(1.0, 16));
  CHECK(pl.passed);
  CHECK(pl.margin > 0.1);
}

TEST_CASE("coefficient bound: half-plane equality, strip headroom") {
  const CheckResult hp = check_coeff_bound(make_half_plane(512), 128);
  CHECK(hp.passed);
  CHECK(std::abs(hp.margin) < 1e-8);

  // s_0: bound exp(-1/2) ~ 0.6065 against max_n |a_n| = 1/3 for n >= 2.
  const CheckResult s0 = check_coeff_bound(make_sector(0.0, 512), 128);
  CHECK(s0.passed);
  CHECK(s0.params.at("coeff_margin") ==
        doctest::Approx(1.0 - (1.0 / 3.0) / std::exp(-0.5)).epsilon(1e-6));
  CHECK(s0.margin > 0.0);

  const CheckResult pl = check_coeff_bound(make_polylog(0.5, 512), 256);
  CHECK(pl.passed);
}

TEST_CASE("coefficient asymptotics: sector limit, half-plane, strip") {
  const CheckResult sh = check_coeff_asymptotics(make_sector(0.5, 2000), 2000);
  CHECK(sh.passed);
  CHECK(sh.params.at("limit_target") ==
        doctest::Approx(std::sqrt(2.0 / std::numbers::pi)).epsilon(1e-9));

  // s_1 has a_n = 1 = n^0 exactly.
  const CheckResult s1 = check_coeff_asymptotics(make_sector(1.0, 400), 400);
  CHECK(s1.passed);
  CHECK(s1.params.at("limit_ratio") == doctest::Approx(1.0).epsilon(1e-12));

  // s_0: n a_n does not tend to zero (odd subsequence equals 1).
  const ZooFunction s0 = make_sector(0.0, 801);
  CHECK(std::abs(801.0 * s0.series.coeff(801).real() - 1.0) < 1e-12);
  const CheckResult r0 = check_coeff_asymptotics(s0, 801);
  CHECK(r0.params.at("sup_ratio") >= 1.0);
}

TEST_CASE("Gronwall sandwich: sector equality and random maps") {
  for (const double a : {0.25, 0.75}) {
    auto [growth, distortion] = check_gronwall(make_sector(a, 896));
    CHECK(growth.passed);
    CHECK(distortion.passed);
    CHECK(std::abs(growth.margin) < 1e-8);
    CHECK(std::abs(distortion.margin) < 1e-8);
  }
  auto rng = seeded_rng(62);
  for (int rep = 0; rep < 5; ++rep) {
    const ZooFunction f = make_convex_from_measure(random_measure(rng), 896);
    auto [growth, distortion] = check_gronwall(f);
    CHECK(growth.passed);
    CHECK(distortion.passed);
  }
}

TEST_CASE("distortion bound at a2 = 0: strip equality and rotated strip") {
  const CheckResult s0 = check_distortion_a2zero(make_sector(0.0, 896));
  CHECK(s0.passed);
  CHECK(s0.params.at("gamma") == doctest::Approx(1.0));

  const DiscreteMeasure rotated = DiscreteMeasure::from_args_over_pi(
      {{0.5, 0.5}, {-0.5, 0.5}});
  const CheckResult rs =
      check_distortion_a2zero(make_convex_from_measure(rotated, 896));
  CHECK(rs.passed);

  // Four symmetric atoms: a2 = a3 = 0, gamma = 0, large margin.
  const DiscreteMeasure four = DiscreteMeasure::from_args_over_pi(
      {{0.0, 0.25}, {0.5, 0.25}, {1.0, 0.25}, {-0.5, 0.25}});
  const CheckResult fr =
      check_distortion_a2zero(make_convex_from_measure(four, 896));
  CHECK(fr.passed);
  CHECK(fr.params.at("gamma") < 1e-10);

  CHECK_THROWS_AS(check_distortion_a2zero(make_sector(0.5, 64)), NotZeroA2);
}

TEST_CASE("pre-Schwarzian bound on convex maps") {
  auto rng = seeded_rng(63);
  for (int rep = 0; rep < 10; ++rep) {
    const ZooFunction f = make_convex_from_measure(random_measure(rng), 64);
    const CheckResult r = check_pre_schwarzian_bound(f);
    CHECK(r.passed);
  }
  // Half-plane: the bound 2(1 + |a2|) = 4 is attained in the limit.
  const CheckResult hp = check_pre_schwarzian_bound(make_half_plane(64));
  CHECK(hp.passed);
}

TEST_CASE("convex suite on a small seeded batch") {
  const std::vector<CheckResult> results = run_convex_suite(7, 4);
  CHECK(results.size() == 20);  // 5 checks per map
  for (const CheckResult& r : results) {
    CHECK(r.passed);
  }
  // Determinism: the same seed reproduces identical margins.
  const std::vector<CheckResult> again = run_convex_suite(7, 4);
  for (size_t i = 0; i < results.size(); ++i) {
    CHECK(results[i].margin == again[i].margin);
    CHECK(results[i].check_id == again[i].check_id);
  }
}

TEST_CASE("random measure generator is seed-deterministic") {
  auto rng1 = seeded_rng(99);
  auto rng2 = seeded_rng(99);
  for (int rep = 0; rep < 5; ++rep) {
    const DiscreteMeasure m1 = random_measure(rng1);
    const DiscreteMeasure m2 = random_measure(rng2);
    REQUIRE(m1.atoms().size() == m2.atoms().size());
    for (size_t i = 0; i < m1.atoms().size(); ++i) {
      CHECK(m1.atoms()[i].position == m2.atoms()[i].position);
      CHECK(m1.atoms()[i].weight == m2.atoms()[i].weight);
    }
  }
}

TEST_CASE("check results serialize with the invariant passed <=> margin >= -tol") {
  const CheckResult r = check_a3_bounds(make_sector(0.5, 16));
  const json j = to_json(r);
  CHECK(j.at("check_id").get<std::string>() == "a3_bounds");
  CHECK(j.at("passed").get<bool>() == (r.margin >= -r.tol));
  CHECK(j.at("function_spec").at("family").get<std::string>() == "sector");
}

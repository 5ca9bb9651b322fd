#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hardylab/checks.hpp"
#include "hardylab/jsonio.hpp"
#include "hardylab/means.hpp"
#include "hardylab/zoo.hpp"
#include "test_util.hpp"

using namespace hardylab;

namespace {

PointEvaluator closed(std::function<complex_t(complex_t)> f) {
  return PointEvaluator{std::move(f), PointEvaluator::Kind::closed_form};
}

const PointEvaluator kIdentity = closed([](complex_t z) { return z; });

}  // namespace

TEST_CASE("integral means: constants, identity, refined-quadrature oracle") {
  const PointEvaluator c3 = closed([](complex_t) { return complex_t{3.0, 4.0}; });
  for (const double p : {0.5, 1.0, 2.0}) {
    CHECK(integral_means(c3, p, 0.5, 256) == doctest::Approx(5.0).epsilon(1e-12));
  }

  for (const double r : {0.2, 0.7, 0.95}) {
    CHECK(integral_means(kIdentity, 0.7, r, 256) ==
          doctest::Approx(r).epsilon(1e-12));
  }

  // (1-z)^{-2} at p = 1, r = 0.9 against a 10^6-point quadrature.
  const PointEvaluator f = closed([](complex_t z) {
    const complex_t d = 1.0 - z;
    return 1.0 / (d * d);
  });
  const double coarse = integral_means(f, 1.0, 0.9, 2048);
  const double oracle = integral_means(f, 1.0, 0.9, 1000000);
  CHECK(std::abs(coarse / oracle - 1.0) < 1e-8);
}

TEST_CASE("integral means: argument validation and non-finite samples") {
  CHECK_THROWS_AS(integral_means(kIdentity, 0.0, 0.5, 256), MeansError);
  CHECK_THROWS_AS(integral_means(kIdentity, 1.0, 1.0, 256), MeansError);
  CHECK_THROWS_AS(integral_means(kIdentity, 1.0, 0.5, 32), MeansError);
  const PointEvaluator bad = closed([](complex_t z) {
    return z.real() > 0.49 ? complex_t{std::nan(""), 0.0} : z;
  });
  CHECK_THROWS_AS(integral_means(bad, 1.0, 0.5, 256), NonFiniteSample);
}

TEST_CASE("max modulus: identity, Koebe closed form, sector boundary") {
  CHECK(max_modulus(kIdentity, 0.8, 512) == doctest::Approx(0.8));

  const ZooFunction k = make_koebe_dilated(1.0, 16);
  for (const double r : {0.3, 0.6, 0.9}) {
    CHECK(max_modulus(k.value, r, 4096) ==
          doctest::Approx(r / ((1.0 - r) * (1.0 - r))).epsilon(1e-10));
  }

  const ZooFunction s = make_sector(0.5, 16);
  for (const double r : {0.5, 0.9}) {
    const double expect = s.value.eval(complex_t{r, 0.0}).real();
    CHECK(max_modulus(s.value, r, 4096) == doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("blow-up exponent: pole orders and bounded cases") {
  const std::vector<double> ladder = default_radius_ladder();

  const PointEvaluator pole2 = closed([](complex_t z) {
    const complex_t d = 1.0 - z;
    return 1.0 / (d * d);
  });
  const double g2 = blowup_exponent(pole2, 1.0, ladder).gamma;
  CHECK(std::abs(g2 - 1.0) < 0.05);

  const PointEvaluator pole1 = closed([](complex_t z) { return 1.0 / (1.0 - z); });
  CHECK(std::abs(blowup_exponent(pole1, 0.5, ladder).gamma) < 0.05);

  const PointEvaluator bounded =
      closed([](complex_t z) { return 1.0 + 0.5 * z + 0.25 * z * z; });
  CHECK(std::abs(blowup_exponent(bounded, 1.0, ladder).gamma) < 0.01);

  const std::vector<double> single{0.5};
  CHECK_THROWS_AS(blowup_exponent(pole2, 1.0, single),
                  RegressionIllConditioned);
}

TEST_CASE("blow-up exponent tracks p*a - 1 in the blow-up regime") {
  const std::vector<double> ladder = default_radius_ladder();
  for (const double a : {1.0, 2.0, 3.0}) {
    const PointEvaluator f =
        closed([a](complex_t z) { return std::pow(1.0 - z, -a); });
    for (const double pa : {1.2, 1.5, 2.0}) {
      const double p = pa / a;
      const double gamma = blowup_exponent(f, p, ladder).gamma;
      CHECK(std::abs(gamma - (pa - 1.0)) < 0.05 * pa);
    }
  }
}

TEST_CASE("critical Hardy exponent: sector derivative, Koebe, slit example") {
  const std::vector<double> ladder = default_radius_ladder();

  const ZooFunction s = make_sector(0.5, 16);
  const ExponentEstimate es =
      hardy_critical_exponent(s.deriv, 1.0 / 3.0, 4.0 / 3.0, ladder);
  CHECK(std::abs(es.p_star / (2.0 / 3.0) - 1.0) < 0.05);
  CHECK(es.bracket.first <= es.p_star);
  CHECK(es.p_star <= es.bracket.second);
  CHECK(es.gamma >= -1e-6);

  const ZooFunction k = make_koebe_dilated(1.0, 16);
  const ExponentEstimate ek =
      hardy_critical_exponent(k.deriv, 1.0 / 6.0, 2.0 / 3.0, ladder);
  CHECK(std::abs(ek.p_star / (1.0 / 3.0) - 1.0) < 0.05);

  const ZooFunction rex = make_r_example(16);
  const ExponentEstimate er =
      hardy_critical_exponent(rex.deriv, 0.25, 1.0, ladder);
  CHECK(std::abs(er.p_star / 0.5 - 1.0) < 0.05);

  // A bounded function has no crossing in any bracket.
  const PointEvaluator bounded = closed([](complex_t z) { return z; });
  CHECK_THROWS_AS(hardy_critical_exponent(bounded, 0.5, 2.0, ladder), NoBracket);
}

TEST_CASE("critical exponent tracks random pole orders") {
  // Generator-driven property: for f = (1-z)^(-a) the critical exponent of
  // the means is 1/a; the estimator must land within 5% for random a.
  auto rng = hardylab::testing::seeded_rng(42);
  std::uniform_real_distribution<double> ua(1.2, 3.5);
  const std::vector<double> ladder = default_radius_ladder();
  for (int rep = 0; rep < 6; ++rep) {
    const double a = ua(rng);
    const PointEvaluator f =
        closed([a](complex_t z) { return std::pow(1.0 - z, -a); });
    const double pred = 1.0 / a;
    const ExponentEstimate est =
        hardy_critical_exponent(f, 0.5 * pred, 2.0 * pred, ladder);
    CHECK(std::abs(est.p_star / pred - 1.0) < 0.05);
  }
}

TEST_CASE("critical exponent is stable under a shallower ladder") {
  std::vector<double> shallow;
  for (int k = 3; k <= 11; ++k) shallow.push_back(1.0 - std::pow(0.5, k));
  const ZooFunction k1 = make_koebe_dilated(1.0, 16);
  const ExponentEstimate est =
      hardy_critical_exponent(k1.deriv, 1.0 / 6.0, 2.0 / 3.0, shallow);
  CHECK(std::abs(est.p_star / (1.0 / 3.0) - 1.0) < 0.05);

  const ZooFunction s = make_sector(0.5, 16);
  const ExponentEstimate es =
      hardy_critical_exponent(s.deriv, 1.0 / 3.0, 4.0 / 3.0, shallow);
  CHECK(std::abs(es.p_star / (2.0 / 3.0) - 1.0) < 0.05);
}

TEST_CASE("Prawitz bound: identity equality, Koebe, half-sector") {
  const PrawitzCheck id = prawitz_check(kIdentity, 0.7, 0.8, 1024);
  CHECK(id.holds);
  CHECK(id.lhs == doctest::Approx(std::pow(0.8, 0.7)).epsilon(1e-9));
  CHECK(id.rhs == doctest::Approx(std::pow(0.8, 0.7)).epsilon(1e-6));

  const ZooFunction k = make_koebe_dilated(1.0, 16);
  CHECK(prawitz_check(k.value, 0.4, 0.9, 1024).holds);

  const ZooFunction s = make_sector(0.5, 16);
  CHECK(prawitz_check(s.value, 0.6, 0.95, 1024).holds);
}

TEST_CASE("smoothness rate: sector cases, bounded case, strip at p = 2") {
  const std::vector<double> ladder = default_radius_ladder();

  const ZooFunction s0 = make_sector(0.0, 16);
  CHECK(std::abs(hl_smoothness_rate(s0.deriv, 1.0, ladder) - 1.0) < 0.05);
  CHECK(std::abs(hl_smoothness_rate(s0.deriv, 2.0, ladder) - 0.5) < 0.05);

  const ZooFunction sh = make_sector(0.5, 16);
  CHECK(std::abs(hl_smoothness_rate(sh.deriv, 1.0, ladder) - 0.5) < 0.05);

  const PointEvaluator poly_deriv =
      closed([](complex_t z) { return 1.0 + 0.4 * z + 0.09 * z * z; });
  CHECK(std::abs(hl_smoothness_rate(poly_deriv, 1.0, ladder) - 1.0) < 0.02);

  CHECK_THROWS_AS(hl_smoothness_rate(s0.deriv, 0.5, ladder), MeansError);
}

TEST_CASE("means profile: Hardy convexity checked, metadata carried") {
  const ZooFunction k = make_koebe_dilated(1.0, 16);
  const std::vector<double> radii{0.3, 0.5, 0.7, 0.9};
  const MeansProfile prof = means_profile(k.value, 1.0, radii);
  CHECK(prof.values.size() == 4);
  CHECK(prof.evaluator_kind == PointEvaluator::Kind::closed_form);
  for (size_t i = 1; i < prof.values.size(); ++i) {
    CHECK(prof.values[i] >= prof.values[i - 1]);
  }
  CHECK(prof.n_theta[0] == 2048);

  const json j = to_json(prof);
  CHECK(j.at("p").get<double>() == 1.0);
  CHECK(j.at("evaluator_kind").get<std::string>() == "closed_form");
  CHECK(j.at("values").size() == 4);
  const std::string csv = to_csv(prof);
  CHECK(csv.rfind("p,r,n_theta,M_p\n", 0) == 0);
}

TEST_CASE("quadrature convergence: doubling n_theta moves M_p by < 1e-6") {
  const std::vector<ZooFunction> zoo = {make_koebe_dilated(1.0, 16),
                                        make_sector(0.5, 16),
                                        make_r_example(16)};
  for (const ZooFunction& f : zoo) {
    for (const double p : {0.5, 1.0}) {
      for (const double r : {0.9, 0.99}) {
        const int n = ladder_n_theta(r);
        const double m1 = integral_means(f.value, p, r, n);
        const double m2 = integral_means(f.value, p, r, 2 * n);
        CHECK(std::abs(m1 / m2 - 1.0) < 1e-6);
      }
    }
  }
}

TEST_CASE("Baernstein domination by the Koebe means") {
  auto rng = hardylab::testing::seeded_rng(41);
  const ZooFunction koebe = make_koebe_dilated(1.0, 256);
  std::vector<ZooFunction> zoo;
  zoo.push_back(make_sector(0.0, 256));
  zoo.push_back(make_sector(0.5, 256));
  zoo.push_back(make_sector(1.0, 256));
  zoo.push_back(make_strip(0.3, 256));
  zoo.push_back(make_starlike_extremal(1.0, 256));
  zoo.push_back(make_ctc_extremal(0.5, 256));
  zoo.push_back(make_r_example(256));
  zoo.push_back(make_convex_from_measure(random_measure(rng), 256));
  zoo.push_back(
      make_lpr_composition(0.3, 0.2, LacunarySequence::geometric(4, 128), 256));
  zoo.push_back(make_sqrt_transform(make_koebe_dilated(1.0, 256), 256));
  for (const ZooFunction& f : zoo) {
    for (const double p : {0.5, 1.0}) {
      for (const double r : {0.5, 0.9}) {
        const int n = ladder_n_theta(r);
        const double mf = integral_means(f.value, p, r, n);
        const double mk = integral_means(koebe.value, p, r, n);
        CHECK(mf <= mk * (1.0 + 1e-6));
      }
    }
  }
}

TEST_CASE("means are byte-identical across thread budgets") {
  const ZooFunction k = make_koebe_dilated(1.0, 16);
  const double r = 1.0 - std::pow(0.5, 11);
  setenv("HARDYLAB_THREADS", "1", 1);
  const double serial = integral_means(k.value, 0.7, r, ladder_n_theta(r));
  setenv("HARDYLAB_THREADS", "4", 1);
  const double parallel = integral_means(k.value, 0.7, r, ladder_n_theta(r));
  unsetenv("HARDYLAB_THREADS");
  CHECK(serial == parallel);  // fixed-order chunked reduction
}

TEST_CASE("radial trace emits finite data with oscillation counters") {
  const ZooFunction phip =
      make_lpr_phi_prime(LacunarySequence::geometric(4, 256), 256);
  std::vector<double> radii;
  for (int k = 3; k <= 10; ++k) radii.push_back(1.0 - std::pow(0.5, k));
  const RadialTrace tr = radial_trace(phip.value, 0.7, radii);
  CHECK(tr.abs_values.size() == radii.size());
  for (double v : tr.abs_values) CHECK(std::isfinite(v));
  CHECK(tr.log_range >= 0.0);
  CHECK(tr.local_extrema >= 0);
}

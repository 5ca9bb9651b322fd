#include "hardylab/checks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hardylab {

namespace {

std::string format_param(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

// f/z for a normalized series (constant term dropped).
TaylorSeries shift_down(const TaylorSeries& s) {
  std::vector<complex_t> c(std::max(s.order(), 1));
  for (int k = 1; k <= s.order(); ++k) c[k - 1] = s.coeff(k);
  return TaylorSeries(std::move(c));
}

TaylorSeries shift_up(const TaylorSeries& s, int order) {
  std::vector<complex_t> c(order + 1, complex_t{});
  for (int k = 0; k < order; ++k) c[k + 1] = s.coeff(k);
  return TaylorSeries(std::move(c));
}

double relative_margin(double bound, double value) {
  return (bound - value) / std::max(std::abs(bound), 1e-30);
}

}  // namespace

CheckResult make_check_result(std::string check_id, const FunctionSpec& spec,
                              std::map<std::string, double> params,
                              double margin, double tol, long samples) {
  CheckResult r;
  r.check_id = std::move(check_id);
  r.function_spec = spec;
  r.params = std::move(params);
  r.margin = margin;
  r.tol = tol;
  r.passed = margin >= -tol;
  r.samples = samples;
  return r;
}

std::vector<complex_t> canonical_grid() {
  std::vector<complex_t> g;
  g.reserve(24 * 256);
  for (int i = 1; i <= 24; ++i) {
    const double r = i / 25.0;
    for (int j = 0; j < 256; ++j) {
      g.push_back(std::polar(r, 2.0 * std::numbers::pi * j / 256.0));
    }
  }
  return g;
}

double sector_bound(double alpha, double r) {
  if (alpha == 0.0) return 0.5 * std::log((1.0 + r) / (1.0 - r));
  return (std::pow((1.0 + r) / (1.0 - r), alpha) - 1.0) / (2.0 * alpha);
}

double sector_deriv_bound(double alpha, double r) {
  return std::pow(1.0 - r, -(1.0 + alpha)) * std::pow(1.0 + r, -(1.0 - alpha));
}

double strip_bound(double alpha, double r) {
  const double s = std::sqrt(std::max(0.0, 1.0 - alpha * alpha));
  if (s < 1e-9) return r / (1.0 + alpha * r);
  return std::atan2(r * s, 1.0 + alpha * r) / s;
}

double strip_deriv_bound(double alpha, double r) {
  return 1.0 / (1.0 + 2.0 * alpha * r + r * r);
}

std::pair<CheckResult, CheckResult> check_gronwall(const ZooFunction& f) {
  const double alpha = std::abs(f.a2());
  const TaylorSeries fp = derivative(f.series);
  const std::vector<complex_t> grid = canonical_grid();
  double growth_margin = 1e300, distortion_margin = 1e300;
  for (const complex_t& z : grid) {
    const double r = std::abs(z);
    const double av = std::abs(eval(f.series, z));
    const double ad = std::abs(eval(fp, z));
    growth_margin = std::min(
        {growth_margin, relative_margin(sector_bound(alpha, r), av),
         relative_margin(av, strip_bound(alpha, r))});
    distortion_margin = std::min(
        {distortion_margin, relative_margin(sector_deriv_bound(alpha, r), ad),
         relative_margin(ad, strip_deriv_bound(alpha, r))});
  }
  std::map<std::string, double> params{{"alpha", alpha}};
  return {make_check_result("gronwall_growth", f.spec, params, growth_margin,
                            1e-9, static_cast<long>(grid.size())),
          make_check_result("gronwall_distortion", f.spec, params,
                            distortion_margin, 1e-9,
                            static_cast<long>(grid.size()))};
}

CheckResult check_coeff_bound(const ZooFunction& f, int order) {
  const int n_max = std::min(order, f.series.order());
  const double alpha = std::abs(f.a2());
  const double bound = std::exp(0.5 * (alpha * alpha - 1.0));

  double coeff_margin = 1e300;
  for (int n = 2; n <= n_max; ++n) {
    coeff_margin =
        std::min(coeff_margin, relative_margin(bound, std::abs(f.series.coeff(n))));
  }

  // Marx-Strohhaecker: Re(z f'/f) > 1/2 on the grid.
  double marx_margin = 1e300;
  const TaylorSeries w = div(derivative(f.series), shift_down(f.series));
  const std::vector<complex_t> grid = canonical_grid();
  for (const complex_t& z : grid) {
    marx_margin = std::min(marx_margin, eval(w, z).real() - 0.5);
  }

  // Lebedev-Milin chain with c_k from h = 2 z f'/f - 1.
  double lm_margin = 1e300;
  const TaylorSeries h = sub(scale(w, 2.0), TaylorSeries::constant(1.0, w.order()));
  double lm_sum = 0.0;
  for (int n = 1; n < n_max; ++n) {
    const double cn2 = std::norm(h.coeff(n));
    lm_sum += (cn2 - 4.0) / (4.0 * n);
    const double rhs = std::exp(lm_sum);
    const double lhs = std::norm(f.series.coeff(n + 1));
    lm_margin = std::min(lm_margin, relative_margin(rhs, lhs));
  }

  return make_check_result(
      "coeff_bound", f.spec,
      {{"alpha", alpha},
       {"bound", bound},
       {"n_max", double(n_max)},
       {"coeff_margin", coeff_margin},
       {"marx_margin", marx_margin},
       {"lm_margin", lm_margin}},
      std::min({coeff_margin, marx_margin, lm_margin}), 1e-9,
      static_cast<long>(grid.size()) + n_max);
}

CheckResult check_coeff_asymptotics(const ZooFunction& f, int n_max) {
  const int n_hi = std::min(n_max, f.series.order());
  const double alpha = std::abs(f.a2());
  double sup_ratio = 0.0;
  for (int n = 2; n <= n_hi; ++n) {
    sup_ratio = std::max(sup_ratio, std::pow(n, 1.0 - alpha) *
                                        std::abs(f.series.coeff(n)));
  }
  std::map<std::string, double> params{{"alpha", alpha},
                                       {"sup_ratio", sup_ratio},
                                       {"n_max", double(n_hi)}};
  double margin = std::isfinite(sup_ratio) ? 1.0 : -1.0;
  if (f.spec.family == Family::sector && alpha > 0.0) {
    const double target =
        std::pow(2.0, alpha - 1.0) / gamma_function(alpha + 1.0);
    const double ratio =
        std::pow(n_hi, 1.0 - alpha) * std::abs(f.series.coeff(n_hi));
    params["limit_target"] = target;
    params["limit_ratio"] = ratio;
    margin = 0.02 - std::abs(ratio / target - 1.0);
  }
  return make_check_result("coeff_asymptotics", f.spec, std::move(params),
                           margin, 0.0, n_hi);
}

CheckResult check_a3_bounds(const ZooFunction& f) {
  const complex_t a2 = f.a2(), a3 = f.a3();
  const double alpha = std::abs(a2);
  const double b1 = (1.0 + 2.0 * alpha * alpha) / 3.0;
  const double b2 = (1.0 - alpha * alpha) / 3.0;
  const double margin =
      std::min(relative_margin(b1, std::abs(a3)),
               (b2 - std::abs(a3 - a2 * a2)) / std::max(b2, 1e-12));
  const bool equality_family = f.spec.family == Family::sector ||
                               f.spec.family == Family::half_plane;
  return make_check_result("a3_bounds", f.spec,
                           {{"alpha", alpha},
                            {"abs_a3", std::abs(a3)},
                            {"equality_case", equality_family ? 1.0 : 0.0}},
                           margin, 1e-8, 2);
}

CheckResult check_distortion_a2zero(const ZooFunction& f) {
  if (std::abs(f.a2()) > 1e-10) {
    throw NotZeroA2("check_distortion_a2zero: a2 must vanish");
  }
  const double gamma = 3.0 * std::abs(f.a3());
  const double expnt = 2.0 * (1.0 + gamma) / (3.0 + gamma);

  const TaylorSeries fp = derivative(f.series);
  const std::vector<complex_t> grid = canonical_grid();
  double margin = 1e300;
  for (const complex_t& z : grid) {
    const double bound = std::pow(1.0 - std::abs(z), -expnt);
    margin = std::min(margin, relative_margin(bound, std::abs(eval(fp, z))));
  }

  // psi = phi/z with phi = (f''/f') / (2 + z f''/f'); psi(0) = 3 a3 and
  // |psi| obeys the Schwarz-Pick envelope (gamma + rho)/(1 + gamma rho).
  const TaylorSeries q = div(derivative(fp), fp);
  const int m = q.order();
  const TaylorSeries denom =
      add(TaylorSeries::constant(2.0, m), shift_up(q, m));
  TaylorSeries phi = div(q, denom);
  {
    std::vector<complex_t> c(phi.coeffs().begin(), phi.coeffs().end());
    c[0] = 0.0;  // phi(0) = a2 = 0 up to roundoff
    phi = TaylorSeries(std::move(c));
  }
  const TaylorSeries psi = shift_down(phi);
  margin = std::min(margin, 1e-8 - std::abs(psi.coeff(0) - 3.0 * f.a3()));
  for (const complex_t& z : grid) {
    const double rho = std::abs(z);
    const double bound = (gamma + rho) / (1.0 + gamma * rho);
    margin = std::min(margin, relative_margin(bound, std::abs(eval(psi, z))));
  }

  return make_check_result("distortion_a2zero", f.spec,
                           {{"gamma", gamma}, {"exponent", expnt}}, margin,
                           1e-8, static_cast<long>(2 * grid.size()));
}

CheckResult check_pre_schwarzian_bound(const ZooFunction& f) {
  const double alpha = std::abs(f.a2());
  const double bound = 2.0 * (1.0 + alpha);
  const std::vector<complex_t> grid = canonical_grid();
  double margin = 1e300;
  for (const complex_t& z : grid) {
    const double v = (1.0 - std::norm(z)) * std::abs(f.log_deriv.eval(z));
    margin = std::min(margin, relative_margin(bound, v));
  }
  return make_check_result("pre_schwarzian_bound", f.spec, {{"alpha", alpha}},
                           margin, 1e-9, static_cast<long>(grid.size()));
}

std::vector<CheckResult> check_hardy_table() {
  struct Entry {
    std::string id;
    ZooFunction f;
    bool use_deriv;
    double predicted;
  };
  std::vector<Entry> entries;
  const int N = 64;
  for (const double a : {0.0, 0.5, 1.0}) {
    entries.push_back({"sector_deriv[alpha=" + format_param(a) + "]",
                       make_sector(a, N), true, 1.0 / (1.0 + a)});
  }
  for (const double a : {0.5, 1.0}) {
    entries.push_back({"sector[alpha=" + format_param(a) + "]",
                       make_sector(a, N), false, 1.0 / a});
  }
  for (const double a : {0.0, 1.0, 2.0}) {
    entries.push_back({"starlike_deriv[alpha=" + format_param(a) + "]",
                       make_starlike_extremal(a, N), true, 2.0 / (4.0 + a)});
    entries.push_back({"starlike[alpha=" + format_param(a) + "]",
                       make_starlike_extremal(a, N), false, 2.0 / (2.0 + a)});
  }
  entries.push_back(
      {"koebe_deriv", make_koebe_dilated(1.0, N), true, 1.0 / 3.0});
  entries.push_back(
      {"ctc_deriv[t=0.5]", make_ctc_extremal(0.5, N), true, 1.0 / 3.0});
  entries.push_back({"ctc[t=0.5]", make_ctc_extremal(0.5, N), false, 0.5});
  entries.push_back({"r_example_deriv", make_r_example(N), true, 0.5});
  entries.push_back({"r_example", make_r_example(N), false, 1.0});

  const std::vector<double> ladder = default_radius_ladder();
  long ladder_samples = 0;
  for (double r : ladder) ladder_samples += ladder_n_theta(r);

  std::vector<CheckResult> out;
  for (const Entry& e : entries) {
    const PointEvaluator& ev = e.use_deriv ? e.f.deriv : e.f.value;
    const ExponentEstimate est =
        hardy_critical_exponent(ev, 0.5 * e.predicted, 2.0 * e.predicted, ladder);
    const double rel_err = std::abs(est.p_star / e.predicted - 1.0);
    out.push_back(make_check_result(
        "hardy_table/" + e.id, e.f.spec,
        {{"predicted", e.predicted},
         {"p_star", est.p_star},
         {"gamma", est.gamma},
         {"rel_err", rel_err}},
        0.05 - rel_err, 0.0, ladder_samples));
  }
  return out;
}

HaymanConstants hayman_gamma(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 2.0)) {
    throw CheckError("hayman_gamma: alpha must lie in [0, 2]");
  }
  HaymanConstants h;
  h.lambda = 1.0 / (2.0 - std::sqrt(2.0 - alpha));
  h.gamma = 4.0 * h.lambda * h.lambda * std::exp(2.0 - 4.0 * h.lambda);
  return h;
}

double gamma_function(double x) {
  if (!(x > 0.0)) throw CheckError("gamma_function: x must be positive");
  // Lanczos approximation, g = 7, 9 terms.
  static const double p[9] = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) {
    return std::numbers::pi /
           (std::sin(std::numbers::pi * x) * gamma_function(1.0 - x));
  }
  const double z = x - 1.0;
  double acc = p[0];
  for (int i = 1; i < 9; ++i) acc += p[i] / (z + i);
  const double t = z + 7.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) *
         std::exp(-t) * acc;
}

DiscreteMeasure random_measure(std::mt19937_64& rng, int min_atoms,
                               int max_atoms) {
  std::uniform_int_distribution<int> count(min_atoms, max_atoms);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = count(rng);
  std::vector<Atom> atoms(n);
  double total = 0.0;
  for (Atom& a : atoms) {
    a.position = std::polar(1.0, angle(rng));
    a.weight = -std::log(std::max(unit(rng), 1e-300));
    total += a.weight;
  }
  // Renormalize so the sum is exactly 1 to the working tolerance.
  double acc = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    atoms[i].weight /= total;
    acc += atoms[i].weight;
  }
  atoms[n - 1].weight = 1.0 - acc;
  return DiscreteMeasure(std::move(atoms));
}

std::vector<CheckResult> run_convex_suite(std::uint64_t seed, int n_random,
                                          int order) {
  std::mt19937_64 rng(seed);
  std::vector<CheckResult> out;
  for (int i = 0; i < n_random; ++i) {
    const DiscreteMeasure mu = random_measure(rng);
    const ZooFunction f = make_convex_from_measure(mu, order);
    const std::string tag = "convex[" + std::to_string(i) + "]/";
    auto [growth, distortion] = check_gronwall(f);
    growth.check_id = tag + growth.check_id;
    distortion.check_id = tag + distortion.check_id;
    out.push_back(std::move(growth));
    out.push_back(std::move(distortion));
    CheckResult cb = check_coeff_bound(f, 256);
    cb.check_id = tag + cb.check_id;
    out.push_back(std::move(cb));
    CheckResult a3 = check_a3_bounds(f);
    a3.check_id = tag + a3.check_id;
    out.push_back(std::move(a3));
    CheckResult ps = check_pre_schwarzian_bound(f);
    ps.check_id = tag + ps.check_id;
    out.push_back(std::move(ps));
  }
  return out;
}

std::vector<CheckResult> run_equality_suite() {
  std::vector<CheckResult> out;
  for (const double a : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const ZooFunction s = make_sector(a, 768);
    const std::string tag = "equality/sector[alpha=" + format_param(a) + "]/";
    auto [growth, distortion] = check_gronwall(s);
    growth.check_id = tag + growth.check_id;
    distortion.check_id = tag + distortion.check_id;
    out.push_back(std::move(growth));
    out.push_back(std::move(distortion));
    CheckResult a3 = check_a3_bounds(s);
    a3.check_id = tag + a3.check_id;
    out.push_back(std::move(a3));
  }
  {
    const ZooFunction s1 = make_half_plane(768);
    CheckResult cb = check_coeff_bound(s1, 256);
    cb.check_id = "equality/half_plane/" + cb.check_id;
    out.push_back(std::move(cb));
  }
  {
    const ZooFunction s = make_sector(0.5, 2000);
    CheckResult ca = check_coeff_asymptotics(s, 2000);
    ca.check_id = "equality/sector[alpha=0.5]/" + ca.check_id;
    out.push_back(std::move(ca));
  }
  {
    const ZooFunction s0 = make_sector(0.0, 768);
    CheckResult d = check_distortion_a2zero(s0);
    d.check_id = "equality/sector[alpha=0]/" + d.check_id;
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<CheckResult> run_all_checks(std::uint64_t seed, int n_random) {
  std::vector<CheckResult> out = run_equality_suite();
  std::vector<CheckResult> convex = run_convex_suite(seed, n_random);
  out.insert(out.end(), std::make_move_iterator(convex.begin()),
             std::make_move_iterator(convex.end()));
  std::vector<CheckResult> hardy = check_hardy_table();
  out.insert(out.end(), std::make_move_iterator(hardy.begin()),
             std::make_move_iterator(hardy.end()));
  return out;
}

AppendixSearchOutcome appendix_random_search(std::uint64_t seed, long trials,
                                             double tol) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  AppendixSearchOutcome outcome;

  const auto examine = [&](const DiscreteMeasure& mu) {
    ++outcome.attempted;
    double max_mass = 0.0;
    for (const Atom& a : mu.atoms()) max_mass = std::max(max_mass, a.weight);
    const bool hypothesis =
        std::abs(moment(mu, 1)) <= tol && max_mass >= 0.5 - tol;
    if (hypothesis) {
      ++outcome.hypothesis_met;
      if (!appendix_theorem_check(mu, tol).conforms) ++outcome.violations;
    }
  };

  for (long trial = 0; trial < trials; ++trial) {
    const complex_t lambda0 = std::polar(1.0, angle(rng));
    switch (trial % 4) {
      case 0: {  // exact antipodal pair
        examine(DiscreteMeasure({{lambda0, 0.5}, {-lambda0, 0.5}}));
        break;
      }
      case 1: {  // antipodal mass split across a small arc
        const double phi = std::pow(10.0, -9.0 + 6.0 * unit(rng));
        const double t1 = 0.25 * (1.0 + 0.5 * (unit(rng) - 0.5));
        const double t2 = 0.5 - t1;
        examine(DiscreteMeasure(
            {{lambda0, 0.5},
             {-lambda0 * std::polar(1.0, phi), t1},
             {-lambda0 * std::polar(1.0, -phi), t2}}));
        break;
      }
      case 2: {  // random measure, weights steered toward zero moment
        const double m = 0.5 + 0.5 * unit(rng);
        const int extra = 1 + static_cast<int>(3.0 * unit(rng));
        std::vector<complex_t> pos(extra);
        std::vector<double> wts(extra);
        // Half the time plant the exact antipode among the candidates.
        for (int j = 0; j < extra; ++j) {
          pos[j] = (j == 0 && unit(rng) < 0.5) ? -lambda0
                                               : std::polar(1.0, angle(rng));
          wts[j] = (1.0 - m) / extra;
        }
        // Frank-Wolfe on the weight simplex for min |m lambda0 + sum w_j pos_j|.
        for (int it = 0; it < 64; ++it) {
          complex_t c = m * lambda0;
          for (int j = 0; j < extra; ++j) c += wts[j] * pos[j];
          int best = 0;
          double best_ip = 1e300;
          for (int j = 0; j < extra; ++j) {
            const double ip = (std::conj(c) * pos[j]).real();
            if (ip < best_ip) {
              best_ip = ip;
              best = j;
            }
          }
          complex_t x{};
          for (int j = 0; j < extra; ++j) x += wts[j] * pos[j];
          const complex_t v = (1.0 - m) * pos[best];
          const complex_t d = v - x;
          const double dn = std::norm(d);
          if (dn < 1e-300) break;
          const double step = std::clamp(-(std::conj(c) * d).real() / dn, 0.0, 1.0);
          for (int j = 0; j < extra; ++j) wts[j] *= (1.0 - step);
          wts[best] += step * (1.0 - m);
          if (step == 0.0) break;
        }
        std::vector<Atom> atoms{{lambda0, m}};
        double acc = m;
        for (int j = 0; j < extra; ++j) {
          if (wts[j] > 1e-14) {
            atoms.push_back({pos[j], wts[j]});
            acc += wts[j];
          }
        }
        atoms[0].weight += 1.0 - acc;  // re-close the total mass
        examine(DiscreteMeasure(std::move(atoms)));
        break;
      }
      default: {  // antipodal pair plus an adversarial third atom
        const double s = std::pow(10.0, -10.0 + 9.0 * unit(rng));
        const double psi = angle(rng);
        if (0.5 - s <= 0.0) break;
        examine(DiscreteMeasure({{lambda0, 0.5},
                                 {-lambda0, 0.5 - s},
                                 {lambda0 * std::polar(1.0, psi), s}}));
        break;
      }
    }
  }
  return outcome;
}

}  // namespace hardylab

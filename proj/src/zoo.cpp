#include "hardylab/zoo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace hardylab {

namespace {

constexpr complex_t kI{0.0, 1.0};

void assert_normalized(const TaylorSeries& s, const char* who) {
  if (std::abs(s.coeff(0)) > 1e-12 || std::abs(s.coeff(1) - 1.0) > 1e-12) {
    throw ZooError(std::string(who) + ": construction lost normalization");
  }
}

// (1 + sign z)^alpha by the binomial recurrence.
TaylorSeries binomial_series(double sign, double alpha, int order) {
  std::vector<complex_t> c(order + 1);
  c[0] = 1.0;
  double ck = 1.0;
  for (int k = 0; k < order; ++k) {
    ck *= sign * (alpha - k) / (k + 1);
    c[k + 1] = ck;
  }
  return TaylorSeries(std::move(c));
}

struct GaussLegendre16 {
  std::array<double, 16> x{};
  std::array<double, 16> w{};
};

// Nodes and weights of 16-point Gauss-Legendre, by Newton iteration on P_16.
const GaussLegendre16& gl16() {
  static const GaussLegendre16 table = [] {
    GaussLegendre16 t;
    constexpr int n = 16;
    for (int i = 0; i < n / 2; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      t.x[i] = -x;
      t.x[n - 1 - i] = x;
      t.w[i] = t.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return t;
  }();
  return table;
}

TaylorSeries lacunary_half_sum(const LacunarySequence& seq, int order) {
  std::vector<complex_t> c(order + 1, complex_t{});
  for (long n : seq.exponents) {
    if (n <= order) c[static_cast<size_t>(n)] += 0.5;
  }
  return TaylorSeries(std::move(c));
}

std::map<std::string, double> encode_sequence(const LacunarySequence& seq) {
  std::map<std::string, double> p;
  p["n_count"] = static_cast<double>(seq.exponents.size());
  for (size_t i = 0; i < seq.exponents.size(); ++i) {
    p["n_" + std::to_string(i)] = static_cast<double>(seq.exponents[i]);
  }
  return p;
}

LacunarySequence decode_sequence(const std::map<std::string, double>& p,
                                 int order) {
  auto it = p.find("n_count");
  if (it == p.end()) return LacunarySequence::geometric(4, std::max(order - 1, 1));
  std::vector<long> exps;
  const auto count = static_cast<size_t>(it->second);
  exps.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    exps.push_back(static_cast<long>(p.at("n_" + std::to_string(i))));
  }
  return LacunarySequence(std::move(exps));
}

std::map<std::string, double> encode_measure(const DiscreteMeasure& mu) {
  std::map<std::string, double> p;
  p["atom_count"] = static_cast<double>(mu.atoms().size());
  for (size_t j = 0; j < mu.atoms().size(); ++j) {
    p["arg_over_pi_" + std::to_string(j)] =
        std::arg(mu.atoms()[j].position) / std::numbers::pi;
    p["weight_" + std::to_string(j)] = mu.atoms()[j].weight;
  }
  return p;
}

DiscreteMeasure decode_measure(const std::map<std::string, double>& p) {
  std::vector<std::pair<double, double>> atoms;
  const auto count = static_cast<size_t>(p.at("atom_count"));
  for (size_t j = 0; j < count; ++j) {
    atoms.emplace_back(p.at("arg_over_pi_" + std::to_string(j)),
                       p.at("weight_" + std::to_string(j)));
  }
  return DiscreteMeasure::from_args_over_pi(atoms);
}

double require_param(const std::map<std::string, double>& p,
                     const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw ZooError("spec: missing parameter '" + key + "'");
  return it->second;
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::sector: return "sector";
    case Family::strip: return "strip";
    case Family::koebe_dilated: return "koebe_dilated";
    case Family::half_plane: return "half_plane";
    case Family::polylog: return "polylog";
    case Family::lpr_phi: return "lpr_phi";
    case Family::convex_from_measure: return "convex_from_measure";
    case Family::alexander_starlike: return "alexander_starlike";
    case Family::starlike_extremal: return "starlike_extremal";
    case Family::ctc_extremal: return "ctc_extremal";
    case Family::ctc_three_atom: return "ctc_three_atom";
    case Family::r_example: return "r_example";
    case Family::sqrt_transform: return "sqrt_transform";
    case Family::pfaltzgraff: return "pfaltzgraff";
    case Family::lpr_composition: return "lpr_composition";
  }
  throw ZooError("family_name: unknown family");
}

Family family_from_name(const std::string& name) {
  static const std::map<std::string, Family> lookup = {
      {"sector", Family::sector},
      {"strip", Family::strip},
      {"koebe_dilated", Family::koebe_dilated},
      {"koebe", Family::koebe_dilated},
      {"half_plane", Family::half_plane},
      {"polylog", Family::polylog},
      {"lpr_phi", Family::lpr_phi},
      {"lpr", Family::lpr_phi},
      {"convex_from_measure", Family::convex_from_measure},
      {"alexander_starlike", Family::alexander_starlike},
      {"starlike_extremal", Family::starlike_extremal},
      {"starlike", Family::starlike_extremal},
      {"ctc_extremal", Family::ctc_extremal},
      {"ctc", Family::ctc_extremal},
      {"ctc_three_atom", Family::ctc_three_atom},
      {"r_example", Family::r_example},
      {"sqrt_transform", Family::sqrt_transform},
      {"pfaltzgraff", Family::pfaltzgraff},
      {"lpr_composition", Family::lpr_composition},
  };
  auto it = lookup.find(name);
  if (it == lookup.end()) throw ZooError("unknown family name '" + name + "'");
  return it->second;
}

LacunarySequence::LacunarySequence(std::vector<long> exps)
    : exponents(std::move(exps)) {
  if (exponents.empty() || exponents.front() != 1) {
    throw ParamOutOfRange("lacunary sequence must start with 1");
  }
  for (size_t i = 1; i < exponents.size(); ++i) {
    if (exponents[i] <= exponents[i - 1]) {
      throw ParamOutOfRange("lacunary sequence must be strictly increasing");
    }
  }
}

LacunarySequence LacunarySequence::geometric(long ratio, long max_exponent) {
  if (ratio < 2) throw ParamOutOfRange("lacunary ratio must be >= 2");
  std::vector<long> exps;
  for (long n = 1; n <= max_exponent; n *= ratio) exps.push_back(n);
  if (exps.empty()) exps.push_back(1);
  return LacunarySequence(std::move(exps));
}

PointEvaluator antiderivative_evaluator(PointEvaluator g) {
  return PointEvaluator{
      [g = std::move(g)](complex_t z) {
        if (z == complex_t{}) return complex_t{};
        const double az = std::abs(z);
        int levels = 4;
        if (az < 1.0) {
          levels = std::max(
              4, static_cast<int>(std::ceil(-std::log2(1.0 - az))) + 2);
        }
        levels = std::min(levels, 52);
        const auto& gl = gl16();
        complex_t total{};
        double a = 0.0;
        for (int j = 1; j <= levels; ++j) {
          const double b = (j == levels) ? 1.0 : 1.0 - std::pow(0.5, j);
          const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
          complex_t seg{};
          for (int q = 0; q < 16; ++q) {
            seg += gl.w[q] * g.eval((mid + half * gl.x[q]) * z);
          }
          total += seg * half;
          a = b;
        }
        return total * z;
      },
      PointEvaluator::Kind::closed_form};
}

PointEvaluator horner_ratio_evaluator(TaylorSeries numer, TaylorSeries denom) {
  const int n = std::min(numer.order(), denom.order());
  const double r_max = 1.0 - 10.0 / std::max(n, 11);
  return PointEvaluator{
      [num = std::move(numer), den = std::move(denom), r_max](complex_t z) {
        if (std::abs(z) > r_max) {
          throw EvalOutsideReliableRadius(
              "horner_ratio_evaluator: |z| beyond reliable radius");
        }
        return eval(num, z) / eval(den, z);
      },
      PointEvaluator::Kind::horner_series};
}

ZooFunction make_sector(double alpha, int order) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ParamOutOfRange("sector: alpha must lie in [0, 1]");
  }
  TaylorSeries series = TaylorSeries::zero(order);
  if (alpha == 0.0) {
    std::vector<complex_t> c(order + 1, complex_t{});
    for (int n = 1; n <= order; n += 2) c[n] = 1.0 / n;
    series = TaylorSeries(std::move(c));
  } else {
    const TaylorSeries p =
        mul(binomial_series(+1.0, alpha, order), binomial_series(-1.0, -alpha, order));
    std::vector<complex_t> c(order + 1, complex_t{});
    for (int n = 1; n <= order; ++n) c[n] = p.coeff(n) / (2.0 * alpha);
    series = TaylorSeries(std::move(c));
  }
  assert_normalized(series, "sector");

  PointEvaluator value{
      [alpha](complex_t z) {
        const complex_t w = (1.0 + z) / (1.0 - z);
        if (alpha == 0.0) return 0.5 * std::log(w);
        return (std::pow(w, alpha) - 1.0) / (2.0 * alpha);
      },
      PointEvaluator::Kind::closed_form};
  PointEvaluator deriv{
      [alpha](complex_t z) {
        return std::pow(1.0 - z, -(1.0 + alpha)) *
               std::pow(1.0 + z, -(1.0 - alpha));
      },
      PointEvaluator::Kind::closed_form};
  PointEvaluator log_deriv{
      [alpha](complex_t z) { return 2.0 * (alpha + z) / (1.0 - z * z); },
      PointEvaluator::Kind::closed_form};

  return ZooFunction{FunctionSpec{Family::sector, {{"alpha", alpha}}, order},
                     std::move(series), std::move(value), std::move(deriv),
                     std::move(log_deriv), {}};
}

ZooFunction make_strip(double alpha, int order) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw ParamOutOfRange("strip: alpha must lie in [0, 1)");
  }
  const double s = std::sqrt(1.0 - alpha * alpha);
  const complex_t lambda{alpha, s};
  // The raw log expansion has a2 = +alpha; the class-S rotation by pi
  // (z -> -f(-z)) flips it to -alpha and makes the value at +r the
  // minimum of |f| over the circle, which is the growth envelope role
  // this function plays.
  std::vector<complex_t> c(order + 1, complex_t{});
  complex_t pw = 1.0;
  for (int n = 1; n <= order; ++n) {
    pw *= lambda;
    const double sign = (n % 2 == 1) ? 1.0 : -1.0;
    c[n] = sign * pw.imag() / (s * n);
  }
  TaylorSeries series(std::move(c));
  assert_normalized(series, "strip");

  PointEvaluator value{
      [s, lambda](complex_t z) {
        return -kI / (2.0 * s) *
               std::log((1.0 + lambda * z) / (1.0 + std::conj(lambda) * z));
      },
      PointEvaluator::Kind::closed_form};
  PointEvaluator deriv{
      [alpha](complex_t z) { return 1.0 / (1.0 + 2.0 * alpha * z + z * z); },
      PointEvaluator::Kind::closed_form};
  PointEvaluator log_deriv{
      [alpha](complex_t z) {
        return -(2.0 * alpha + 2.0 * z) / (1.0 + 2.0 * alpha * z + z * z);
      },
      PointEvaluator::Kind::closed_form};

  ZooFunction f{FunctionSpec{Family::strip, {{"alpha", alpha}}, order},
                std::move(series), std::move(value), std::move(deriv),
                std::move(log_deriv), {}};
  f.metadata["rotation"] = std::numbers::pi;
  return f;
}

ZooFunction make_koebe_dilated(double r, int order) {
  if (!(r > 0.0 && r <= 1.0)) {
    throw ParamOutOfRange("koebe_dilated: r must lie in (0, 1]");
  }
  std::vector<complex_t> c(order + 1, complex_t{});
  double rp = 1.0;
  for (int n = 1; n <= order; ++n) {
    c[n] = n * rp;
    rp *= r;
  }
  TaylorSeries series(std::move(c));
  assert_normalized(series, "koebe_dilated");

  PointEvaluator value{[r](complex_t z) {
                         const complex_t d = 1.0 - r * z;
                         return z / (d * d);
                       },
                       PointEvaluator::Kind::closed_form};
  PointEvaluator deriv{[r](complex_t z) {
                         const complex_t d = 1.0 - r * z;
                         return (1.0 + r * z) / (d * d * d);
                       },
                       PointEvaluator::Kind::closed_form};
  PointEvaluator log_deriv{
      [r](complex_t z) {
        return 2.0 * r * (2.0 + r * z) / ((1.0 - r * z) * (1.0 + r * z));
      },
      PointEvaluator::Kind::closed_form};

  return ZooFunction{FunctionSpec{Family::koebe_dilated, {{"r", r}}, order},
                     std::move(series), std::move(value), std::move(deriv),
                     std::move(log_deriv), {}};
}

ZooFunction make_half_plane(int order) {
  std::vector<complex_t> c(order + 1, 1.0);
  c[0] = 0.0;
  TaylorSeries series(std::move(c));

  PointEvaluator value{[](complex_t z) { return z / (1.0 - z); },
                       PointEvaluator::Kind::closed_form};
  PointEvaluator deriv{[](complex_t z) {
                         const complex_t d = 1.0 - z;
                         return 1.0 / (d * d);
                       },
                       PointEvaluator::Kind::closed_form};
  PointEvaluator log_deriv{[](complex_t z) { return 2.0 / (1.0 - z); },
                           PointEvaluator::Kind::closed_form};

  return ZooFunction{FunctionSpec{Family::half_plane, {}, order},
                     std::move(series), std::move(value), std::move(deriv),
                     std::move(log_deriv), {}};
}

ZooFunction make_polylog(double t, int order) {
  if (!(t >= 0.0)) throw ParamOutOfRange("polylog: t must be >= 0");
  std::vector<complex_t> c(order + 1, complex_t{});
  for (int n = 1; n <= order; ++n) c[n] = std::exp(-t * std::log(n));
  TaylorSeries series(std::move(c));
  assert_normalized(series, "polylog");

  PointEvaluator value, deriv;
  if (t == 0.0) {
    value = PointEvaluator{[](complex_t z) { return z / (1.0 - z); },
                           PointEvaluator::Kind::closed_form};
    deriv = PointEvaluator{[](complex_t z) {
                             const complex_t d = 1.0 - z;
                             return 1.0 / (d * d);
                           },
                           PointEvaluator::Kind::closed_form};
  } else if (t == 1.0) {
    value = PointEvaluator{[](complex_t z) { return -std::log(1.0 - z); },
                           PointEvaluator::Kind::closed_form};
    deriv = PointEvaluator{[](complex_t z) { return 1.0 / (1.0 - z); },
                           PointEvaluator::Kind::closed_form};
  } else {
    value = horner_evaluator(series);
    deriv = horner_evaluator(derivative(series));
  }
  PointEvaluator log_deriv =
      horner_ratio_evaluator(derivative(derivative(series)), derivative(series));

  return ZooFunction{FunctionSpec{Family::polylog, {{"t", t}}, order},
                     std::move(series), std::move(value), std::move(deriv),
                     std::move(log_deriv), {}};
}

namespace {

PointEvaluator lacunary_deriv_evaluator(std::vector<long> exps, double factor) {
  return PointEvaluator{
      [exps = std::move(exps), factor](complex_t z) {
        complex_t s{};
        for (long n : exps) s += std::pow(z, static_cast<double>(n));
        return std::exp(factor * s);
      },
      PointEvaluator::Kind::closed_form};
}

PointEvaluator lacunary_log_deriv_evaluator(std::vector<long> exps,
                                            double factor) {
  return PointEvaluator{
      [exps = std::move(exps), factor](complex_t z) {
        complex_t s{};
        for (long n : exps) {
          s += static_cast<double>(n) * std::pow(z, static_cast<double>(n - 1));
        }
        return factor * s;
      },
      PointEvaluator::Kind::closed_form};
}

std::vector<long> usable_exponents(const LacunarySequence& seq, int max_exp) {
  std::vector<long> out;
  for (long n : seq.exponents) {
    if (n <= max_exp) out.push_back(n);
  }
  return out;
}

}  // namespace

ZooFunction make_lpr_phi(const LacunarySequence& seq, int order) {
  const TaylorSeries half_sum = lacunary_half_sum(seq, order - 1);
  TaylorSeries series = integrate(exp(half_sum)).truncated(order);
  assert_normalized(series, "lpr_phi");

  std::vector<long> exps = usable_exponents(seq, order - 1);
  auto params = encode_sequence(seq);
  ZooFunction f{FunctionSpec{Family::lpr_phi, std::move(params), order},
                series,
                horner_evaluator(series),
                lacunary_deriv_evaluator(exps, 0.5),
                lacunary_log_deriv_evaluator(exps, 0.5),
                {}};
  return f;
}

ZooFunction make_lpr_phi_prime(const LacunarySequence& seq, int order) {
  const TaylorSeries half_sum = lacunary_half_sum(seq, order);
  TaylorSeries series = exp(half_sum);

  std::vector<long> exps = usable_exponents(seq, order);
  auto params = encode_sequence(seq);
  params["prime"] = 1.0;
  TaylorSeries d1 = derivative(series);
  return ZooFunction{FunctionSpec{Family::lpr_phi, std::move(params), order},
                     series,
                     lacunary_deriv_evaluator(exps, 0.5),
                     horner_evaluator(d1),
                     horner_ratio_evaluator(derivative(d1), d1),
                     {}};
}

ZooFunction make_convex_from_measure(const DiscreteMeasure& mu, int order) {
  // log f' = -2 sum_j t_j log(1 - l_j z) has coefficients 2 m_n / n.
  std::vector<complex_t> lc(std::max(order - 1, 0) + 1, complex_t{});
  {
    std::vector<complex_t> pw(mu.atoms().size(), 1.0);
    for (int n = 1; n < static_cast<int>(lc.size()); ++n) {
      complex_t m{};
      for (size_t j = 0; j < mu.atoms().size(); ++j) {
        pw[j] *= mu.atoms()[j].position;
        m += mu.atoms()[j].weight * pw[j];
      }
      lc[n] = 2.0 * m / static_cast<double>(n);
    }
  }
  TaylorSeries series = integrate(exp(TaylorSeries(std::move(lc)))).truncated(order);
  assert_normalized(series, "convex_from_measure");

  std::vector<Atom> atoms = mu.atoms();
  PointEvaluator deriv{
      [atoms](complex_t z) {
        complex_t s{};
        for (const Atom& a : atoms) s += a.weight * std::log(1.0 - a.position * z);
        return std::exp(-2.0 * s);
      },
      PointEvaluator::Kind::closed_form};
  PointEvaluator log_deriv{
      [atoms](complex_t z) {
        complex_t s{};
        for (const Atom& a : atoms) {
          s += 2.0 * a.weight * a.position / (1.0 - a.position * z);
        }
        return s;
      },
      PointEvaluator::Kind::closed_form};
  PointEvaluator value = antiderivative_evaluator(deriv);

  return ZooFunction{
      FunctionSpec{Family::convex_from_measure, encode_measure(mu), order},
      std::move(series), std::move(value), std::move(deriv),
      std::move(log_deriv), {}};
}

TaylorSeries alexander_starlike(const TaylorSeries& h_convex) {
  if (std::abs(h_convex.coeff(1) - 1.0) > 1e-12) {
    throw ParamOutOfRange("alexander_starlike: input must be normalized");
  }
  const int n = h_convex.order();
  std::vector<complex_t> c(n + 1, complex_t{});
  for (int k = 1; k <= n; ++k) c[k] = static_cast<double>(k) * h_convex.coeff(k);
  return TaylorSeries(std::move(c));
}

ZooFunction make_starlike_extremal(double alpha, int order) {
  if (!(alpha >= 0.0 && alpha <= 2.0)) {
    throw ParamOutOfRange("starlike_extremal: alpha must lie in [0, 2]");
  }
  const double ep = 1.0 + alpha / 2.0;  // exponent at z = 1
  const double em = 1.0 - alpha / 2.0;  // exponent at z = -1
  const TaylorSeries p =
      mul(binomial_series(-1.0, -ep, order), binomial_series(+1.0, -em, order));
  std::vector<complex_t> c(order + 1, complex_t{});
  for (int n = 1; n <= order; ++n) c[n] = p.coeff(n - 1);
  TaylorSeries series(std::move(c));
  assert_normalized(series, "starlike_extremal");

  PointEvaluator value{
      [ep, em](complex_t z) {
        return z * std::pow(1.0 - z, -ep) * std::pow(1.0 + z, -em);
      },
      PointEvaluator::Kind::closed_form};
  PointEvaluator deriv{
      [ep, em, alpha](complex_t z) {
        return (1.0 + alpha * z + z * z) * std::pow(1.0 - z, -(ep + 1.0)) *
               std::pow(1.0 + z, -(em + 1.0));
      },
      PointEvaluator::Kind::closed_form};
  PointEvaluator log_deriv{
      [ep, em, alpha](complex_t z) {
        return (alpha + 2.0 * z) / (1.0 + alpha * z + z * z) +
               (ep + 1.0) / (1.0 - z) - (em + 1.0) / (1.0 + z);
      },
      PointEvaluator::Kind::closed_form};

  return ZooFunction{
      FunctionSpec{Family::starlike_extremal, {{"alpha", alpha}}, order},
      std::move(series), std::move(value), std::move(deriv),
      std::move(log_deriv), {}};
}

ZooFunction make_ctc_extremal(double t, int order) {
  if (!(t > 0.0 && t <= 1.0)) {
    throw ParamOutOfRange("ctc_extremal: t must lie in (0, 1]");
  }
  std::vector<complex_t> c(order + 1, complex_t{});
  for (int n = 1; n <= order; ++n) {
    c[n] = t * n + ((n % 2 == 1) ? (1.0 - t) / n : 0.0);
  }
  TaylorSeries series(std::move(c));
  assert_normalized(series, "ctc_extremal");

  PointEvaluator value{
      [t](complex_t z) {
        const complex_t d = 1.0 - z;
        return t * z / (d * d) + 0.5 * (1.0 - t) * std::log((1.0 + z) / d);
      },
      PointEvaluator::Kind::closed_form};
  PointEvaluator deriv{
      [t](complex_t z) {
        const complex_t d = 1.0 - z;
        return t * (1.0 + z) / (d * d * d) + (1.0 - t) / (1.0 - z * z);
      },
      PointEvaluator::Kind::closed_form};
  PointEvaluator log_deriv{
      [t](complex_t z) {
        const complex_t d = 1.0 - z;
        const complex_t u = 1.0 - z * z;
        const complex_t fp = t * (1.0 + z) / (d * d * d) + (1.0 - t) / u;
        const complex_t fpp =
            2.0 * t * (2.0 + z) / (d * d * d * d) + 2.0 * (1.0 - t) * z / (u * u);
        return fpp / fp;
      },
      PointEvaluator::Kind::closed_form};

  return ZooFunction{FunctionSpec{Family::ctc_extremal, {{"t", t}}, order},
                     std::move(series), std::move(value), std::move(deriv),
                     std::move(log_deriv), {}};
}

ZooFunction make_ctc_three_atom(double beta, double t, double theta, int order) {
  if (!(beta >= 0.0 && beta < 1.0)) {
    throw ParamOutOfRange("ctc_three_atom: beta must lie in [0, 1)");
  }
  if (!(t > 0.0 && t < 0.5)) {
    throw ParamOutOfRange("ctc_three_atom: t must lie in (0, 1/2)");
  }
  if (!(theta > 0.0 && theta < std::numbers::pi)) {
    throw ParamOutOfRange("ctc_three_atom: theta must lie in (0, pi)");
  }
  const complex_t mu = std::polar(1.0, theta);
  const DiscreteMeasure measure(
      {Atom{mu, t}, Atom{std::conj(mu), t}, Atom{1.0, 1.0 - 2.0 * t}});

  const int dord = std::max(order - 1, 0);
  const TaylorSeries sbeta_prime = mul(binomial_series(-1.0, -(1.0 + beta), dord),
                                       binomial_series(+1.0, -(1.0 - beta), dord));
  const TaylorSeries h = caratheodory_series(measure, dord);
  TaylorSeries series = integrate(mul(sbeta_prime, h)).truncated(order);
  assert_normalized(series, "ctc_three_atom");

  const PointEvaluator h_eval = caratheodory_evaluator(measure);
  PointEvaluator deriv{
      [beta, h_eval](complex_t z) {
        return std::pow(1.0 - z, -(1.0 + beta)) *
               std::pow(1.0 + z, -(1.0 - beta)) * h_eval.eval(z);
      },
      PointEvaluator::Kind::closed_form};
  std::vector<Atom> atoms = measure.atoms();
  PointEvaluator log_deriv{
      [beta, atoms, h_eval](complex_t z) {
        complex_t hp{};
        for (const Atom& a : atoms) {
          const complex_t d = 1.0 - a.position * z;
          hp += 2.0 * a.weight * a.position / (d * d);
        }
        return 2.0 * (beta + z) / (1.0 - z * z) + hp / h_eval.eval(z);
      },
      PointEvaluator::Kind::closed_form};
  PointEvaluator value = antiderivative_evaluator(deriv);

  return ZooFunction{
      FunctionSpec{Family::ctc_three_atom,
                   {{"beta", beta}, {"t", t}, {"theta", theta}},
                   order},
      std::move(series), std::move(value), std::move(deriv),
      std::move(log_deriv), {}};
}

ZooFunction make_r_example(int order) {
  std::vector<complex_t> c(order + 1, complex_t{});
  double sign = 1.0;
  for (int n = 1; n <= order; n += 2) {
    c[n] = sign;
    sign = -sign;
  }
  TaylorSeries series(std::move(c));

  PointEvaluator value{[](complex_t z) { return z / (1.0 + z * z); },
                       PointEvaluator::Kind::closed_form};
  PointEvaluator deriv{[](complex_t z) {
                         const complex_t d = 1.0 + z * z;
                         return (1.0 - z * z) / (d * d);
                       },
                       PointEvaluator::Kind::closed_form};
  PointEvaluator log_deriv{
      [](complex_t z) {
        return -2.0 * z / (1.0 - z * z) - 4.0 * z / (1.0 + z * z);
      },
      PointEvaluator::Kind::closed_form};

  return ZooFunction{FunctionSpec{Family::r_example, {}, order},
                     std::move(series), std::move(value), std::move(deriv),
                     std::move(log_deriv), {}};
}

TaylorSeries sqrt_transform(const TaylorSeries& f, int order) {
  if (std::abs(f.coeff(1) - 1.0) > 1e-12) {
    throw ParamOutOfRange("sqrt_transform: source must be normalized");
  }
  // f(z^2) = z^2 G(z^2) with G(0) = 1; the result is z sqrt(G)(z^2).
  const int m = std::max((order - 1) / 2, 0);
  std::vector<complex_t> g(m + 1);
  for (int k = 0; k <= m; ++k) g[k] = f.coeff(k + 1);
  const TaylorSeries h = pow(TaylorSeries(std::move(g)), 0.5);
  std::vector<complex_t> c(order + 1, complex_t{});
  for (int k = 0; 2 * k + 1 <= order; ++k) c[2 * k + 1] = h.coeff(k);
  return TaylorSeries(std::move(c));
}

ZooFunction make_sqrt_transform(const ZooFunction& f, int order) {
  TaylorSeries series = sqrt_transform(f.series, order);

  const PointEvaluator fv = f.value;
  const PointEvaluator fd = f.deriv;
  const PointEvaluator fl = f.log_deriv;
  PointEvaluator value{
      [fv](complex_t z) {
        if (z == complex_t{}) return complex_t{};
        const complex_t w = z * z;
        return z * std::sqrt(fv.eval(w) / w);
      },
      PointEvaluator::Kind::closed_form};
  PointEvaluator deriv{
      [fv, fd](complex_t z) {
        if (z == complex_t{}) return complex_t{1.0, 0.0};
        const complex_t w = z * z;
        const complex_t g = z * std::sqrt(fv.eval(w) / w);
        return z * fd.eval(w) / g;
      },
      PointEvaluator::Kind::closed_form};
  PointEvaluator log_deriv{
      [fv, fd, fl](complex_t z) {
        // g''/g' = 1/z + 2z (f''/f')(z^2) - z f'(z^2)/f(z^2)
        if (z == complex_t{}) return complex_t{};
        const complex_t w = z * z;
        return 1.0 / z + 2.0 * z * fl.eval(w) - z * fd.eval(w) / fv.eval(w);
      },
      PointEvaluator::Kind::closed_form};

  auto params = f.spec.params;
  params["inner_family"] = static_cast<double>(f.spec.family);
  return ZooFunction{FunctionSpec{Family::sqrt_transform, std::move(params), order},
                     std::move(series), std::move(value), std::move(deriv),
                     std::move(log_deriv), {}};
}

TaylorSeries pfaltzgraff_transform(const TaylorSeries& f, double eps, int order) {
  if (!(eps > 0.0 && eps <= 0.25)) {
    throw ParamOutOfRange("pfaltzgraff: eps must lie in (0, 1/4]");
  }
  return integrate(pow(derivative(f).truncated(std::max(order - 1, 0)), eps))
      .truncated(order);
}

ZooFunction make_pfaltzgraff_phi(const LacunarySequence& seq, double eps,
                                 int order) {
  if (!(eps > 0.0 && eps <= 0.25)) {
    throw ParamOutOfRange("pfaltzgraff: eps must lie in (0, 1/4]");
  }
  const TaylorSeries half_sum = lacunary_half_sum(seq, std::max(order - 1, 0));
  TaylorSeries series = integrate(exp(scale(half_sum, eps))).truncated(order);
  assert_normalized(series, "pfaltzgraff");

  std::vector<long> exps = usable_exponents(seq, order - 1);
  PointEvaluator deriv = lacunary_deriv_evaluator(exps, 0.5 * eps);
  PointEvaluator log_deriv = lacunary_log_deriv_evaluator(exps, 0.5 * eps);
  PointEvaluator value = antiderivative_evaluator(deriv);

  auto params = encode_sequence(seq);
  params["eps"] = eps;
  return ZooFunction{FunctionSpec{Family::pfaltzgraff, std::move(params), order},
                     std::move(series), std::move(value), std::move(deriv),
                     std::move(log_deriv), {}};
}

ZooFunction make_lpr_composition(double r, double eps,
                                 const LacunarySequence& seq, int order) {
  if (!(r > 0.0 && r < 1.0)) {
    throw NotInOmega("lpr_composition: r must lie in (0, 1)");
  }
  const double eps_max = std::min(eps0_solve(r), 0.25);
  if (!(eps > 0.0 && eps <= eps_max + 1e-15)) {
    throw NotInOmega("lpr_composition: eps must lie in (0, min(eps0(r), 1/4)]");
  }
  const ZooFunction g = make_pfaltzgraff_phi(seq, eps, order);
  const ZooFunction kr = make_koebe_dilated(r, order);
  TaylorSeries series = compose(kr.series, g.series);
  assert_normalized(series, "lpr_composition");
  if (std::abs(series.coeff(2) - (2.0 * r + eps / 4.0)) > 1e-12) {
    throw ZooError("lpr_composition: a2 deviates from 2r + eps/4");
  }

  const PointEvaluator gv = g.value, gd = g.deriv, gl = g.log_deriv;
  const PointEvaluator kv = kr.value, kd = kr.deriv, kl = kr.log_deriv;
  PointEvaluator value{[gv, kv](complex_t z) { return kv.eval(gv.eval(z)); },
                       PointEvaluator::Kind::closed_form};
  PointEvaluator deriv{
      [gv, gd, kd](complex_t z) { return kd.eval(gv.eval(z)) * gd.eval(z); },
      PointEvaluator::Kind::closed_form};
  PointEvaluator log_deriv{
      [gv, gd, gl, kl](complex_t z) {
        return kl.eval(gv.eval(z)) * gd.eval(z) + gl.eval(z);
      },
      PointEvaluator::Kind::closed_form};

  auto params = encode_sequence(seq);
  params["r"] = r;
  params["eps"] = eps;
  return ZooFunction{
      FunctionSpec{Family::lpr_composition, std::move(params), order},
      std::move(series), std::move(value), std::move(deriv),
      std::move(log_deriv), {}};
}

double eps0_solve(double r) {
  if (!(r > 0.0 && r < 1.0)) {
    throw ParamOutOfRange("eps0_solve: r must lie in (0, 1)");
  }
  // 2^e / (1 - 3e) is strictly increasing on (0, 1/3).
  const auto residual = [r](double e) {
    return std::exp2(e) / (1.0 - 3.0 * e) - 1.0 / r;
  };
  double lo = 1e-9, hi = 1.0 / 3.0 - 1e-9;
  if (residual(lo) >= 0.0) return lo;
  for (int i = 0; i < 80 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    (residual(mid) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

ZooFunction build_from_spec(const FunctionSpec& spec) {
  const int order = spec.order;
  switch (spec.family) {
    case Family::sector:
      return make_sector(require_param(spec.params, "alpha"), order);
    case Family::strip:
      return make_strip(require_param(spec.params, "alpha"), order);
    case Family::koebe_dilated: {
      const auto it = spec.params.find("r");
      return make_koebe_dilated(it == spec.params.end() ? 1.0 : it->second, order);
    }
    case Family::half_plane:
      return make_half_plane(order);
    case Family::polylog:
      return make_polylog(require_param(spec.params, "t"), order);
    case Family::lpr_phi:
      if (spec.params.count("prime")) {
        return make_lpr_phi_prime(decode_sequence(spec.params, order), order);
      }
      return make_lpr_phi(decode_sequence(spec.params, order), order);
    case Family::convex_from_measure:
      return make_convex_from_measure(decode_measure(spec.params), order);
    case Family::alexander_starlike: {
      // Encoded as the Alexander transform of a sector map.
      const double gamma = require_param(spec.params, "h_alpha");
      return make_starlike_extremal(2.0 * gamma, order);
    }
    case Family::starlike_extremal:
      return make_starlike_extremal(require_param(spec.params, "alpha"), order);
    case Family::ctc_extremal:
      return make_ctc_extremal(require_param(spec.params, "t"), order);
    case Family::ctc_three_atom:
      return make_ctc_three_atom(require_param(spec.params, "beta"),
                                 require_param(spec.params, "t"),
                                 require_param(spec.params, "theta"), order);
    case Family::r_example:
      return make_r_example(order);
    case Family::sqrt_transform: {
      auto inner = spec.params;
      inner.erase("inner_family");
      const auto fam = static_cast<Family>(
          static_cast<int>(require_param(spec.params, "inner_family")));
      return make_sqrt_transform(build_from_spec({fam, inner, order}), order);
    }
    case Family::pfaltzgraff:
      return make_pfaltzgraff_phi(decode_sequence(spec.params, order),
                                  require_param(spec.params, "eps"), order);
    case Family::lpr_composition:
      return make_lpr_composition(require_param(spec.params, "r"),
                                  require_param(spec.params, "eps"),
                                  decode_sequence(spec.params, order), order);
  }
  throw ZooError("build_from_spec: unknown family");
}

}  // namespace hardylab

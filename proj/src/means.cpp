#include "hardylab/means.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <numbers>
#include <thread>

namespace hardylab {

namespace {

int thread_budget() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  if (const char* env = std::getenv("HARDYLAB_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) hw = std::min(hw, cap);
  }
  return hw;
}

constexpr size_t kChunk = 16384;

// Samples |f| on the circle of radius r at n equally spaced angles.
// Chunks are filled in parallel; the data layout is identical for any
// thread count.
std::vector<double> sample_circle(const PointEvaluator& f, double r, int n) {
  std::vector<double> out(static_cast<size_t>(n));
  const double step = 2.0 * std::numbers::pi / n;
  const auto fill = [&](size_t lo, size_t hi) {
    for (size_t i = lo; i < hi; ++i) {
      const complex_t z = std::polar(r, step * static_cast<double>(i));
      out[i] = std::abs(f.eval(z));
    }
  };
  const int threads = thread_budget();
  if (threads <= 1 || out.size() <= kChunk) {
    fill(0, out.size());
  } else {
    std::vector<std::future<void>> tasks;
    const size_t per = (out.size() + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const size_t lo = std::min(out.size(), t * per);
      const size_t hi = std::min(out.size(), lo + per);
      if (lo < hi) {
        tasks.push_back(std::async(std::launch::async, fill, lo, hi));
      }
    }
    for (auto& task : tasks) task.get();
  }
  for (double v : out) {
    if (!std::isfinite(v)) {
      throw NonFiniteSample("means: non-finite sample on circle");
    }
  }
  return out;
}

// Deterministic mean of v[i]^p: fixed-size chunk partials summed in chunk
// order, independent of the thread count.
double mean_pow(const std::vector<double>& v, double p) {
  const size_t n = v.size();
  const size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<double> partial(chunks, 0.0);
  const auto run = [&](size_t c0, size_t c1) {
    for (size_t c = c0; c < c1; ++c) {
      const size_t lo = c * kChunk, hi = std::min(n, lo + kChunk);
      double s = 0.0;
      for (size_t i = lo; i < hi; ++i) s += std::pow(v[i], p);
      partial[c] = s;
    }
  };
  const int threads = std::min<int>(thread_budget(), static_cast<int>(chunks));
  if (threads <= 1) {
    run(0, chunks);
  } else {
    std::vector<std::future<void>> tasks;
    const size_t per = (chunks + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const size_t lo = std::min(chunks, t * per);
      const size_t hi = std::min(chunks, lo + per);
      if (lo < hi) tasks.push_back(std::async(std::launch::async, run, lo, hi));
    }
    for (auto& task : tasks) task.get();
  }
  double total = 0.0;
  for (double s : partial) total += s;
  return total / static_cast<double>(n);
}

struct LadderSamples {
  std::vector<double> abscissa;               // -log(1-r)
  std::vector<std::vector<double>> abs_vals;  // per rung
};

LadderSamples sample_ladder(const PointEvaluator& f,
                            std::span<const double> radii) {
  LadderSamples s;
  for (double r : radii) {
    s.abscissa.push_back(-std::log(1.0 - r));
    s.abs_vals.push_back(sample_circle(f, r, ladder_n_theta(r)));
  }
  return s;
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double rms_residual = 0.0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const size_t n = x.size();
  if (n < 2) throw RegressionIllConditioned("regression: need >= 2 points");
  for (size_t i = 0; i < n; ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
      throw RegressionIllConditioned("regression: non-finite ordinate");
    }
  }
  double xm = 0.0, ym = 0.0;
  for (size_t i = 0; i < n; ++i) {
    xm += x[i];
    ym += y[i];
  }
  xm /= n;
  ym /= n;
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (x[i] - xm) * (x[i] - xm);
    sxy += (x[i] - xm) * (y[i] - ym);
  }
  if (sxx < 1e-12) {
    throw RegressionIllConditioned("regression: abscissa has no spread");
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = ym - fit.slope * xm;
  double ss = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double r = y[i] - fit.slope * x[i] - fit.intercept;
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / n);
  fit.slope_stderr = (n > 2) ? std::sqrt(ss / (n - 2) / sxx) : 0.0;
  return fit;
}

constexpr size_t kFitRungs = 6;  // regression sits on the top rungs

// Fitted slope of log M_p^p over the top rungs.
LineFit gamma_fit(const LadderSamples& s, double p) {
  const size_t n = s.abscissa.size();
  const size_t lo = n > kFitRungs ? n - kFitRungs : 0;
  std::vector<double> x, y;
  for (size_t i = lo; i < n; ++i) {
    x.push_back(s.abscissa[i]);
    y.push_back(std::log(mean_pow(s.abs_vals[i], p)));
  }
  return fit_line(x, y);
}

constexpr double kGammaDeadZone = 0.05;

}  // namespace

std::vector<double> default_radius_ladder() {
  std::vector<double> r;
  for (int k = 3; k <= 12; ++k) r.push_back(1.0 - std::pow(0.5, k));
  return r;
}

int ladder_n_theta(double r) {
  return std::max(2048, static_cast<int>(std::ceil(64.0 / (1.0 - r))));
}

double integral_means(const PointEvaluator& f, double p, double r,
                      int n_theta) {
  if (!(p > 0.0)) throw MeansError("integral_means: p must be positive");
  if (!(r > 0.0 && r < 1.0)) throw MeansError("integral_means: r must lie in (0,1)");
  if (n_theta < 64) throw MeansError("integral_means: n_theta must be >= 64");
  const std::vector<double> v = sample_circle(f, r, n_theta);
  return std::pow(mean_pow(v, p), 1.0 / p);
}

double max_modulus(const PointEvaluator& f, double r, int n_theta) {
  const std::vector<double> v = sample_circle(f, r, n_theta);
  size_t best = 0;
  for (size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = i;
  }
  // One quadratic-interpolation polish step around the grid maximum.
  const size_t n = v.size();
  const double h = 2.0 * std::numbers::pi / n;
  const double vm = v[(best + n - 1) % n], v0 = v[best], vp = v[(best + 1) % n];
  double result = v0;
  const double denom = vm - 2.0 * v0 + vp;
  if (denom < 0.0) {
    const double dt = 0.5 * h * (vm - vp) / denom;
    const double theta = h * static_cast<double>(best) + dt;
    result = std::max(result, std::abs(f.eval(std::polar(r, theta))));
  }
  return result;
}

MeansProfile means_profile(const PointEvaluator& f, double p,
                           std::span<const double> radii) {
  MeansProfile prof;
  prof.p = p;
  prof.evaluator_kind = f.kind;
  for (double r : radii) {
    const int n = ladder_n_theta(r);
    prof.radii.push_back(r);
    prof.n_theta.push_back(n);
    prof.values.push_back(integral_means(f, p, r, n));
  }
  for (size_t i = 0; i < prof.values.size(); ++i) {
    if (prof.values[i] < 0.0) throw MeansError("means_profile: negative mean");
    if (i > 0 && prof.values[i] < prof.values[i - 1] * (1.0 - 1e-9)) {
      throw MeansError("means_profile: M_p(r) not nondecreasing in r");
    }
  }
  return prof;
}

ExponentEstimate blowup_exponent(const PointEvaluator& f, double p,
                                 std::span<const double> radii) {
  const LadderSamples s = sample_ladder(f, radii);
  const LineFit fit = gamma_fit(s, p);
  ExponentEstimate est;
  est.gamma = fit.slope;
  est.stderr_ = fit.slope_stderr;
  return est;
}

ExponentEstimate hardy_critical_exponent(const PointEvaluator& f, double p_lo,
                                         double p_hi,
                                         std::span<const double> radii) {
  if (!(p_lo > 0.0 && p_hi > p_lo)) {
    throw NoBracket("hardy_critical_exponent: invalid bracket");
  }
  const LadderSamples s = sample_ladder(f, radii);
  if (gamma_fit(s, p_lo).slope > kGammaDeadZone) {
    throw NoBracket("hardy_critical_exponent: means already blow up at p_lo");
  }
  const LineFit hi_fit = gamma_fit(s, p_hi);
  if (hi_fit.slope <= kGammaDeadZone) {
    throw NoBracket("hardy_critical_exponent: no blow-up at p_hi");
  }

  // Invert gamma ~ p a - 1 at the bracket top, then re-measure at 2 p_hat
  // where the inversion is nearly unbiased.
  double p_star = p_hi / (1.0 + hi_fit.slope);
  LineFit used = hi_fit;
  const LineFit second = gamma_fit(s, 2.0 * p_star);
  if (second.slope > 0.15) {
    p_star = 2.0 * p_star / (1.0 + second.slope);
    used = second;
  }

  ExponentEstimate est;
  est.gamma = used.slope;
  est.stderr_ = used.slope_stderr;
  est.p_star = p_star;
  const double rel =
      std::max(2.0 * used.slope_stderr / (1.0 + used.slope), 0.005);
  est.bracket = {p_star * (1.0 - rel), p_star * (1.0 + rel)};
  return est;
}

PrawitzCheck prawitz_check(const PointEvaluator& f, double p, double r,
                           int n_quad) {
  if (!(p > 0.0) || !(r > 0.0 && r < 1.0)) {
    throw MeansError("prawitz_check: need p > 0 and r in (0,1)");
  }
  PrawitzCheck out;
  out.lhs = std::pow(integral_means(f, p, r, ladder_n_theta(r)), p);

  // Substituting t = r u^(1/p) turns the right side into
  // int_0^1 M_inf^p(r u^(1/p)) / u du, whose integrand tends to r^p at
  // u = 0 because M_inf(t) ~ t there. Composite Simpson on [0, 1].
  const int nodes = 2 * std::max(8, n_quad / 16);
  const double h = 1.0 / nodes;
  double sum = 0.0;
  for (int i = 0; i <= nodes; ++i) {
    const double u = i * h;
    double g;
    if (u == 0.0) {
      g = std::pow(r, p);
    } else {
      const double t = r * std::pow(u, 1.0 / p);
      g = std::pow(max_modulus(f, t, 1024), p) / u;
    }
    if (!std::isfinite(g)) {
      throw QuadratureDiverged("prawitz_check: t-integral diverged");
    }
    const double w = (i == 0 || i == nodes) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    sum += w * g;
  }
  out.rhs = sum * h / 3.0;
  out.holds = out.lhs <= out.rhs * (1.0 + 1e-6);
  return out;
}

double hl_smoothness_rate(const PointEvaluator& f_prime, double p,
                          std::span<const double> radii) {
  if (!(p >= 1.0)) throw MeansError("hl_smoothness_rate: p must be >= 1");
  const LadderSamples s = sample_ladder(f_prime, radii);
  const size_t n = s.abscissa.size();
  const size_t lo = n > kFitRungs ? n - kFitRungs : 0;
  std::vector<double> x, y;
  for (size_t i = lo; i < n; ++i) {
    x.push_back(s.abscissa[i]);
    y.push_back(std::log(mean_pow(s.abs_vals[i], p)) / p);  // log M_p
  }
  const LineFit power = fit_line(x, y);

  // Power-with-log alternative y = g x + log(x + beta) + c, beta >= 0.
  LineFit best_log;
  bool have_log = false;
  std::vector<double> y2(y.size());
  for (int i = 0; i <= 264; ++i) {
    const double beta = (i <= 160) ? 0.05 * i : 8.0 + 0.5 * (i - 160);
    for (size_t j = 0; j < y.size(); ++j) {
      y2[j] = y[j] - std::log(x[j] + beta);
    }
    const LineFit fit = fit_line(x, y2);
    if (!have_log || fit.rms_residual < best_log.rms_residual) {
      best_log = fit;
      have_log = true;
    }
  }

  const bool log_growth = best_log.rms_residual < 0.25 * power.rms_residual;
  return 1.0 - (log_growth ? best_log.slope : power.slope);
}

RadialTrace radial_trace(const PointEvaluator& f, double theta,
                         std::span<const double> radii) {
  RadialTrace tr;
  tr.theta = theta;
  for (double r : radii) {
    tr.radii.push_back(r);
    tr.abs_values.push_back(std::abs(f.eval(std::polar(r, theta))));
  }
  double mn = tr.abs_values.empty() ? 0.0 : tr.abs_values[0], mx = mn;
  int flips = 0;
  double prev_slope = 0.0;
  for (size_t i = 1; i < tr.abs_values.size(); ++i) {
    mn = std::min(mn, tr.abs_values[i]);
    mx = std::max(mx, tr.abs_values[i]);
    const double slope = tr.abs_values[i] - tr.abs_values[i - 1];
    if (i > 1 && slope * prev_slope < 0.0) ++flips;
    if (slope != 0.0) prev_slope = slope;
  }
  tr.log_range = (mn > 0.0 && mx > 0.0) ? std::log(mx / mn) : 0.0;
  tr.local_extrema = flips;
  return tr;
}

}  // namespace hardylab

#include "hardylab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace hardylab {

namespace {

double wrap_to(double angle, double anchor) {
  while (angle - anchor > std::numbers::pi) angle -= 2.0 * std::numbers::pi;
  while (angle - anchor < -std::numbers::pi) angle += 2.0 * std::numbers::pi;
  return angle;
}

}  // namespace

complex_t pre_schwarzian_A(const PointEvaluator& log_deriv, complex_t zeta) {
  if (std::abs(zeta) >= 1.0) {
    throw GeometryError("pre_schwarzian_A: zeta must lie in the disk");
  }
  const complex_t q = log_deriv.eval(zeta);
  if (!std::isfinite(q.real()) || !std::isfinite(q.imag())) {
    throw DerivativeVanishes("pre_schwarzian_A: f''/f' not finite");
  }
  return 0.5 * (1.0 - std::norm(zeta)) * q - std::conj(zeta);
}

complex_t pre_schwarzian_A(const TaylorSeries& f, complex_t zeta) {
  const TaylorSeries fp = derivative(f);
  const complex_t dp = eval(fp, zeta);
  if (std::abs(dp) < 1e-14) {
    throw DerivativeVanishes("pre_schwarzian_A: f'(zeta) vanishes");
  }
  const complex_t dpp = eval(derivative(fp), zeta);
  return 0.5 * (1.0 - std::norm(zeta)) * dpp / dp - std::conj(zeta);
}

TaylorSeries koebe_transform(const TaylorSeries& f, complex_t zeta, int order) {
  if (std::abs(zeta) >= 1.0) {
    throw GeometryError("koebe_transform: zeta must lie in the disk");
  }
  const complex_t fprime = eval(derivative(f), zeta);
  if (std::abs(fprime) < 1e-300) {
    throw DerivativeVanishes("koebe_transform: f'(zeta) vanishes");
  }
  // m(z) = zeta + (1-|zeta|^2) z sum_k (-conj(zeta) z)^k as a z-series.
  std::vector<complex_t> mc(order + 1, complex_t{});
  mc[0] = zeta;
  const double d = 1.0 - std::norm(zeta);
  complex_t g = 1.0;
  for (int k = 1; k <= order; ++k) {
    mc[k] = d * g;
    g *= -std::conj(zeta);
  }
  const TaylorSeries m(std::move(mc));
  // Horner with a nonzero inner constant term; the neglected tail of f
  // contributes O(|zeta|^N) to every coefficient.
  TaylorSeries acc = TaylorSeries::constant(f.coeff(f.order()), order);
  for (int k = f.order() - 1; k >= 0; --k) {
    acc = mul(acc, m);
    std::vector<complex_t> c(acc.coeffs().begin(), acc.coeffs().end());
    c[0] += f.coeff(k);
    acc = TaylorSeries(std::move(c));
  }
  std::vector<complex_t> c(acc.coeffs().begin(), acc.coeffs().end());
  c[0] = 0.0;  // subtract f(zeta)
  const complex_t scale_inv = 1.0 / (d * fprime);
  for (complex_t& x : c) x *= scale_inv;
  return TaylorSeries(std::move(c));
}

LowerOrderEstimate lower_order(const PointEvaluator& log_deriv,
                               int grid_levels, int descent_steps) {
  // For series-backed evaluators the grid must stay within the reliable
  // radius; probe outward until evaluation refuses.
  struct Sample {
    double value;
    complex_t at;
  };
  std::vector<Sample> best;
  long count = 0;
  const auto consider = [&](complex_t zeta) {
    double v;
    try {
      v = std::abs(pre_schwarzian_A(log_deriv, zeta));
    } catch (const SeriesError&) {
      return;
    } catch (const DerivativeVanishes&) {
      return;
    }
    ++count;
    best.push_back({v, zeta});
    std::sort(best.begin(), best.end(),
              [](const Sample& a, const Sample& b) { return a.value < b.value; });
    if (best.size() > 5) best.pop_back();
  };

  consider(complex_t{});
  for (int k = 1; k <= grid_levels; ++k) {
    const double rho = std::tanh(k / 8.0);
    const int n_phi =
        std::max(8, static_cast<int>(std::ceil(12.0 / (1.0 - rho))));
    for (int j = 0; j < n_phi; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / n_phi;
      consider(std::polar(rho, phi));
    }
  }
  if (best.empty()) {
    throw GeometryError("lower_order: no evaluable grid points");
  }

  LowerOrderEstimate est;
  est.method = descent_steps > 0
                   ? LowerOrderEstimate::Method::grid_plus_local_descent
                   : LowerOrderEstimate::Method::grid;
  // Adaptive coordinate descent from the best grid points.
  Sample overall = best.front();
  for (const Sample start : best) {
    Sample cur = start;
    double step = 0.05;
    for (int it = 0; it < descent_steps && step > 1e-12; ++it) {
      bool moved = false;
      for (const complex_t dir :
           {complex_t{1, 0}, complex_t{-1, 0}, complex_t{0, 1}, complex_t{0, -1}}) {
        const complex_t cand = cur.at + step * dir;
        if (std::abs(cand) >= 1.0) continue;
        double v;
        try {
          v = std::abs(pre_schwarzian_A(log_deriv, cand));
        } catch (const std::runtime_error&) {
          continue;
        }
        ++count;
        if (v < cur.value) {
          cur = {v, cand};
          moved = true;
          break;
        }
      }
      if (!moved) step *= 0.5;
    }
    if (cur.value < overall.value) overall = cur;
  }
  est.beta = overall.value;
  est.argmin = overall.at;
  est.samples = count;
  return est;
}

double radial_A_limit(const PointEvaluator& log_deriv, complex_t lambda0,
                      std::span<const double> radii) {
  std::vector<double> a;
  for (double r : radii) {
    const complex_t v = pre_schwarzian_A(log_deriv, r * lambda0);
    // Rotating the pole to 1 sends A_f(r lambda0) to lambda0 * A; the
    // limit of that rotated value along the radius is real.
    a.push_back((lambda0 * v).real());
  }
  if (a.size() < 3) {
    throw GeometryError("radial_A_limit: need at least 3 radii");
  }
  // Two Richardson stages for a halving ladder: error c(1-r) then O((1-r)^2).
  std::vector<double> r1(a.size() - 1), r2(a.size() - 2);
  for (size_t i = 0; i + 1 < a.size(); ++i) r1[i] = 2.0 * a[i + 1] - a[i];
  for (size_t i = 0; i + 1 < r1.size(); ++i) {
    r2[i] = (4.0 * r1[i + 1] - r1[i]) / 3.0;
  }
  return r2.back();
}

HalfTangentEstimate half_tangents(const PointEvaluator& f, double t0,
                                  int j_min, int j_max) {
  if (j_max - j_min < 2) {
    throw GeometryError("half_tangents: need at least 3 sample levels");
  }
  HalfTangentEstimate est;
  est.t0 = t0;
  for (const double side : {+1.0, -1.0}) {
    std::vector<complex_t> w;
    for (int j = j_min; j <= j_max; ++j) {
      const double h = std::pow(0.5, j);
      const complex_t z = std::polar(1.0 - h * h, t0 + side * h);
      w.push_back(f.eval(z));
    }
    // Direction of travel toward the pole; w[k+1] is deeper than w[k].
    std::vector<double> dirs;
    for (size_t k = 0; k + 1 < w.size(); ++k) {
      dirs.push_back(std::arg(w[k + 1] - w[k]));
    }
    for (size_t k = 1; k < dirs.size(); ++k) {
      dirs[k] = wrap_to(dirs[k], dirs[k - 1]);
      if (std::abs(dirs[k] - dirs[k - 1]) > 0.5 * std::numbers::pi) {
        throw ArgUnwrapFailure(
            "half_tangents: argument jump above pi/2 along approach path");
      }
    }
    (side > 0 ? est.theta_plus : est.theta_minus) = dirs.back();
  }
  est.theta_minus = wrap_to(est.theta_minus, est.theta_plus);
  est.delta = est.theta_plus - est.theta_minus;
  // delta lives in [0, pi]; reject readings that violate it beyond the
  // accuracy of the chord extrapolation itself.
  if (est.delta < -1e-2 || est.delta > std::numbers::pi + 1e-2) {
    throw GeometryError("half_tangents: delta outside [0, pi]");
  }
  return est;
}

HalfTangentTrace half_tangent_trace(const PointEvaluator& f, double t0,
                                    int j_min, int j_max) {
  HalfTangentTrace trace;
  for (const double side : {-1.0, +1.0}) {
    for (int j = j_max; j >= j_min; --j) {
      const double h = side * std::pow(0.5, j);
      const complex_t z = std::polar(1.0 - h * h, t0 + h);
      trace.t.push_back(t0 + h);
      trace.arg_f.push_back(std::arg(f.eval(z)));
    }
    if (side < 0) {
      std::reverse(trace.t.begin(), trace.t.end());
      std::reverse(trace.arg_f.begin(), trace.arg_f.end());
    }
  }
  return trace;
}

SectorContainment sector_containment(const PointEvaluator& f, double aperture,
                                     int samples, double t0) {
  if (!(aperture > 0.0 && aperture <= std::numbers::pi)) {
    throw GeometryError("sector_containment: aperture must lie in (0, pi]");
  }
  // Geometric offsets from the pole parameter, both sides, spanning
  // [4e-15, pi]; near-boundary radius delta ~ u^2 keeps the samples close
  // to the boundary curve without touching the pole.
  const int per_side = std::max(samples / 2, 8);
  std::vector<complex_t> w;
  w.reserve(2 * per_side);
  const double u_min = 4e-15, u_max = std::numbers::pi;
  const double ratio = std::log(u_max / u_min) / (per_side - 1);
  for (int i = 0; i < per_side; ++i) {
    const double u = u_min * std::exp(ratio * i);
    const double delta = std::clamp(u * u / 16.0, 1e-15, 1e-3);
    for (const double side : {+1.0, -1.0}) {
      w.push_back(f.eval(std::polar(1.0 - delta, t0 + side * u)));
    }
  }

  // Image direction at the pole = sector bisector estimate.
  const double psi =
      std::arg(f.eval(std::polar(1.0 - 1e-10, t0 + 2e-5)) +
               f.eval(std::polar(1.0 - 1e-10, t0 - 2e-5)));
  const complex_t e_psi = std::polar(1.0, psi);

  const double half = 0.5 * aperture;
  const auto fits = [&](complex_t apex) {
    for (const complex_t& p : w) {
      const complex_t rel = (p - apex) * std::conj(e_psi);
      if (std::abs(std::arg(rel)) > half) return false;
    }
    return true;
  };

  // Apex slides backward along the bisector; the range is capped so that
  // an undersized aperture cannot be rescued by an arbitrarily far apex.
  if (fits(complex_t{})) return {true, complex_t{}};
  for (double s = 0.0625; s <= 256.0; s *= std::sqrt(2.0)) {
    const complex_t apex = -s * e_psi;
    if (fits(apex)) return {true, apex};
  }
  return {false, complex_t{}};
}

}  // namespace hardylab

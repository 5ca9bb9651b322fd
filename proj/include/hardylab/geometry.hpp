#pragma once

#include <span>
#include <vector>

#include "hardylab/series.hpp"

namespace hardylab {

class GeometryError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};
class DerivativeVanishes : public GeometryError {
  using GeometryError::GeometryError;
};
class ArgUnwrapFailure : public GeometryError {
  using GeometryError::GeometryError;
};

/// A_f(zeta) = (1/2)(1-|zeta|^2) f''(zeta)/f'(zeta) - conj(zeta), the second
/// coefficient of the Koebe transform of f at zeta. `log_deriv` evaluates
/// f''/f'.
complex_t pre_schwarzian_A(const PointEvaluator& log_deriv, complex_t zeta);

/// Series overload: f''/f' computed by Horner evaluation of the series.
complex_t pre_schwarzian_A(const TaylorSeries& f, complex_t zeta);

/// Koebe transform F_zeta(z) = (f(m(z)) - f(zeta)) / ((1-|zeta|^2) f'(zeta)),
/// m(z) = (zeta + z)/(1 + conj(zeta) z), as a series of the given order.
/// Coefficients carry a truncation tail O(|zeta|^N); keep |zeta| moderate.
TaylorSeries koebe_transform(const TaylorSeries& f, complex_t zeta, int order);

struct LowerOrderEstimate {
  enum class Method { grid, grid_plus_local_descent };

  double beta = 0.0;          // upper bound for inf |A_f| from samples
  complex_t argmin;
  long samples = 0;
  Method method = Method::grid_plus_local_descent;
};

/**
 * Estimate of the lower order inf_zeta |A_f(zeta)|, from a hyperbolically
 * uniform grid (rho = tanh(k/8), angle count ~ 1/(1-rho)) refined by
 * adaptive coordinate descent from the best grid points. An infimum cannot
 * be certified from samples; the estimate is an upper bound for beta.
 */
LowerOrderEstimate lower_order(const PointEvaluator& log_deriv,
                               int grid_levels = 24, int descent_steps = 200);

/// Extrapolated limit of A_f along the radius toward lambda0 (two
/// Richardson stages on the ladder; the error is O(1-r) for atom measures).
double radial_A_limit(const PointEvaluator& log_deriv, complex_t lambda0,
                      std::span<const double> radii);

struct HalfTangentEstimate {
  double theta_plus = 0.0;
  double theta_minus = 0.0;
  double delta = 0.0;  // theta_plus - theta_minus
  double t0 = 0.0;
};

/**
 * Half-tangent arguments theta± = lim arg f(e^it) as t -> t0±, for f
 * unbounded at e^(i t0). Boundary-approaching samples z = (1-h^2) e^(i(t0±h)),
 * h = 2^-j, are taken on both sides; the limit of arg f is extracted from
 * the direction of consecutive differences, which converges even in the
 * strip case where arg f itself approaches its limit only at a 1/log rate.
 * The argument is unwrapped along each path and jumps above pi/2 fail.
 */
HalfTangentEstimate half_tangents(const PointEvaluator& f, double t0,
                                  int j_min = 6, int j_max = 13);

/// Sampled (t, arg f) pairs along the two boundary-approaching paths used
/// by half_tangents; dumped as CSV for inspection.
struct HalfTangentTrace {
  std::vector<double> t;
  std::vector<double> arg_f;
};

HalfTangentTrace half_tangent_trace(const PointEvaluator& f, double t0,
                                    int j_min = 6, int j_max = 13);

struct SectorContainment {
  bool contained = false;
  complex_t apex;
};

/**
 * Searches for a sector of the given aperture containing the sampled image
 * of f. Boundary samples cluster geometrically toward the pole parameter
 * t0; apex candidates slide along the ray opposite the image direction at
 * the pole, up to a fixed search range (so containment at an undersized
 * aperture is not faked by a distant apex).
 */
SectorContainment sector_containment(const PointEvaluator& f, double aperture,
                                     int samples, double t0 = 0.0);

}  // namespace hardylab

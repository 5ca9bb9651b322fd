#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hardylab/measure.hpp"
#include "hardylab/series.hpp"

namespace hardylab {

class ZooError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};
class ParamOutOfRange : public ZooError {
  using ZooError::ZooError;
};
/// (r, eps) outside the admissible set of the dilated-Koebe composition.
class NotInOmega : public ZooError {
  using ZooError::ZooError;
};

enum class Family {
  sector,
  strip,
  koebe_dilated,
  half_plane,
  polylog,
  lpr_phi,
  convex_from_measure,
  alexander_starlike,
  starlike_extremal,
  ctc_extremal,
  ctc_three_atom,
  r_example,
  sqrt_transform,
  pfaltzgraff,
  lpr_composition,
};

std::string family_name(Family f);
Family family_from_name(const std::string& name);

/// Symbolic descriptor of a constructed function; serializes to JSON as
/// {family, params, order} with a bit-exact round-trip.
struct FunctionSpec {
  Family family = Family::sector;
  std::map<std::string, double> params;
  int order = 64;
};

/// Strictly increasing positive exponents with first entry 1, so that the
/// lacunary integrand exp((1/2) sum z^{n_p}) always has a2 = 1/4.
struct LacunarySequence {
  std::vector<long> exponents;

  explicit LacunarySequence(std::vector<long> exps);
  /// Geometric default 1, ratio, ratio^2, ... capped at max_exponent.
  static LacunarySequence geometric(long ratio, long max_exponent);
};

/**
 * A constructed disk function: truncated series plus point evaluators.
 * `value` and `deriv` evaluate f and f'; `log_deriv` evaluates f''/f'.
 * Evaluators are closed-form where the family admits one and fall back to
 * Horner evaluation of the series otherwise.
 */
struct ZooFunction {
  FunctionSpec spec;
  TaylorSeries series;
  PointEvaluator value;
  PointEvaluator deriv;
  PointEvaluator log_deriv;
  std::map<std::string, double> metadata;

  complex_t a2() const { return series.coeff(2); }
  complex_t a3() const { return series.coeff(3); }
};

// --- constructors -----------------------------------------------------------

/// Sector map of opening alpha*pi, alpha in [0, 1]; alpha = 0 is the strip
/// z -> (1/2) log((1+z)/(1-z)).
ZooFunction make_sector(double alpha, int order);

/// Strip map -l_a(-z) with l_a(z) = (i/(2 sqrt(1-a^2))) log((1-lz)/(1-conj(l)z)),
/// l = a + i sqrt(1-a^2), for alpha in [0, 1). The pi-rotation keeps a1 = 1,
/// puts a2 = -alpha, and makes the value at +r the minimum modulus over the
/// circle (the growth-envelope role). The rotation is recorded in metadata.
ZooFunction make_strip(double alpha, int order);

/// k_r(z) = (1/r) k(rz) with k the Koebe function; r in (0, 1].
ZooFunction make_koebe_dilated(double r, int order);

/// z / (1 - z).
ZooFunction make_half_plane(int order);

/// sum z^n / n^t, t >= 0.
ZooFunction make_polylog(double t, int order);

/// Lacunary integral Phi(z) = int_0^z exp((1/2) sum w^{n_p}) dw.
ZooFunction make_lpr_phi(const LacunarySequence& seq, int order);

/// Phi' as a raw (non-normalized) series with closed-form evaluator.
ZooFunction make_lpr_phi_prime(const LacunarySequence& seq, int order);

/// Convex map with Herglotz measure mu: f' = prod (1 - l_j z)^(-2 t_j).
ZooFunction make_convex_from_measure(const DiscreteMeasure& mu, int order);

/// Alexander transform z h'(z) of a normalized convex series.
TaylorSeries alexander_starlike(const TaylorSeries& h_convex);

/// z / ((1-z)^(1+a/2) (1+z)^(1-a/2)), a in [0, 2]; a2 = a.
ZooFunction make_starlike_extremal(double alpha, int order);

/// t k(z) + ((1-t)/2) log((1+z)/(1-z)), t in (0, 1]; a2 = 2t.
ZooFunction make_ctc_extremal(double t, int order);

/// Close-to-convex map with f' = s_beta'(z) * [three-atom Caratheodory h];
/// atoms t, t, 1-2t at exp(i theta), exp(-i theta), 1.
ZooFunction make_ctc_three_atom(double beta, double t, double theta, int order);

/// z / (1 + z^2).
ZooFunction make_r_example(int order);

/// Odd square-root transform g(z) = sqrt(f(z^2)) of a normalized series.
TaylorSeries sqrt_transform(const TaylorSeries& f, int order);

/// Square-root transform with evaluators, for a source with closed forms.
ZooFunction make_sqrt_transform(const ZooFunction& f, int order);

/// g(z) = int_0^z (f'(w))^eps dw, univalence regime eps in (0, 1/4].
TaylorSeries pfaltzgraff_transform(const TaylorSeries& f, double eps, int order);

/// Pfaltzgraff transform of the lacunary Phi, with closed-form derivative.
ZooFunction make_pfaltzgraff_phi(const LacunarySequence& seq, double eps,
                                 int order);

/// The composition k_r of the Pfaltzgraff transform of Phi; requires
/// (r, eps) in Omega = {r in (0,1), 0 < eps <= min(eps0(r), 1/4)}.
/// Second coefficient 2r + eps/4, verified to 1e-12 at construction.
ZooFunction make_lpr_composition(double r, double eps,
                                 const LacunarySequence& seq, int order);

/// Unique eps0 with 2^eps0 / (1 - 3 eps0) = 1/r, by bisection to 1e-12.
double eps0_solve(double r);

/// Build from a serialized spec (CLI entry point).
ZooFunction build_from_spec(const FunctionSpec& spec);

// --- evaluator helpers ------------------------------------------------------

/// Evaluator of int_0^z g(w) dw by composite Gauss-Legendre on dyadically
/// refined radial segments; accurate up to |z| -> 1 for integrable g.
PointEvaluator antiderivative_evaluator(PointEvaluator g);

/// Evaluator of the ratio numer(z)/denom(z) of two series (Horner kind).
PointEvaluator horner_ratio_evaluator(TaylorSeries numer, TaylorSeries denom);

}  // namespace hardylab

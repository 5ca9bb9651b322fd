#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "hardylab/geometry.hpp"
#include "hardylab/means.hpp"
#include "hardylab/measure.hpp"
#include "hardylab/zoo.hpp"

namespace hardylab {

class CheckError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};
class NotZeroA2 : public CheckError {
  using CheckError::CheckError;
};

/// Structured outcome of one inequality/identity check. `passed` holds
/// exactly when margin >= -tol; positive margins quantify slack.
struct CheckResult {
  std::string check_id;
  FunctionSpec function_spec;
  std::map<std::string, double> params;
  double margin = 0.0;
  double tol = 0.0;
  bool passed = false;
  long samples = 0;
};

CheckResult make_check_result(std::string check_id, const FunctionSpec& spec,
                              std::map<std::string, double> params,
                              double margin, double tol, long samples);

/// The shared evaluation grid: 24 radii k/25 x 256 angles.
std::vector<complex_t> canonical_grid();

// Closed-form growth/distortion envelopes.
double sector_bound(double alpha, double r);        // s_alpha(r)
double sector_deriv_bound(double alpha, double r);  // s_alpha'(r)
double strip_bound(double alpha, double r);         // l_alpha(r)
double strip_deriv_bound(double alpha, double r);   // l_alpha'(r)

/// Growth and distortion sandwich l <= |f|, |f'| <= s at alpha = |a2|,
/// checked on the canonical grid; returns {growth, distortion}.
std::pair<CheckResult, CheckResult> check_gronwall(const ZooFunction& f);

/// Convex coefficient bound |a_n| <= exp((|a2|^2-1)/2) together with the
/// Marx-Strohhaecker grid bound Re(zf'/f) > 1/2 and the full
/// Lebedev-Milin chain driving the proof.
CheckResult check_coeff_bound(const ZooFunction& f, int order);

/// Growth order of convex coefficients: reports sup n^(1-|a2|) |a_n|; for
/// sector maps additionally checks n^(1-alpha) a_n -> 2^(alpha-1)/Gamma(1+alpha).
CheckResult check_coeff_asymptotics(const ZooFunction& f, int n_max);

/// |a3| <= (1+2|a2|^2)/3 and |a3 - a2^2| <= (1-|a2|^2)/3; the equality case
/// is flagged by family provenance (sector rotations).
CheckResult check_a3_bounds(const ZooFunction& f);

/// Distortion bound for a2 = 0 convex maps, plus the Schwarz-Pick bound on
/// the reconstructed psi with psi(0) = 3 a3.
CheckResult check_distortion_a2zero(const ZooFunction& f);

/// Pre-Schwarzian bound (1-|z|^2)|f''/f'| <= 2(1+|a2|) on the canonical grid.
CheckResult check_pre_schwarzian_bound(const ZooFunction& f);

/// Critical-exponent table for the extremal families; each entry compares
/// the measured p* against its sharp prediction at 5% relative tolerance.
std::vector<CheckResult> check_hardy_table();

struct HaymanConstants {
  double lambda = 0.0;
  double gamma = 0.0;
};

/// lambda = 1/(2 - sqrt(2-alpha)), gamma = 4 lambda^2 e^(2-4 lambda); the
/// limit of (1-r)^2 M_inf(r, f) for the Gronwall-problem extremals.
HaymanConstants hayman_gamma(double alpha);

/// Gamma function for x > 0 (Lanczos approximation, g = 7).
double gamma_function(double x);

/// Random measure with 2..5 atoms: uniform arguments, Dirichlet weights.
DiscreteMeasure random_measure(std::mt19937_64& rng, int min_atoms = 2,
                               int max_atoms = 5);

/// Seeded randomized suite over convex maps from random measures: Gronwall
/// sandwich, coefficient bound, a3 bounds and the pre-Schwarzian bound.
/// The order keeps series truncation tails below the 1e-9 margin slack at
/// the outer rim of the canonical grid.
std::vector<CheckResult> run_convex_suite(std::uint64_t seed, int n_random,
                                          int order = 896);

/// Equality-case margins (sector/half-plane families).
std::vector<CheckResult> run_equality_suite();

/// convex + equality + hardy table.
std::vector<CheckResult> run_all_checks(std::uint64_t seed, int n_random);

struct AppendixSearchOutcome {
  long attempted = 0;
  long hypothesis_met = 0;
  long violations = 0;
};

/**
 * Randomized adversarial search for counterexamples to the two-antipodal-
 * atom conclusion: random measures with mass >= 1/2 at one atom, with the
 * remainder steered toward zero first moment where that is feasible (a
 * Frank-Wolfe pass over the weight simplex plus direct antipodal
 * constructions). Violations should be impossible.
 */
AppendixSearchOutcome appendix_random_search(std::uint64_t seed, long trials,
                                             double tol = 1e-9);

}  // namespace hardylab

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hardylab/series.hpp"

namespace hardylab {

class MeasureError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};
class InvalidMeasure : public MeasureError {
  using MeasureError::MeasureError;
};
/// Asked for the angle at infinity at a point carrying mass < 1/2.
class NoPoleMass : public MeasureError {
  using MeasureError::MeasureError;
};

struct Atom {
  complex_t position;  // unimodular
  double weight = 0.0;
};

/**
 * Finite atomic probability measure on the unit circle. Validation enforces
 * |position| = 1 to 1e-14, positive weights summing to 1 to 1e-14; atoms
 * closer than 1e-12 in arc length are merged.
 */
class DiscreteMeasure {
 public:
  explicit DiscreteMeasure(std::vector<Atom> atoms);

  /// Convenience: atoms given as (angle/pi, weight) pairs.
  static DiscreteMeasure from_args_over_pi(
      const std::vector<std::pair<double, double>>& atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }

  /// Mass of the atom at lambda (within the merge tolerance), 0 if none.
  double mass_at(complex_t lambda) const;

 private:
  std::vector<Atom> atoms_;  // sorted by argument
};

/// k-th moment  sum_j t_j lambda_j^k.
complex_t moment(const DiscreteMeasure& mu, int k);

/// Carathéodory function h(z) = int (1 + lz)/(1 - lz) dmu(l) as a series:
/// c_0 = 1, c_n = 2 * moment(mu, n).
TaylorSeries caratheodory_series(const DiscreteMeasure& mu, int order);

/// Closed-form evaluator for the same h.
PointEvaluator caratheodory_evaluator(const DiscreteMeasure& mu);

/// Boundary rotation 2*pi*mu(I) of the half-open parameter arc I = [t_a, t_b)
/// (radians; t_b - t_a >= 2*pi means the full circle).
double boundary_rotation(const DiscreteMeasure& mu, double t_a, double t_b);

/// Angle at infinity (2*mu(lambda0) - 1)*pi of the convex map generated by
/// mu, valid when lambda0 carries the pole mass mu(lambda0) >= 1/2.
double angle_at_infinity_measure(const DiscreteMeasure& mu, complex_t lambda0);

struct AppendixCheckOutcome {
  bool conforms = true;
  std::string witness;  // nonempty on violation
};

/// Checks the two-antipodal-half-atoms conclusion for measures with
/// |first moment| <= tol and an atom of mass >= 1/2 - tol. Measures that do
/// not meet the hypothesis conform vacuously.
AppendixCheckOutcome appendix_theorem_check(const DiscreteMeasure& mu,
                                            double tol = 1e-9);

}  // namespace hardylab

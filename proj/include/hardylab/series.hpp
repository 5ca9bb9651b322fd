#pragma once

#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hardylab {

using complex_t = std::complex<double>;

class SeriesError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A non-finite coefficient was produced or supplied.
class NonFiniteCoefficient : public SeriesError {
  using SeriesError::SeriesError;
};
/// Division by a series with vanishing constant term.
class ZeroConstantTerm : public SeriesError {
  using SeriesError::SeriesError;
};
/// Composition with an inner series whose constant term is nonzero.
class InnerConstantNonzero : public SeriesError {
  using SeriesError::SeriesError;
};
/// log of a series whose constant term is not 1.
class LogConstantNotOne : public SeriesError {
  using SeriesError::SeriesError;
};
/// Fractional power of a series whose constant term is not 1.
class ConstantNotOne : public SeriesError {
  using SeriesError::SeriesError;
};

/**
 * Truncated complex power series sum_{n=0}^{N} c_n z^n.
 *
 * Every value is immutable after construction and all operations are pure,
 * so series can be shared across threads freely. Arithmetic results carry
 * order = min of the operand orders; unknown coefficients are never
 * fabricated. Construction rejects NaN/Inf coefficients.
 */
class TaylorSeries {
 public:
  explicit TaylorSeries(std::vector<complex_t> coeffs);

  static TaylorSeries zero(int order);
  static TaylorSeries constant(complex_t value, int order);
  /// The series z (identity map), to the given order.
  static TaylorSeries identity(int order);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  /// Coefficient of z^n; zero for n beyond the truncation order.
  complex_t coeff(int n) const {
    return (n >= 0 && n < static_cast<int>(coeffs_.size())) ? coeffs_[n]
                                                            : complex_t{};
  }
  std::span<const complex_t> coeffs() const { return coeffs_; }

  /// Copy truncated (or zero-extended) to the given order.
  TaylorSeries truncated(int order) const;

 private:
  std::vector<complex_t> coeffs_;
};

TaylorSeries add(const TaylorSeries& a, const TaylorSeries& b);
TaylorSeries sub(const TaylorSeries& a, const TaylorSeries& b);
TaylorSeries scale(const TaylorSeries& a, complex_t factor);

/// Cauchy product truncated to the min of the operand orders.
TaylorSeries mul(const TaylorSeries& a, const TaylorSeries& b);

/// Power-series quotient q with mul(q, b) = a to order. Requires b(0) != 0.
TaylorSeries div(const TaylorSeries& a, const TaylorSeries& b);

/// Horner-style composition outer(inner). Requires inner(0) = 0.
/// Cost is O(N^2) per Horner step, O(N^3) total.
TaylorSeries compose(const TaylorSeries& outer, const TaylorSeries& inner);

TaylorSeries exp(const TaylorSeries& a);

/// Principal branch pinned by log 1 = 0; requires a(0) = 1.
TaylorSeries log(const TaylorSeries& a);

/// exp(alpha * log a); requires a(0) = 1. Agrees with repeated
/// multiplication for integer alpha.
TaylorSeries pow(const TaylorSeries& a, double alpha);

TaylorSeries derivative(const TaylorSeries& a);
/// Term-wise antiderivative with constant term 0.
TaylorSeries integrate(const TaylorSeries& a);

/// Horner evaluation at a point of the disk.
complex_t eval(const TaylorSeries& a, complex_t z);

inline TaylorSeries operator+(const TaylorSeries& a, const TaylorSeries& b) {
  return add(a, b);
}
inline TaylorSeries operator-(const TaylorSeries& a, const TaylorSeries& b) {
  return sub(a, b);
}
inline TaylorSeries operator*(const TaylorSeries& a, const TaylorSeries& b) {
  return mul(a, b);
}

/**
 * A point evaluator for a disk function: either a closed form or Horner
 * evaluation of a truncated series. Series-backed evaluators refuse
 * |z| > 1 - 10/N, where truncation error starts to dominate.
 */
struct PointEvaluator {
  enum class Kind { closed_form, horner_series };

  std::function<complex_t(complex_t)> eval;
  Kind kind = Kind::closed_form;

  complex_t operator()(complex_t z) const { return eval(z); }
};

class EvalOutsideReliableRadius : public SeriesError {
  using SeriesError::SeriesError;
};

/// Horner-backed evaluator for a series (kind = horner_series).
PointEvaluator horner_evaluator(TaylorSeries series);

}  // namespace hardylab

#include "hardylab/series.hpp"

#include <algorithm>
#include <cmath>

namespace hardylab {

namespace {

void require_finite(std::span<const complex_t> coeffs, const char* op) {
  for (const complex_t& c : coeffs) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw NonFiniteCoefficient(std::string(op) +
                                 ": non-finite coefficient encountered");
    }
  }
}

}  // namespace

TaylorSeries::TaylorSeries(std::vector<complex_t> coeffs)
    : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) {
    throw SeriesError("TaylorSeries: empty coefficient vector");
  }
  require_finite(coeffs_, "TaylorSeries");
}

TaylorSeries TaylorSeries::zero(int order) {
  return TaylorSeries(std::vector<complex_t>(order + 1, complex_t{}));
}

TaylorSeries TaylorSeries::constant(complex_t value, int order) {
  std::vector<complex_t> c(order + 1, complex_t{});
  c[0] = value;
  return TaylorSeries(std::move(c));
}

TaylorSeries TaylorSeries::identity(int order) {
  std::vector<complex_t> c(order + 1, complex_t{});
  if (order >= 1) c[1] = 1.0;
  return TaylorSeries(std::move(c));
}

TaylorSeries TaylorSeries::truncated(int order) const {
  std::vector<complex_t> c(order + 1, complex_t{});
  const int n = std::min(order, this->order());
  std::copy_n(coeffs_.begin(), n + 1, c.begin());
  return TaylorSeries(std::move(c));
}

TaylorSeries add(const TaylorSeries& a, const TaylorSeries& b) {
  const int n = std::min(a.order(), b.order());
  std::vector<complex_t> c(n + 1);
  for (int k = 0; k <= n; ++k) c[k] = a.coeff(k) + b.coeff(k);
  return TaylorSeries(std::move(c));
}

TaylorSeries sub(const TaylorSeries& a, const TaylorSeries& b) {
  const int n = std::min(a.order(), b.order());
  std::vector<complex_t> c(n + 1);
  for (int k = 0; k <= n; ++k) c[k] = a.coeff(k) - b.coeff(k);
  return TaylorSeries(std::move(c));
}

TaylorSeries scale(const TaylorSeries& a, complex_t factor) {
  std::vector<complex_t> c(a.coeffs().begin(), a.coeffs().end());
  for (complex_t& x : c) x *= factor;
  return TaylorSeries(std::move(c));
}

TaylorSeries mul(const TaylorSeries& a, const TaylorSeries& b) {
  const int n = std::min(a.order(), b.order());
  std::vector<complex_t> c(n + 1, complex_t{});
  for (int i = 0; i <= n; ++i) {
    const complex_t ai = a.coeff(i);
    if (ai == complex_t{}) continue;
    for (int j = 0; i + j <= n; ++j) c[i + j] += ai * b.coeff(j);
  }
  return TaylorSeries(std::move(c));
}

TaylorSeries div(const TaylorSeries& a, const TaylorSeries& b) {
  if (std::abs(b.coeff(0)) == 0.0) {
    throw ZeroConstantTerm("div: divisor has vanishing constant term");
  }
  const int n = std::min(a.order(), b.order());
  std::vector<complex_t> q(n + 1);
  const complex_t b0 = b.coeff(0);
  for (int k = 0; k <= n; ++k) {
    complex_t s = a.coeff(k);
    for (int j = 1; j <= k; ++j) s -= b.coeff(j) * q[k - j];
    q[k] = s / b0;
  }
  return TaylorSeries(std::move(q));
}

TaylorSeries compose(const TaylorSeries& outer, const TaylorSeries& inner) {
  if (std::abs(inner.coeff(0)) != 0.0) {
    throw InnerConstantNonzero("compose: inner series must vanish at 0");
  }
  const int n = std::min(outer.order(), inner.order());
  const TaylorSeries g = inner.truncated(n);
  TaylorSeries acc = TaylorSeries::constant(outer.coeff(std::max(n, 0)), n);
  for (int k = n - 1; k >= 0; --k) {
    acc = mul(acc, g);
    std::vector<complex_t> c(acc.coeffs().begin(), acc.coeffs().end());
    c[0] += outer.coeff(k);
    acc = TaylorSeries(std::move(c));
  }
  return acc;
}

TaylorSeries exp(const TaylorSeries& a) {
  // b' = a' b gives b_n = (1/n) sum_{k=1}^{n} k a_k b_{n-k}, b_0 = e^{a_0}.
  const int n = a.order();
  std::vector<complex_t> b(n + 1);
  b[0] = std::exp(a.coeff(0));
  for (int m = 1; m <= n; ++m) {
    complex_t s{};
    for (int k = 1; k <= m; ++k) s += static_cast<double>(k) * a.coeff(k) * b[m - k];
    b[m] = s / static_cast<double>(m);
  }
  return TaylorSeries(std::move(b));
}

TaylorSeries log(const TaylorSeries& a) {
  if (std::abs(a.coeff(0) - 1.0) > 1e-13) {
    throw LogConstantNotOne("log: constant term must be 1");
  }
  // l' = a'/a gives l_n = a_n - (1/n) sum_{k=1}^{n-1} k l_k a_{n-k}, l_0 = 0.
  const int n = a.order();
  std::vector<complex_t> l(n + 1, complex_t{});
  for (int m = 1; m <= n; ++m) {
    complex_t s = static_cast<double>(m) * a.coeff(m);
    for (int k = 1; k < m; ++k) s -= static_cast<double>(k) * l[k] * a.coeff(m - k);
    l[m] = s / (static_cast<double>(m) * a.coeff(0));
  }
  return TaylorSeries(std::move(l));
}

TaylorSeries pow(const TaylorSeries& a, double alpha) {
  const complex_t a0 = a.coeff(0);
  if (std::abs(a0) == 0.0) {
    throw ConstantNotOne("pow: constant term must be nonzero");
  }
  // A non-unit constant term is factored out through the principal branch.
  if (std::abs(a0 - 1.0) > 1e-13) {
    return scale(pow(scale(a, 1.0 / a0), alpha), std::pow(a0, complex_t(alpha)));
  }
  if (alpha == 0.0) return TaylorSeries::constant(1.0, a.order());
  // Direct recurrence for b = a^alpha from alpha a' b = a b'; better
  // conditioned than exp(alpha log a) and exact for a = 1 + z.
  const int n = a.order();
  std::vector<complex_t> b(n + 1);
  b[0] = 1.0;
  for (int m = 1; m <= n; ++m) {
    complex_t s{};
    for (int k = 1; k <= m; ++k) {
      const double w = alpha * k - (m - k);
      s += w * a.coeff(k) * b[m - k];
    }
    b[m] = s / (static_cast<double>(m) * a.coeff(0));
  }
  return TaylorSeries(std::move(b));
}

TaylorSeries derivative(const TaylorSeries& a) {
  const int n = a.order();
  std::vector<complex_t> c(std::max(n, 1));
  if (n == 0) {
    c[0] = complex_t{};
  } else {
    for (int k = 1; k <= n; ++k) c[k - 1] = static_cast<double>(k) * a.coeff(k);
  }
  return TaylorSeries(std::move(c));
}

TaylorSeries integrate(const TaylorSeries& a) {
  const int n = a.order();
  std::vector<complex_t> c(n + 2, complex_t{});
  for (int k = 0; k <= n; ++k) c[k + 1] = a.coeff(k) / static_cast<double>(k + 1);
  return TaylorSeries(std::move(c));
}

complex_t eval(const TaylorSeries& a, complex_t z) {
  complex_t acc = a.coeff(a.order());
  for (int k = a.order() - 1; k >= 0; --k) acc = acc * z + a.coeff(k);
  return acc;
}

PointEvaluator horner_evaluator(TaylorSeries series) {
  const double r_max = 1.0 - 10.0 / std::max(series.order(), 11);
  return PointEvaluator{
      [s = std::move(series), r_max](complex_t z) {
        if (std::abs(z) > r_max) {
          throw EvalOutsideReliableRadius(
              "horner_evaluator: |z| beyond reliable radius 1 - 10/N");
        }
        return eval(s, z);
      },
      PointEvaluator::Kind::horner_series};
}

}  // namespace hardylab

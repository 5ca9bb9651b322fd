#include "hardylab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hardylab {

namespace {

constexpr double kUnimodularTol = 1e-14;
constexpr double kMassTol = 1e-14;
constexpr double kMergeArc = 1e-12;

double wrap_2pi(double t) {
  const double two_pi = 2.0 * std::numbers::pi;
  double w = std::fmod(t, two_pi);
  if (w < 0) w += two_pi;
  return w;
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms) {
  if (atoms.empty()) throw InvalidMeasure("measure: no atoms");
  double total = 0.0;
  for (const Atom& a : atoms) {
    if (!(a.weight > 0.0)) {
      throw InvalidMeasure("measure: weights must be positive");
    }
    if (std::abs(std::abs(a.position) - 1.0) > kUnimodularTol) {
      throw InvalidMeasure("measure: atom positions must be unimodular");
    }
    total += a.weight;
  }
  if (std::abs(total - 1.0) > kMassTol) {
    throw InvalidMeasure("measure: weights must sum to 1");
  }
  std::sort(atoms.begin(), atoms.end(), [](const Atom& x, const Atom& y) {
    return wrap_2pi(std::arg(x.position)) < wrap_2pi(std::arg(y.position));
  });
  // Merge near-duplicates (arc distance below kMergeArc), including wrap.
  for (const Atom& a : atoms) {
    if (!atoms_.empty()) {
      const double gap = std::abs(wrap_2pi(std::arg(a.position)) -
                                  wrap_2pi(std::arg(atoms_.back().position)));
      if (gap < kMergeArc) {
        atoms_.back().weight += a.weight;
        continue;
      }
    }
    atoms_.push_back(a);
  }
  if (atoms_.size() >= 2) {
    const double wrap_gap = 2.0 * std::numbers::pi -
                            wrap_2pi(std::arg(atoms_.back().position)) +
                            wrap_2pi(std::arg(atoms_.front().position));
    if (wrap_gap < kMergeArc) {
      atoms_.front().weight += atoms_.back().weight;
      atoms_.pop_back();
    }
  }
}

DiscreteMeasure DiscreteMeasure::from_args_over_pi(
    const std::vector<std::pair<double, double>>& atoms) {
  std::vector<Atom> out;
  out.reserve(atoms.size());
  for (const auto& [arg_over_pi, weight] : atoms) {
    out.push_back(Atom{std::polar(1.0, arg_over_pi * std::numbers::pi), weight});
  }
  return DiscreteMeasure(std::move(out));
}

double DiscreteMeasure::mass_at(complex_t lambda) const {
  for (const Atom& a : atoms_) {
    if (std::abs(a.position - lambda) < 16 * kMergeArc) return a.weight;
  }
  return 0.0;
}

complex_t moment(const DiscreteMeasure& mu, int k) {
  complex_t s{};
  for (const Atom& a : mu.atoms()) {
    s += a.weight * std::pow(a.position, k);
  }
  return s;
}

TaylorSeries caratheodory_series(const DiscreteMeasure& mu, int order) {
  std::vector<complex_t> c(order + 1);
  c[0] = 1.0;
  // c_n = 2 sum_j t_j lambda_j^n, accumulated by repeated multiplication.
  std::vector<complex_t> pw(mu.atoms().size(), 1.0);
  for (int n = 1; n <= order; ++n) {
    complex_t s{};
    for (size_t j = 0; j < mu.atoms().size(); ++j) {
      pw[j] *= mu.atoms()[j].position;
      s += mu.atoms()[j].weight * pw[j];
    }
    c[n] = 2.0 * s;
  }
  return TaylorSeries(std::move(c));
}

PointEvaluator caratheodory_evaluator(const DiscreteMeasure& mu) {
  std::vector<Atom> atoms = mu.atoms();
  return PointEvaluator{[atoms](complex_t z) {
                          complex_t s{};
                          for (const Atom& a : atoms) {
                            s += a.weight * (1.0 + a.position * z) /
                                 (1.0 - a.position * z);
                          }
                          return s;
                        },
                        PointEvaluator::Kind::closed_form};
}

double boundary_rotation(const DiscreteMeasure& mu, double t_a, double t_b) {
  const double two_pi = 2.0 * std::numbers::pi;
  if (t_b - t_a >= two_pi) return two_pi;
  const double a = wrap_2pi(t_a);
  const double b = wrap_2pi(t_b);
  double mass = 0.0;
  for (const Atom& at : mu.atoms()) {
    const double t = wrap_2pi(std::arg(at.position));
    const bool inside = (a <= b) ? (t >= a && t < b) : (t >= a || t < b);
    if (inside) mass += at.weight;
  }
  return two_pi * mass;
}

double angle_at_infinity_measure(const DiscreteMeasure& mu, complex_t lambda0) {
  const double m = mu.mass_at(lambda0);
  if (m < 0.5) {
    throw NoPoleMass("angle_at_infinity: mass at lambda0 below 1/2");
  }
  return (2.0 * m - 1.0) * std::numbers::pi;
}

AppendixCheckOutcome appendix_theorem_check(const DiscreteMeasure& mu,
                                            double tol) {
  const double m1 = std::abs(moment(mu, 1));
  double max_mass = 0.0;
  const Atom* heaviest = nullptr;
  for (const Atom& a : mu.atoms()) {
    if (a.weight > max_mass) {
      max_mass = a.weight;
      heaviest = &a;
    }
  }
  if (m1 > tol || max_mass < 0.5 - tol) {
    return {true, ""};  // hypothesis not met, vacuous
  }
  // Quantitative form of the conclusion, matching how the hypothesis was
  // relaxed: with lambda0 rotated to 1,
  //   Re moment = 2 mu(1) - 1 + 2 sum_{rest} t_j cos^2(theta_j / 2),
  // so |moment| <= tol forces mu(lambda0) = 1/2 and the remaining mass to
  // sit at -lambda0, both up to O(tol). At tol -> 0 this is exactly the
  // two-antipodal-half-atoms statement.
  if (std::abs(heaviest->weight - 0.5) > 2.0 * tol) {
    return {false, "pole mass " + std::to_string(heaviest->weight) +
                       " differs from 1/2 beyond tolerance"};
  }
  double spread = 0.0;  // sum t_j cos^2(theta_j/2) over the other atoms
  for (const Atom& a : mu.atoms()) {
    if (&a == heaviest) continue;
    const double th = std::arg(a.position * std::conj(heaviest->position));
    const double c = std::cos(0.5 * th);
    spread += a.weight * c * c;
  }
  if (spread > 2.0 * tol) {
    return {false,
            "off-antipodal mass detected (cos^2-weighted spread " +
                std::to_string(spread) + ")"};
  }
  return {true, ""};
}

}  // namespace hardylab

#include "hardylab/jsonio.hpp"

#include <cstdio>
#include <numbers>

namespace hardylab {

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json to_json(const FunctionSpec& spec) {
  return json{{"family", family_name(spec.family)},
              {"params", spec.params},
              {"order", spec.order}};
}

FunctionSpec function_spec_from_json(const json& j) {
  FunctionSpec spec;
  spec.family = family_from_name(j.at("family").get<std::string>());
  spec.params = j.at("params").get<std::map<std::string, double>>();
  spec.order = j.at("order").get<int>();
  return spec;
}

json to_json(const DiscreteMeasure& mu) {
  json arr = json::array();
  for (const Atom& a : mu.atoms()) {
    arr.push_back(json{{"arg_over_pi", std::arg(a.position) / std::numbers::pi},
                       {"weight", a.weight}});
  }
  return arr;
}

DiscreteMeasure measure_from_json(const json& j) {
  std::vector<std::pair<double, double>> atoms;
  for (const json& a : j) {
    atoms.emplace_back(a.at("arg_over_pi").get<double>(),
                       a.at("weight").get<double>());
  }
  return DiscreteMeasure::from_args_over_pi(atoms);
}

json to_json(const MeansProfile& profile) {
  return json{{"p", profile.p},
              {"radii", profile.radii},
              {"values", profile.values},
              {"n_theta", profile.n_theta},
              {"evaluator_kind",
               profile.evaluator_kind == PointEvaluator::Kind::closed_form
                   ? "closed_form"
                   : "horner_series"}};
}

json to_json(const ExponentEstimate& est) {
  return json{{"gamma", est.gamma},
              {"stderr", est.stderr_},
              {"p_star", est.p_star},
              {"bracket", {est.bracket.first, est.bracket.second}}};
}

json to_json(const CheckResult& result) {
  return json{{"check_id", result.check_id},
              {"function_spec", to_json(result.function_spec)},
              {"params", result.params},
              {"margin", result.margin},
              {"tol", result.tol},
              {"passed", result.passed},
              {"samples", result.samples}};
}

json to_json(const LowerOrderEstimate& est) {
  return json{{"beta", est.beta},
              {"argmin_re", est.argmin.real()},
              {"argmin_im", est.argmin.imag()},
              {"samples", est.samples},
              {"method",
               est.method == LowerOrderEstimate::Method::grid
                   ? "grid"
                   : "grid_plus_local_descent"}};
}

json to_json(const HalfTangentEstimate& est) {
  return json{{"theta_plus", est.theta_plus},
              {"theta_minus", est.theta_minus},
              {"delta", est.delta},
              {"t0", est.t0}};
}

std::string to_csv(const MeansProfile& profile) {
  std::string out = "p,r,n_theta,M_p\n";
  for (size_t i = 0; i < profile.radii.size(); ++i) {
    out += format_g17(profile.p) + "," + format_g17(profile.radii[i]) + "," +
           std::to_string(profile.n_theta[i]) + "," +
           format_g17(profile.values[i]) + "\n";
  }
  return out;
}

std::string to_csv(const ExponentEstimate& est) {
  std::string out = "gamma,stderr,p_star,bracket_lo,bracket_hi\n";
  out += format_g17(est.gamma) + "," + format_g17(est.stderr_) + "," +
         format_g17(est.p_star) + "," + format_g17(est.bracket.first) + "," +
         format_g17(est.bracket.second) + "\n";
  return out;
}

std::string to_csv(const HalfTangentTrace& trace) {
  std::string out = "t,arg_f\n";
  for (size_t i = 0; i < trace.t.size(); ++i) {
    out += format_g17(trace.t[i]) + "," + format_g17(trace.arg_f[i]) + "\n";
  }
  return out;
}

}  // namespace hardylab

#include "hardylab/cli.hpp"

#include <fstream>
#include <iostream>

#include "hardylab/jsonio.hpp"

namespace hardylab {

namespace {

void emit(const std::string& payload, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << payload;
    if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out;
  out.exceptions(std::ios::failbit | std::ios::badbit);
  out.open(output_path);
  out << payload;
  if (!payload.empty() && payload.back() != '\n') out << '\n';
  out.close();
  std::cerr << "wrote " << output_path << "\n";
}

json document(const char* kind) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["kind"] = kind;
  return doc;
}

const FunctionSpec& require_function(const RunConfig& config) {
  if (!config.function) {
    throw ZooError("this command requires --family");
  }
  return *config.function;
}

double default_t0(Family family) {
  // Pole parameter of the unbounded families constructed here.
  return family == Family::r_example ? std::acos(-1.0) / 2.0 : 0.0;
}

int run_verify(const RunConfig& config) {
  std::vector<CheckResult> results;
  if (config.suite == "convex") {
    results = run_convex_suite(config.seed, config.n_random);
  } else if (config.suite == "equality") {
    results = run_equality_suite();
  } else if (config.suite == "hardy") {
    results = check_hardy_table();
  } else if (config.suite == "all") {
    results = run_all_checks(config.seed, config.n_random);
  } else {
    throw CheckError("unknown suite '" + config.suite + "'");
  }
  std::sort(results.begin(), results.end(),
            [](const CheckResult& a, const CheckResult& b) {
              return a.check_id < b.check_id;
            });

  json doc = document("verify");
  doc["seed"] = config.seed;
  doc["suite"] = config.suite;
  json arr = json::array();
  bool all_passed = true;
  int n_failed = 0;
  for (const CheckResult& r : results) {
    arr.push_back(to_json(r));
    all_passed = all_passed && r.passed;
    n_failed += r.passed ? 0 : 1;
    std::cerr << (r.passed ? "pass " : "FAIL ") << r.check_id
              << "  margin=" << format_g17(r.margin) << "\n";
  }
  doc["checks"] = std::move(arr);
  doc["all_passed"] = all_passed;
  std::cerr << results.size() << " checks, " << n_failed << " failed\n";
  emit(doc.dump(2), config.output_path);
  return all_passed ? kExitOk : kExitCheckFailure;
}

int run_report(const RunConfig& config) {
  json doc = document("report");
  doc["seed"] = config.seed;

  std::vector<CheckResult> checks = run_all_checks(config.seed, config.n_random);
  std::sort(checks.begin(), checks.end(),
            [](const CheckResult& a, const CheckResult& b) {
              return a.check_id < b.check_id;
            });
  bool all_passed = true;
  json arr = json::array();
  for (const CheckResult& r : checks) {
    arr.push_back(to_json(r));
    all_passed = all_passed && r.passed;
  }
  doc["checks"] = std::move(arr);

  const AppendixSearchOutcome search =
      appendix_random_search(config.seed, 10000);
  doc["appendix_search"] = json{{"attempted", search.attempted},
                                {"hypothesis_met", search.hypothesis_met},
                                {"violations", search.violations}};
  all_passed = all_passed && search.violations == 0;

  json hayman = json::array();
  for (const double a : {0.0, 0.5, 1.0, 1.5, 2.0}) {
    const HaymanConstants h = hayman_gamma(a);
    hayman.push_back(json{{"alpha", a}, {"lambda", h.lambda}, {"gamma", h.gamma}});
  }
  doc["hayman"] = std::move(hayman);
  doc["all_passed"] = all_passed;
  emit(doc.dump(2), config.output_path);
  return all_passed ? kExitOk : kExitCheckFailure;
}

}  // namespace

int run(const RunConfig& config) {
  switch (config.command) {
    case RunConfig::Command::build: {
      const ZooFunction f = build_from_spec(require_function(config));
      json doc = document("build");
      doc["spec"] = to_json(f.spec);
      doc["a2"] = {f.a2().real(), f.a2().imag()};
      doc["a3"] = {f.a3().real(), f.a3().imag()};
      doc["metadata"] = f.metadata;
      emit(doc.dump(2), config.output_path);
      return kExitOk;
    }
    case RunConfig::Command::coeffs: {
      const ZooFunction f = build_from_spec(require_function(config));
      if (config.format == RunConfig::Format::csv) {
        std::string csv = "n,re,im\n";
        for (int n = 0; n <= f.series.order(); ++n) {
          csv += std::to_string(n) + "," + format_g17(f.series.coeff(n).real()) +
                 "," + format_g17(f.series.coeff(n).imag()) + "\n";
        }
        emit(csv, config.output_path);
      } else {
        json doc = document("coeffs");
        doc["spec"] = to_json(f.spec);
        json arr = json::array();
        for (int n = 0; n <= f.series.order(); ++n) {
          arr.push_back({f.series.coeff(n).real(), f.series.coeff(n).imag()});
        }
        doc["coeffs"] = std::move(arr);
        emit(doc.dump(2), config.output_path);
      }
      return kExitOk;
    }
    case RunConfig::Command::means: {
      const ZooFunction f = build_from_spec(require_function(config));
      const PointEvaluator& ev = config.use_deriv ? f.deriv : f.value;
      const double p = config.p > 0.0 ? config.p : 1.0;
      const std::vector<double> radii =
          config.radii.empty() ? default_radius_ladder() : config.radii;
      const MeansProfile profile = means_profile(ev, p, radii);
      if (config.format == RunConfig::Format::csv) {
        emit(to_csv(profile), config.output_path);
      } else {
        json doc = document("means");
        doc["spec"] = to_json(f.spec);
        doc["deriv"] = config.use_deriv;
        doc["profile"] = to_json(profile);
        emit(doc.dump(2), config.output_path);
      }
      return kExitOk;
    }
    case RunConfig::Command::exponent: {
      const ZooFunction f = build_from_spec(require_function(config));
      const PointEvaluator& ev = config.use_deriv ? f.deriv : f.value;
      const std::vector<double> radii =
          config.radii.empty() ? default_radius_ladder() : config.radii;
      const double p_lo = config.p > 0.0 ? 0.5 * config.p : 0.15;
      const double p_hi = config.p > 0.0 ? 2.0 * config.p : 1.5;
      const ExponentEstimate est = hardy_critical_exponent(ev, p_lo, p_hi, radii);
      if (config.format == RunConfig::Format::csv) {
        emit(to_csv(est), config.output_path);
      } else {
        json doc = document("exponent");
        doc["spec"] = to_json(f.spec);
        doc["deriv"] = config.use_deriv;
        doc["estimate"] = to_json(est);
        emit(doc.dump(2), config.output_path);
      }
      return kExitOk;
    }
    case RunConfig::Command::geometry: {
      const ZooFunction f = build_from_spec(require_function(config));
      if (config.format == RunConfig::Format::csv) {
        // Half-tangent trace (t, arg f) along the boundary approach paths.
        emit(to_csv(half_tangent_trace(f.value, default_t0(f.spec.family))),
             config.output_path);
        return kExitOk;
      }
      json doc = document("geometry");
      doc["spec"] = to_json(f.spec);
      doc["a2"] = {f.a2().real(), f.a2().imag()};
      doc["lower_order"] = to_json(lower_order(f.log_deriv));
      try {
        const std::vector<double> radii =
            config.radii.empty() ? default_radius_ladder() : config.radii;
        doc["radial_A_limit"] = radial_A_limit(f.log_deriv, 1.0, radii);
      } catch (const std::runtime_error&) {
        // bounded or series-limited family; omit
      }
      try {
        doc["half_tangents"] =
            to_json(half_tangents(f.value, default_t0(f.spec.family)));
      } catch (const std::runtime_error&) {
      }
      emit(doc.dump(2), config.output_path);
      return kExitOk;
    }
    case RunConfig::Command::verify:
      return run_verify(config);
    case RunConfig::Command::report:
      return run_report(config);
  }
  throw ZooError("run: unknown command");
}

}  // namespace hardylab

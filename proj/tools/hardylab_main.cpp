#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hardylab/cli.hpp"

namespace {

struct Flags {
  std::string family;
  double alpha = std::numeric_limits<double>::quiet_NaN();
  double t = std::numeric_limits<double>::quiet_NaN();
  double r = std::numeric_limits<double>::quiet_NaN();
  double eps = std::numeric_limits<double>::quiet_NaN();
  int order = 64;
  double p = 0.0;
  std::vector<double> radii;
  std::string suite = "all";
  std::uint64_t seed = 1;
  int n_random = 100;
  std::string out;
  std::string format = "json";
};

void add_common_flags(CLI::App* cmd, Flags& f, bool with_function) {
  if (with_function) {
    cmd->add_option("--family", f.family,
                    "function family (append -deriv to analyze f')");
    cmd->add_option("--alpha", f.alpha, "sector/strip/starlike parameter");
    cmd->add_option("--t", f.t, "polylog/close-to-convex parameter");
    cmd->add_option("--r", f.r, "Koebe dilation parameter");
    cmd->add_option("--eps", f.eps, "integral-transform exponent");
    cmd->add_option("--order", f.order, "truncation order N");
  }
  cmd->add_option("--p", f.p, "integral-means exponent");
  cmd->add_option("--radii", f.radii, "radius grid (comma separated)")
      ->delimiter(',');
  cmd->add_option("--seed", f.seed, "random seed");
  cmd->add_option("--out", f.out, "output file (default stdout)");
  cmd->add_option("--format", f.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
}

hardylab::RunConfig to_config(hardylab::RunConfig::Command command,
                              const Flags& f) {
  hardylab::RunConfig config;
  config.command = command;
  if (!f.family.empty()) {
    std::string name = f.family;
    if (name.size() > 6 && name.substr(name.size() - 6) == "-deriv") {
      config.use_deriv = true;
      name = name.substr(0, name.size() - 6);
    }
    hardylab::FunctionSpec spec;
    spec.family = hardylab::family_from_name(name);
    spec.order = f.order;
    if (!std::isnan(f.alpha)) spec.params["alpha"] = f.alpha;
    if (!std::isnan(f.t)) spec.params["t"] = f.t;
    if (!std::isnan(f.r)) spec.params["r"] = f.r;
    if (!std::isnan(f.eps)) spec.params["eps"] = f.eps;
    if (spec.family == hardylab::Family::sqrt_transform &&
        !spec.params.count("inner_family")) {
      spec.params["inner_family"] =
          static_cast<double>(hardylab::Family::lpr_phi);
    }
    config.function = spec;
  }
  config.p = f.p;
  config.radii = f.radii;
  config.suite = f.suite;
  config.seed = f.seed;
  config.n_random = f.n_random;
  config.output_path = f.out;
  config.format = f.format == "csv" ? hardylab::RunConfig::Format::csv
                                    : hardylab::RunConfig::Format::json;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hardylab: numerical laboratory for univalent-function "
               "families, integral means and sharp Hardy exponents"};
  app.require_subcommand(1);

  Flags flags;
  using Command = hardylab::RunConfig::Command;
  struct Sub {
    const char* name;
    const char* help;
    Command command;
    bool with_function;
  };
  const Sub subs[] = {
      {"build", "construct a function and report a2, a3", Command::build, true},
      {"coeffs", "emit Taylor coefficients", Command::coeffs, true},
      {"means", "integral means profile over a radius grid", Command::means,
       true},
      {"exponent", "critical Hardy exponent estimate", Command::exponent, true},
      {"geometry", "lower order, radial limits, half-tangents",
       Command::geometry, true},
      {"verify", "run a verification suite", Command::verify, false},
      {"report", "full machine-readable report", Command::report, false},
  };
  for (const Sub& s : subs) {
    CLI::App* cmd = app.add_subcommand(s.name, s.help);
    add_common_flags(cmd, flags, s.with_function);
    if (s.command == Command::verify) {
      cmd->add_option("--suite", flags.suite,
                      "convex | equality | hardy | all");
      cmd->add_option("--n-random", flags.n_random,
                      "number of random convex maps");
    }
    if (s.command == Command::report) {
      cmd->add_option("--n-random", flags.n_random,
                      "number of random convex maps");
    }
    cmd->callback([&flags, s] {
      std::exit(hardylab::run(to_config(s.command, flags)));
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return hardylab::kExitBadConfig;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return hardylab::kExitIoFailure;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return hardylab::kExitBadConfig;
  }
  return hardylab::kExitOk;
}

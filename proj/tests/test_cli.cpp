#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "hardylab/cli.hpp"
#include "hardylab/jsonio.hpp"

using namespace hardylab;

namespace {

std::string temp_path(const char* name) {
  return std::string("/tmp/hardylab_test_") + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(HARDYLAB_CLI_PATH) + " " + args +
                          " > /dev/null 2> /dev/null";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("build command reports the lacunary second coefficient") {
  RunConfig config;
  config.command = RunConfig::Command::build;
  FunctionSpec spec;
  spec.family = Family::lpr_phi;
  spec.order = 64;
  config.function = spec;
  config.output_path = temp_path("build.json");
  CHECK(run(config) == kExitOk);
  const json doc = json::parse(slurp(config.output_path));
  CHECK(doc.at("schema_version").get<int>() == 1);
  CHECK(doc.at("a2")[0].get<double>() == doctest::Approx(0.25).epsilon(1e-12));
  std::remove(config.output_path.c_str());
}

TEST_CASE("exponent command reproduces the sector-derivative exponent") {
  RunConfig config;
  config.command = RunConfig::Command::exponent;
  FunctionSpec spec;
  spec.family = Family::sector;
  spec.params["alpha"] = 0.5;
  spec.order = 64;
  config.function = spec;
  config.use_deriv = true;
  config.output_path = temp_path("exponent.json");
  CHECK(run(config) == kExitOk);
  const json doc = json::parse(slurp(config.output_path));
  const double p_star = doc.at("estimate").at("p_star").get<double>();
  CHECK(std::abs(p_star / (2.0 / 3.0) - 1.0) < 0.05);
  std::remove(config.output_path.c_str());
}

TEST_CASE("exponent command with the default bracket") {
  // Without --p the bracket defaults to [0.15, 1.5], wide enough for every
  // derivative family in the table.
  RunConfig config;
  config.command = RunConfig::Command::exponent;
  FunctionSpec spec;
  spec.family = Family::koebe_dilated;
  spec.params["r"] = 1.0;
  spec.order = 64;
  config.function = spec;
  config.use_deriv = true;
  config.output_path = temp_path("exponent_default.json");
  CHECK(run(config) == kExitOk);
  const json doc = json::parse(slurp(config.output_path));
  CHECK(std::abs(doc.at("estimate").at("p_star").get<double>() / (1.0 / 3.0) -
                 1.0) < 0.05);
  std::remove(config.output_path.c_str());
}

TEST_CASE("verify command with a small convex suite passes and is stable") {
  RunConfig config;
  config.command = RunConfig::Command::verify;
  config.suite = "convex";
  config.seed = 7;
  config.n_random = 3;
  config.output_path = temp_path("verify1.json");
  CHECK(run(config) == kExitOk);
  const std::string first = slurp(config.output_path);

  config.output_path = temp_path("verify2.json");
  CHECK(run(config) == kExitOk);
  const std::string second = slurp(config.output_path);
  CHECK(first == second);  // byte identical for identical (config, seed)

  const json doc = json::parse(first);
  CHECK(doc.at("all_passed").get<bool>());
  CHECK(doc.at("checks").size() == 15);
  std::remove(temp_path("verify1.json").c_str());
  std::remove(temp_path("verify2.json").c_str());
}

TEST_CASE("means command emits the CSV schema") {
  RunConfig config;
  config.command = RunConfig::Command::means;
  FunctionSpec spec;
  spec.family = Family::koebe_dilated;
  spec.params["r"] = 1.0;
  spec.order = 64;
  config.function = spec;
  config.p = 1.0;
  config.radii = {0.5, 0.9};
  config.format = RunConfig::Format::csv;
  config.output_path = temp_path("means.csv");
  CHECK(run(config) == kExitOk);
  const std::string csv = slurp(config.output_path);
  CHECK(csv.rfind("p,r,n_theta,M_p\n", 0) == 0);
  CHECK(csv.find("0.5") != std::string::npos);
  std::remove(config.output_path.c_str());
}

TEST_CASE("config errors are reported as exceptions") {
  RunConfig config;
  config.command = RunConfig::Command::coeffs;  // no function given
  CHECK_THROWS_AS(run(config), ZooError);

  config.function = FunctionSpec{Family::sector, {}, 16};  // missing alpha
  CHECK_THROWS_AS(run(config), ZooError);

  RunConfig bad_suite;
  bad_suite.command = RunConfig::Command::verify;
  bad_suite.suite = "nope";
  CHECK_THROWS_AS(run(bad_suite), CheckError);
}

TEST_CASE("binary exit codes: ok, bad config, io failure") {
  CHECK(run_cli("build --family lpr --order 16") == kExitOk);
  CHECK(run_cli("build") == kExitBadConfig);
  CHECK(run_cli("build --family unknown-family") == kExitBadConfig);
  CHECK(run_cli("nonsense-subcommand") == kExitBadConfig);
  CHECK(run_cli("build --family lpr --order 16 --out /nonexistent-dir/x.json") ==
        kExitIoFailure);
}

TEST_CASE("the documented CLI example: coeffs --family lpr --order 64") {
  const std::string path = temp_path("coeffs.json");
  const int code =
      run_cli("coeffs --family lpr --order 64 --out " + path);
  CHECK(code == kExitOk);
  const json doc = json::parse(slurp(path));
  const double a2 = doc.at("coeffs")[2][0].get<double>();
  CHECK(a2 == doctest::Approx(0.25).epsilon(1e-12));
  std::remove(path.c_str());
}

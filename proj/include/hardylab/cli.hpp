#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hardylab/zoo.hpp"

namespace hardylab {

/// Exit codes of the command driver.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitBadConfig = 2;
inline constexpr int kExitIoFailure = 3;

struct RunConfig {
  enum class Command { build, coeffs, means, exponent, geometry, verify, report };
  enum class Format { json, csv };

  Command command = Command::build;
  std::optional<FunctionSpec> function;
  bool use_deriv = false;  // analyze f' instead of f
  double p = 0.0;          // exponent/means parameter (0 = unset)
  std::vector<double> radii;
  std::string suite = "all";
  std::uint64_t seed = 1;
  int n_random = 100;
  std::string output_path;  // empty = stdout only
  Format format = Format::json;
};

/// Executes one command; deterministic outputs for identical (config, seed).
/// Returns kExitOk, or kExitCheckFailure when a verify/report found a
/// failing check; throws ZooError/CheckError for bad configs and
/// std::ios_base::failure for io problems (mapped to exit codes in main).
int run(const RunConfig& config);

}  // namespace hardylab

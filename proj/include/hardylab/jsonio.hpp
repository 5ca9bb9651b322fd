#pragma once

#include <string>

#include <json.hpp>

#include "hardylab/checks.hpp"
#include "hardylab/geometry.hpp"
#include "hardylab/means.hpp"
#include "hardylab/measure.hpp"
#include "hardylab/zoo.hpp"

namespace hardylab {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

json to_json(const FunctionSpec& spec);
FunctionSpec function_spec_from_json(const json& j);

json to_json(const DiscreteMeasure& mu);  // list of {arg_over_pi, weight}
DiscreteMeasure measure_from_json(const json& j);

json to_json(const MeansProfile& profile);
json to_json(const ExponentEstimate& est);
json to_json(const CheckResult& result);
json to_json(const LowerOrderEstimate& est);
json to_json(const HalfTangentEstimate& est);

/// CSV rows "p,r,n_theta,M_p" with 17 significant digits, C locale.
std::string to_csv(const MeansProfile& profile);
std::string to_csv(const ExponentEstimate& est);
std::string to_csv(const HalfTangentTrace& trace);

/// Numeric formatting helper shared by the CSV emitters.
std::string format_g17(double v);

}  // namespace hardylab

#pragma once

#include <json.hpp>

#include "subseries/criteria.hpp"
#include "subseries/thinning.hpp"

namespace subseries {

// JSON field names are stable; documents produced by the CLI carry a
// top-level "schema": 1.
inline constexpr int kJsonSchema = 1;

using Json = nlohmann::ordered_json;

Json to_json(const Inequality& link, double rel_tol);
Json to_json(const Certificate& cert, double rel_tol);
Json to_json(const SandwichReport& sandwich);
Json to_json(const SchlomilchReport& report);
Json to_json(const Verdict& verdict, double rel_tol);
Json to_json(const ThinningResult& result);

}  // namespace subseries

#pragma once

#include <json.hpp>

#include "spca/adaptive.hpp"
#include "spca/framework.hpp"
#include "spca/solvers.hpp"

namespace spca {

// Report serialization. Coordinate indices are 1-based in JSON; block
// references use the 1-based position in the decomposition's block list and
// 0 stands for the degenerate fallback.

nlohmann::json to_json(const SparseSolution& s);
SparseSolution solution_from_json(const nlohmann::json& j);

nlohmann::json to_json(const NoiseEstimate& e);
nlohmann::json to_json(const FrameworkResult& r);
nlohmann::json to_json(const SearchResult& r);

}  // namespace spca

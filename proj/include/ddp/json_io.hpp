#pragma once

#include <json.hpp>

#include "ddp/euclid_chain.hpp"
#include "ddp/value.hpp"

namespace ddp {

class Grid;
class ModulusProfile;
struct BoundReport;

/// Exact values serialize as "p/q" strings; decimals as
/// {"decimal": "<digits>", "digits": d}.
nlohmann::json to_json(const Value& v);
Value value_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Grid& g);
Grid grid_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ModulusProfile& p);
ModulusProfile profile_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BoundReport& r);
nlohmann::json to_json(const EuclidChain& c);

}  // namespace ddp

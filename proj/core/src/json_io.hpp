#pragma once

#include <json.hpp>

#include "leastaction/config.hpp"

namespace leastaction::detail {

nlohmann::ordered_json config_to_json(const RunConfig& config, bool include_outputs);
nlohmann::ordered_json state_to_json(const InterfaceState& state);

}  // namespace leastaction::detail

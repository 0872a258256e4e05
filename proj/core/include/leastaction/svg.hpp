#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "leastaction/agent.hpp"
#include "leastaction/medium.hpp"

namespace leastaction {

/// Slabs shaded by refractive index, each state in `states` as a solid
/// polyline from A to B, and `oracle_state` as a dashed polyline.
void render_path_svg(const LayeredMedium& medium, std::span<const InterfaceState> states,
                     const InterfaceState& oracle_state, std::ostream& out);
void render_path_svg(const LayeredMedium& medium, std::span<const InterfaceState> states,
                     const InterfaceState& oracle_state, const std::filesystem::path& path);

/// time_T against round for each episode in `episodes` (all episodes present
/// in `records` when empty), with a dashed horizontal line at `oracle_time`.
void render_convergence_svg(std::span<const RoundRecord> records, double oracle_time, std::span<const int> episodes,
                            std::ostream& out);
void render_convergence_svg(std::span<const RoundRecord> records, double oracle_time, std::span<const int> episodes,
                            const std::filesystem::path& path);

}  // namespace leastaction

#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "leastaction/agent.hpp"

namespace leastaction {

inline constexpr const char* kRoundCsvHeader = "episode,round,y_coords,action,time_T,r_score,reward,best_T";

/// `y1_up`, `y2_down`, ... (interfaces numbered from 1).
std::string action_label(MoveAction action);
MoveAction parse_action_label(const std::string& label);

/// One row per record in order; y_coords joined by ';', reals to 6 significant digits.
void write_round_csv(std::span<const RoundRecord> records, std::ostream& out);
void write_round_csv(std::span<const RoundRecord> records, const std::filesystem::path& path);

/// Throws std::runtime_error on a malformed file.
std::vector<RoundRecord> read_round_csv(std::istream& in);
std::vector<RoundRecord> read_round_csv(const std::filesystem::path& path);

/// JSON listing of {state, q} entries sorted by state.
std::string qtable_to_json(const QTable& table);
QTable qtable_from_json(const std::string& text);

/// Writes `text` to `path`, throwing std::runtime_error if the file cannot be written.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace leastaction

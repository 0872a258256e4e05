#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "leastaction/agent.hpp"
#include "leastaction/medium.hpp"
#include "leastaction/oracle.hpp"

namespace leastaction {

/// Air / water / glass, corner to corner across a 150 x 50 grid.
LayeredMedium paper_medium();

struct OracleConfig {
    std::uint64_t max_states = kDefaultMaxStates;
    double tolerance = kDefaultContinuousTol;

    friend bool operator==(const OracleConfig&, const OracleConfig&) = default;
};

struct EvaluationConfig {
    /// A run counts as converged when its T is within this fraction of the oracle optimum.
    double convergence_rel_tol = 0.005;
    int greedy_max_steps = 1000;

    friend bool operator==(const EvaluationConfig&, const EvaluationConfig&) = default;
};

struct OutputConfig {
    std::string directory = "out";
    bool round_csv = true;
    bool summary = true;
    bool qtable = true;
    bool path_svg = true;
    bool convergence_svg = true;
    /// Episodes drawn in the convergence figure. Empty: every 10th plus the last.
    std::vector<int> figure_episodes;
    /// Episode drawn in the path figure. Negative: the last episode.
    int path_episode = -1;

    friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct RunConfig {
    LayeredMedium medium = paper_medium();
    InterfaceState s_ini{{0, 0}};
    AgentConfig agent;
    /// Explicit N for R_s = N e^{-T}; empty means N = e^{T(s_ini)}.
    std::optional<double> reward_scale;
    OracleConfig oracle;
    EvaluationConfig evaluation;
    OutputConfig outputs;

    /// Throws ConfigError for cross-field problems (s_ini vs medium and so on).
    void validate() const;

    ScoreScale score_scale() const;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Invalid config. `field()` is the dotted path of the offending key.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& message)
        : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Parses a JSON config. Missing keys take the defaults above, unknown keys
/// are rejected. Each override is `dotted.key=value`, where value is JSON
/// (a bare word is taken as a string), applied before validation.
RunConfig parse_run_config(std::string_view json_text, std::span<const std::string> overrides = {});
RunConfig load_run_config(const std::filesystem::path& path, std::span<const std::string> overrides = {});

std::string run_config_to_json(const RunConfig& config);

}  // namespace leastaction

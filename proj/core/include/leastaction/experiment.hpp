#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "leastaction/agent.hpp"
#include "leastaction/config.hpp"
#include "leastaction/oracle.hpp"

namespace leastaction {

struct RunSummary {
    RunConfig config;
    DiscreteOptimum discrete;
    ContinuousOptimum continuous;

    /// Best T reached in each episode (including s_ini).
    std::vector<double> episode_best_T;
    std::vector<InterfaceState> episode_best_state;

    /// Unset when no episodes were run.
    std::optional<InterfaceState> greedy_state;
    std::optional<double> greedy_T;

    /// Greedy path T within evaluation.convergence_rel_tol of the discrete optimum.
    bool converged = false;
    /// Final episode's best T within the same tolerance.
    bool final_episode_converged = false;

    double wall_clock_seconds = 0.0;
};

struct ExperimentResult {
    RunSummary summary;
    std::vector<RoundRecord> records;
    QTable table;
};

/// Whether `time` lies within `rel_tol` of `optimum` (relative to the optimum).
bool within_tolerance(double time, double optimum, double rel_tol) noexcept;

/// Runs both oracles, trains across all episodes with one Q-table, writes the
/// enabled outputs under config.outputs.directory and returns everything.
ExperimentResult run_experiment(const RunConfig& config);

/// Summary as JSON. The wall-clock time is left out so reruns compare byte for byte.
std::string summary_to_json(const RunSummary& summary);

/// Episodes for the convergence figure: the configured list, or every 10th
/// episode plus the last.
std::vector<int> figure_episodes(const RunConfig& config);

/// States drawn in the path figure: evenly spaced rounds of the chosen episode.
std::vector<InterfaceState> path_figure_states(const RunConfig& config, std::span<const RoundRecord> records,
                                               std::size_t max_paths = 15);

/// Writes path.svg and convergence.svg as enabled in config.outputs.
void render_figures(const RunConfig& config, std::span<const RoundRecord> records, const DiscreteOptimum& optimum);

struct SeedOutcome {
    std::uint64_t seed = 0;
    std::optional<RunSummary> summary;
    std::string error;
};

struct SweepResult {
    std::vector<SeedOutcome> outcomes;
    /// Fraction of seeds whose final-episode best T is within tolerance.
    double final_episode_rate = 0.0;
    /// Fraction of seeds whose greedy path T is within tolerance.
    double greedy_rate = 0.0;

    bool all_succeeded() const noexcept;
};

/// One experiment per seed, each writing to <directory>/seed_<n>. Runs up to
/// `jobs` experiments at once and writes <directory>/sweep.json. Every seed
/// is attempted even if some fail.
SweepResult run_sweep(const RunConfig& config, std::span<const std::uint64_t> seeds, unsigned jobs = 1);

std::string sweep_to_json(const SweepResult& result);

}  // namespace leastaction

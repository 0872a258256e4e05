#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <vector>

#include "leastaction/medium.hpp"

namespace leastaction {

/// The single generator behind every stochastic choice in training.
using Rng = std::mt19937_64;

/// Tabular Q-values keyed by interface state. Unvisited states read as zeros.
///
/// Backed by an ordered map so iteration (and therefore serialization) is
/// lexicographic in the state coordinates.
class QTable {
public:
    explicit QTable(std::size_t num_actions);

    std::size_t num_actions() const noexcept { return num_actions_; }
    std::size_t size() const noexcept { return values_.size(); }

    std::span<const double> values(const InterfaceState& state) const;
    double value(const InterfaceState& state, MoveAction action) const;
    double max_value(const InterfaceState& state) const;

    /// Mutable row for `state`, created as zeros on first access.
    std::span<double> row(const InterfaceState& state);

    const std::map<InterfaceState, std::vector<double>>& entries() const noexcept { return values_; }

    friend bool operator==(const QTable&, const QTable&) = default;

private:
    std::size_t num_actions_;
    std::vector<double> zeros_;
    std::map<InterfaceState, std::vector<double>> values_;
};

struct AgentConfig {
    double epsilon = 0.9;  ///< probability of exploiting the best known action
    double alpha = 0.001;
    double gamma = 0.9;
    int episodes = 100;
    int rounds_per_episode = 300;
    std::uint64_t seed = 1;

    /// Throws std::invalid_argument naming the offending `agent.*` field.
    void validate() const;

    friend bool operator==(const AgentConfig&, const AgentConfig&) = default;
};

/// One training step as logged by the harness.
struct RoundRecord {
    int episode = 0;
    int round = 0;
    InterfaceState state_after;
    MoveAction action;
    double time_T = 0.0;
    double r_score = 0.0;
    double reward = 0.0;
    double best_T = 0.0;  ///< best time within the episode, after this round

    friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

/// With probability `epsilon` exploits (argmax Q, ties broken uniformly),
/// otherwise picks uniformly among all actions. Draws the exploit coin first,
/// then the action.
MoveAction select_action(const QTable& table, const InterfaceState& state, double epsilon, Rng& rng);

/// Q(s,a) += alpha * (r + gamma * max_a' Q(s',a') - Q(s,a)).
void q_update(QTable& table, const InterfaceState& s, MoveAction a, double r, const InterfaceState& s_next,
              double alpha, double gamma);

/// Runs one fixed-horizon episode from `s_ini`, updating `table` in place.
///
/// The episode's best R-score starts at R_s(s_ini). Each round's reward is
/// taken against the best before the round, and the best is raised afterwards
/// if the round beat it.
std::vector<RoundRecord> run_episode(const LayeredMedium& medium, QTable& table, const AgentConfig& config,
                                     const InterfaceState& s_ini, ScoreScale scale, int episode_index,
                                     Rng& rng);

/// Follows argmax-Q (first index on ties) from `s_ini` until a state repeats
/// or `max_steps` moves were made; returns the fastest state visited.
InterfaceState greedy_state(const LayeredMedium& medium, const QTable& table, const InterfaceState& s_ini,
                            int max_steps);

}  // namespace leastaction

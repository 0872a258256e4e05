#include "leastaction/agent.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace leastaction {

QTable::QTable(std::size_t num_actions) : num_actions_(num_actions), zeros_(num_actions, 0.0) {
    if (num_actions == 0) throw std::invalid_argument("Q-table needs at least one action");
}

std::span<const double> QTable::values(const InterfaceState& state) const {
    auto it = values_.find(state);
    return it == values_.end() ? std::span<const double>(zeros_) : std::span<const double>(it->second);
}

double QTable::value(const InterfaceState& state, MoveAction action) const {
    return values(state)[action.index()];
}

double QTable::max_value(const InterfaceState& state) const {
    const auto row = values(state);
    return *std::max_element(row.begin(), row.end());
}

std::span<double> QTable::row(const InterfaceState& state) {
    auto [it, inserted] = values_.try_emplace(state);
    if (inserted) it->second.assign(num_actions_, 0.0);
    return it->second;
}

void AgentConfig::validate() const {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::invalid_argument("agent.epsilon: must lie in [0, 1]");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("agent.alpha: must be positive");
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("agent.gamma: must lie in [0, 1]");
    if (episodes < 0) throw std::invalid_argument("agent.episodes: must be non-negative");
    if (rounds_per_episode < 0) throw std::invalid_argument("agent.rounds_per_episode: must be non-negative");
}

MoveAction select_action(const QTable& table, const InterfaceState& state, double epsilon, Rng& rng) {
    const std::size_t n = table.num_actions();
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    if (coin(rng) < epsilon) {
        const auto row = table.values(state);
        const double best = *std::max_element(row.begin(), row.end());
        std::vector<std::size_t> ties;
        for (std::size_t i = 0; i < n; ++i) {
            if (row[i] == best) ties.push_back(i);
        }
        std::uniform_int_distribution<std::size_t> pick(0, ties.size() - 1);
        return MoveAction::from_index(ties[pick(rng)]);
    }
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    return MoveAction::from_index(pick(rng));
}

void q_update(QTable& table, const InterfaceState& s, MoveAction a, double r, const InterfaceState& s_next,
              double alpha, double gamma) {
    const double target = r + gamma * table.max_value(s_next);
    double& q = table.row(s)[a.index()];
    q += alpha * (target - q);
}

std::vector<RoundRecord> run_episode(const LayeredMedium& medium, QTable& table, const AgentConfig& config,
                                     const InterfaceState& s_ini, ScoreScale scale, int episode_index,
                                     Rng& rng) {
    check_state(medium, s_ini);
    std::vector<RoundRecord> records;
    records.reserve(static_cast<std::size_t>(std::max(config.rounds_per_episode, 0)));

    InterfaceState state = s_ini;
    double best_time = path_time(medium, s_ini);
    double best_score = r_score(best_time, scale);

    for (int round = 0; round < config.rounds_per_episode; ++round) {
        const MoveAction action = select_action(table, state, config.epsilon, rng);
        InterfaceState next = apply_action(medium, state, action);
        const double time = path_time(medium, next);
        const double score = r_score(time, scale);
        const double r = reward(score, best_score);
        if (score > best_score) {
            best_score = score;
            best_time = time;
        }
        q_update(table, state, action, r, next, config.alpha, config.gamma);
        records.push_back({episode_index, round, next, action, time, score, r, best_time});
        state = std::move(next);
    }
    return records;
}

InterfaceState greedy_state(const LayeredMedium& medium, const QTable& table, const InterfaceState& s_ini,
                            int max_steps) {
    if (max_steps <= 0) throw std::invalid_argument("greedy_state: max_steps must be positive");
    InterfaceState state = s_ini;
    InterfaceState best = s_ini;
    double best_time = path_time(medium, s_ini);
    std::set<InterfaceState> seen{s_ini};
    for (int step = 0; step < max_steps; ++step) {
        const auto row = table.values(state);
        const auto argmax = static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
        state = apply_action(medium, state, MoveAction::from_index(argmax));
        if (!seen.insert(state).second) break;
        const double time = path_time(medium, state);
        if (time < best_time) {
            best_time = time;
            best = state;
        }
    }
    return best;
}

}  // namespace leastaction

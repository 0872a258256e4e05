#include "leastaction/experiment.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <mutex>
#include <set>
#include <thread>

#include "json_io.hpp"
#include "leastaction/records.hpp"
#include "leastaction/svg.hpp"

namespace leastaction {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

bool within_tolerance(double time, double optimum, double rel_tol) noexcept {
    return time <= optimum * (1.0 + rel_tol);
}

std::vector<int> figure_episodes(const RunConfig& config) {
    const int episodes = config.agent.episodes;
    std::vector<int> out;
    if (!config.outputs.figure_episodes.empty()) {
        for (int e : config.outputs.figure_episodes) {
            if (e < episodes) out.push_back(e);
        }
        return out;
    }
    for (int e = 0; e < episodes; e += 10) out.push_back(e);
    if (episodes > 0 && out.back() != episodes - 1) out.push_back(episodes - 1);
    return out;
}

std::vector<InterfaceState> path_figure_states(const RunConfig& config, std::span<const RoundRecord> records,
                                               std::size_t max_paths) {
    if (records.empty() || max_paths == 0) return {};
    const int episode = config.outputs.path_episode >= 0 ? config.outputs.path_episode : records.back().episode;
    std::vector<const RoundRecord*> rows;
    for (const auto& r : records) {
        if (r.episode == episode) rows.push_back(&r);
    }
    std::vector<InterfaceState> states;
    if (rows.empty()) return states;
    const std::size_t count = std::min(max_paths, rows.size());
    for (std::size_t k = 0; k < count; ++k) {
        // Always includes the last round.
        const std::size_t i = count == 1 ? rows.size() - 1 : k * (rows.size() - 1) / (count - 1);
        states.push_back(rows[i]->state_after);
    }
    return states;
}

void render_figures(const RunConfig& config, std::span<const RoundRecord> records, const DiscreteOptimum& optimum) {
    const fs::path dir = config.outputs.directory;
    if (config.outputs.path_svg) {
        const auto states = path_figure_states(config, records);
        render_path_svg(config.medium, states, optimum.state, dir / "path.svg");
    }
    if (config.outputs.convergence_svg) {
        const auto episodes = figure_episodes(config);
        std::vector<RoundRecord> selected;
        const std::set<int> wanted(episodes.begin(), episodes.end());
        for (const auto& r : records) {
            if (wanted.count(r.episode)) selected.push_back(r);
        }
        render_convergence_svg(selected, optimum.time, episodes, dir / "convergence.svg");
    }
}

ExperimentResult run_experiment(const RunConfig& config) {
    config.validate();
    const auto started = std::chrono::steady_clock::now();

    const bool writes_files = config.outputs.round_csv || config.outputs.summary || config.outputs.qtable ||
                              config.outputs.path_svg || config.outputs.convergence_svg;
    const fs::path dir = config.outputs.directory;
    if (writes_files) {
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec || !fs::is_directory(dir)) {
            throw std::runtime_error("cannot create output directory " + dir.string() +
                                     (ec ? ": " + ec.message() : std::string()));
        }
    }

    ExperimentResult result{RunSummary{}, {}, QTable(config.medium.num_actions())};
    RunSummary& summary = result.summary;
    summary.config = config;
    summary.discrete = brute_force_optimum(config.medium, config.oracle.max_states);
    summary.continuous = fermat_continuous(config.medium, config.oracle.tolerance);

    const ScoreScale scale = config.score_scale();
    Rng rng(config.agent.seed);
    const double initial_time = path_time(config.medium, config.s_ini);
    for (int episode = 0; episode < config.agent.episodes; ++episode) {
        auto records = run_episode(config.medium, result.table, config.agent, config.s_ini, scale, episode, rng);
        double best_time = initial_time;
        InterfaceState best_state = config.s_ini;
        for (const auto& r : records) {
            if (r.time_T < best_time) {
                best_time = r.time_T;
                best_state = r.state_after;
            }
        }
        summary.episode_best_T.push_back(best_time);
        summary.episode_best_state.push_back(std::move(best_state));
        result.records.insert(result.records.end(), std::make_move_iterator(records.begin()),
                              std::make_move_iterator(records.end()));
    }

    const double rel_tol = config.evaluation.convergence_rel_tol;
    if (config.agent.episodes > 0) {
        summary.greedy_state =
            greedy_state(config.medium, result.table, config.s_ini, config.evaluation.greedy_max_steps);
        summary.greedy_T = path_time(config.medium, *summary.greedy_state);
        summary.converged = within_tolerance(*summary.greedy_T, summary.discrete.time, rel_tol);
        summary.final_episode_converged =
            within_tolerance(summary.episode_best_T.back(), summary.discrete.time, rel_tol);
    }
    summary.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    if (config.outputs.round_csv) write_round_csv(result.records, dir / "rounds.csv");
    if (config.outputs.qtable) write_text_file(dir / "qtable.json", qtable_to_json(result.table));
    if (config.outputs.summary) write_text_file(dir / "summary.json", summary_to_json(summary));
    render_figures(config, result.records, summary.discrete);
    return result;
}

namespace {

ordered_json summary_json(const RunSummary& s) {
    ordered_json j;
    j["config"] = detail::config_to_json(s.config, false);
    j["oracle_discrete"] = {{"state", detail::state_to_json(s.discrete.state)}, {"time_T", s.discrete.time}};
    j["oracle_continuous"] = {{"ys", s.continuous.ys},
                              {"time_T", s.continuous.time},
                              {"snell_residual", s.continuous.snell_residual},
                              {"sweeps", s.continuous.sweeps}};
    ordered_json training;
    if (s.episode_best_T.empty()) {
        training = nullptr;
    } else {
        training["episode_best_T"] = s.episode_best_T;
        auto states = ordered_json::array();
        for (const auto& st : s.episode_best_state) states.push_back(detail::state_to_json(st));
        training["episode_best_state"] = std::move(states);
        training["final_episode_best_T"] = s.episode_best_T.back();
        training["final_episode_converged"] = s.final_episode_converged;
        training["greedy_state"] = detail::state_to_json(*s.greedy_state);
        training["greedy_T"] = *s.greedy_T;
        training["converged"] = s.converged;
    }
    j["training"] = std::move(training);
    return j;
}

}  // namespace

std::string summary_to_json(const RunSummary& summary) { return summary_json(summary).dump(2) + "\n"; }

bool SweepResult::all_succeeded() const noexcept {
    return std::all_of(outcomes.begin(), outcomes.end(), [](const SeedOutcome& o) { return o.summary.has_value(); });
}

SweepResult run_sweep(const RunConfig& config, std::span<const std::uint64_t> seeds, unsigned jobs) {
    if (seeds.empty()) throw std::invalid_argument("sweep needs at least one seed");
    config.validate();

    SweepResult result;
    result.outcomes.resize(seeds.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < seeds.size(); i = next++) {
            SeedOutcome& outcome = result.outcomes[i];
            outcome.seed = seeds[i];
            RunConfig seeded = config;
            seeded.agent.seed = seeds[i];
            seeded.outputs.directory = (fs::path(config.outputs.directory) / ("seed_" + std::to_string(seeds[i])))
                                           .string();
            try {
                outcome.summary = run_experiment(seeded).summary;
            } catch (const std::exception& e) {
                outcome.error = e.what();
            }
        }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(seeds.size())));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }

    std::size_t final_hits = 0;
    std::size_t greedy_hits = 0;
    for (const auto& o : result.outcomes) {
        if (!o.summary) continue;
        final_hits += o.summary->final_episode_converged ? 1 : 0;
        greedy_hits += o.summary->converged ? 1 : 0;
    }
    result.final_episode_rate = static_cast<double>(final_hits) / static_cast<double>(seeds.size());
    result.greedy_rate = static_cast<double>(greedy_hits) / static_cast<double>(seeds.size());

    const fs::path dir = config.outputs.directory;
    std::error_code ec;
    fs::create_directories(dir, ec);
    write_text_file(dir / "sweep.json", sweep_to_json(result));
    return result;
}

std::string sweep_to_json(const SweepResult& result) {
    ordered_json j;
    auto seeds = ordered_json::array();
    for (const auto& o : result.outcomes) {
        ordered_json row;
        row["seed"] = o.seed;
        if (o.summary) {
            row["oracle_T"] = o.summary->discrete.time;
            row["final_episode_best_T"] =
                o.summary->episode_best_T.empty() ? ordered_json(nullptr) : ordered_json(o.summary->episode_best_T.back());
            row["greedy_T"] = o.summary->greedy_T ? ordered_json(*o.summary->greedy_T) : ordered_json(nullptr);
            row["final_episode_converged"] = o.summary->final_episode_converged;
            row["converged"] = o.summary->converged;
        } else {
            row["error"] = o.error;
        }
        seeds.push_back(std::move(row));
    }
    j["seeds"] = std::move(seeds);
    j["final_episode_convergence_rate"] = result.final_episode_rate;
    j["greedy_convergence_rate"] = result.greedy_rate;
    return j.dump(2) + "\n";
}

}  // namespace leastaction

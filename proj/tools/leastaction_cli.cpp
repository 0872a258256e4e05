// leastaction: train the refraction Q-learning agent, query the oracles, and
// render figures from the command line.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "leastaction/config.hpp"
#include "leastaction/experiment.hpp"
#include "leastaction/oracle.hpp"
#include "leastaction/records.hpp"

namespace {

using namespace leastaction;

constexpr int kExitFailure = 1;
constexpr int kExitBadConfig = 2;

struct CommonOptions {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir;
    bool quiet = false;
    int verbose = 0;

    int verbosity() const { return quiet ? 0 : 1 + verbose; }
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("-c,--config", opts.config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
    cmd->add_option("-s,--set", opts.overrides, "Override a config field, e.g. agent.episodes=10 (repeatable)");
    cmd->add_option("-o,--out", opts.out_dir, "Output directory (same as --set outputs.directory=DIR)");
    cmd->add_flag("-q,--quiet", opts.quiet, "Print nothing but errors");
    cmd->add_flag("-v,--verbose", opts.verbose, "Print per-episode detail");
}

RunConfig load(const CommonOptions& opts) {
    std::vector<std::string> overrides = opts.overrides;
    if (!opts.out_dir.empty()) overrides.push_back("outputs.directory=\"" + opts.out_dir + "\"");
    return load_run_config(opts.config_path, overrides);
}

std::string state_text(const InterfaceState& s) {
    std::string out = "(";
    for (std::size_t i = 0; i < s.ys.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(s.ys[i]);
    }
    return out + ")";
}

std::string reals_text(const std::vector<double>& ys) {
    std::string out = "(";
    char buf[32];
    for (std::size_t i = 0; i < ys.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%s%.6f", i ? ", " : "", ys[i]);
        out += buf;
    }
    return out + ")";
}

void print_oracles(const DiscreteOptimum& d, const ContinuousOptimum& c) {
    std::printf("discrete optimum    %s  T = %.6f\n", state_text(d.state).c_str(), d.time);
    std::printf("continuous optimum  %s  T = %.6f\n", reals_text(c.ys).c_str(), c.time);
    std::printf("snell residual      %.3e  (%d sweeps)\n", c.snell_residual, c.sweeps);
}

void print_summary(const RunSummary& s, int verbosity) {
    print_oracles(s.discrete, s.continuous);
    if (s.episode_best_T.empty()) {
        std::printf("training            none (0 episodes)\n");
    } else {
        if (verbosity > 1) {
            for (std::size_t e = 0; e < s.episode_best_T.size(); ++e) {
                std::printf("  episode %3zu best T = %.6f at %s\n", e, s.episode_best_T[e],
                            state_text(s.episode_best_state[e]).c_str());
            }
        }
        std::printf("final episode best  %s  T = %.6f  %s\n", state_text(s.episode_best_state.back()).c_str(),
                    s.episode_best_T.back(), s.final_episode_converged ? "within tolerance" : "NOT within tolerance");
        std::printf("greedy path         %s  T = %.6f  %s\n", state_text(*s.greedy_state).c_str(), *s.greedy_T,
                    s.converged ? "converged" : "not converged");
    }
    std::printf("wall clock          %.3f s\n", s.wall_clock_seconds);
    std::printf("outputs             %s\n", s.config.outputs.directory.c_str());
}

int cmd_train(const CommonOptions& opts) {
    const RunConfig config = load(opts);
    const auto result = run_experiment(config);
    if (opts.verbosity() > 0) print_summary(result.summary, opts.verbosity());
    return 0;
}

int cmd_oracle(const CommonOptions& opts) {
    const RunConfig config = load(opts);
    const auto discrete = brute_force_optimum(config.medium, config.oracle.max_states);
    const auto continuous = fermat_continuous(config.medium, config.oracle.tolerance);
    if (opts.verbosity() > 0) print_oracles(discrete, continuous);
    return 0;
}

int cmd_render(const CommonOptions& opts, const std::string& csv_path) {
    const RunConfig config = load(opts);
    const std::filesystem::path csv =
        csv_path.empty() ? std::filesystem::path(config.outputs.directory) / "rounds.csv" : std::filesystem::path(csv_path);
    const auto records = read_round_csv(csv);
    const auto discrete = brute_force_optimum(config.medium, config.oracle.max_states);
    std::filesystem::create_directories(config.outputs.directory);
    render_figures(config, records, discrete);
    if (opts.verbosity() > 0) {
        std::printf("rendered %zu rounds from %s into %s\n", records.size(), csv.string().c_str(),
                    config.outputs.directory.c_str());
    }
    return 0;
}

int cmd_sweep(const CommonOptions& opts, const std::vector<std::uint64_t>& seeds, unsigned jobs) {
    const RunConfig config = load(opts);
    const auto result = run_sweep(config, seeds, jobs);
    for (const auto& o : result.outcomes) {
        if (!o.summary) {
            std::fprintf(stderr, "seed %llu failed: %s\n", static_cast<unsigned long long>(o.seed), o.error.c_str());
        } else if (opts.verbosity() > 0) {
            std::printf("seed %-6llu final episode best T = %.6f %s  greedy T = %.6f %s\n",
                        static_cast<unsigned long long>(o.seed), o.summary->episode_best_T.empty() ? 0.0 : o.summary->episode_best_T.back(),
                        o.summary->final_episode_converged ? "ok  " : "miss", o.summary->greedy_T.value_or(0.0),
                        o.summary->converged ? "ok" : "miss");
        }
    }
    if (opts.verbosity() > 0) {
        std::printf("final-episode convergence rate %.3f, greedy convergence rate %.3f (%zu seeds)\n",
                    result.final_episode_rate, result.greedy_rate, result.outcomes.size());
    }
    return result.all_succeeded() ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Q-learning for least-time light paths through layered media"};
    app.require_subcommand(1);

    CommonOptions train_opts, oracle_opts, render_opts, sweep_opts;
    auto* train = app.add_subcommand("train", "Run oracles and training, write CSV/summary/Q-table/SVG outputs");
    add_common(train, train_opts);

    auto* oracle = app.add_subcommand("oracle", "Print the discrete and continuous least-time paths");
    add_common(oracle, oracle_opts);

    std::string csv_path;
    auto* render = app.add_subcommand("render", "Re-render figures from a round CSV");
    add_common(render, render_opts);
    render->add_option("--csv", csv_path, "Round CSV (default: <outputs.directory>/rounds.csv)");

    std::vector<std::uint64_t> seeds;
    unsigned jobs = 1;
    auto* sweep = app.add_subcommand("sweep", "Run one experiment per seed and aggregate convergence");
    add_common(sweep, sweep_opts);
    sweep->add_option("--seeds", seeds, "Seeds, space or comma separated")->required()->delimiter(',')->expected(1, -1);
    sweep->add_option("-j,--jobs", jobs, "Experiments to run concurrently")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*train) return cmd_train(train_opts);
        if (*oracle) return cmd_oracle(oracle_opts);
        if (*render) return cmd_render(render_opts, csv_path);
        if (*sweep) return cmd_sweep(sweep_opts, seeds, jobs);
    } catch (const ConfigError& e) {
        std::cerr << "error: invalid config: " << e.what() << '\n';
        return kExitBadConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitFailure;
}

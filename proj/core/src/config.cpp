#include "leastaction/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json_io.hpp"

namespace leastaction {

using nlohmann::ordered_json;

LayeredMedium paper_medium() { return LayeredMedium({1.0, 1.3, 1.6}, 50, 50, {0.0, 0.0}, {150.0, 50.0}); }

void RunConfig::validate() const {
    agent.validate();
    try {
        check_state(medium, s_ini);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("s_ini", e.what());
    }
    if (reward_scale && !(*reward_scale > 0.0 && std::isfinite(*reward_scale))) {
        throw ConfigError("reward_scale_mode", "explicit scale must be finite and positive");
    }
    if (oracle.max_states == 0) throw ConfigError("oracle.max_states", "must be positive");
    if (!(oracle.tolerance > 0.0)) throw ConfigError("oracle.tolerance", "must be positive");
    if (!(evaluation.convergence_rel_tol >= 0.0)) {
        throw ConfigError("evaluation.convergence_rel_tol", "must be non-negative");
    }
    if (evaluation.greedy_max_steps <= 0) throw ConfigError("evaluation.greedy_max_steps", "must be positive");
    if (outputs.directory.empty()) throw ConfigError("outputs.directory", "must not be empty");
    for (int e : outputs.figure_episodes) {
        if (e < 0) throw ConfigError("outputs.figure_episodes", "episode numbers must be non-negative");
    }
}

ScoreScale RunConfig::score_scale() const {
    if (reward_scale) return ScoreScale::factor(*reward_scale);
    return ScoreScale::normalized_to(path_time(medium, s_ini));
}

namespace detail {

ordered_json state_to_json(const InterfaceState& state) { return state.ys; }

ordered_json config_to_json(const RunConfig& config, bool include_outputs) {
    const auto& m = config.medium;
    ordered_json j;
    j["medium"] = {{"indices", m.indices()},
                   {"slab_width", m.slab_width()},
                   {"height", m.height()},
                   {"start", {m.start().x, m.start().y}},
                   {"end", {m.end().x, m.end().y}}};
    j["s_ini"] = state_to_json(config.s_ini);
    j["agent"] = {{"epsilon", config.agent.epsilon},
                  {"alpha", config.agent.alpha},
                  {"gamma", config.agent.gamma},
                  {"episodes", config.agent.episodes},
                  {"rounds_per_episode", config.agent.rounds_per_episode},
                  {"seed", config.agent.seed}};
    if (config.reward_scale) {
        j["reward_scale_mode"] = *config.reward_scale;
    } else {
        j["reward_scale_mode"] = "normalized";
    }
    j["oracle"] = {{"max_states", config.oracle.max_states}, {"tolerance", config.oracle.tolerance}};
    j["evaluation"] = {{"convergence_rel_tol", config.evaluation.convergence_rel_tol},
                       {"greedy_max_steps", config.evaluation.greedy_max_steps}};
    if (include_outputs) {
        const auto& o = config.outputs;
        j["outputs"] = {{"directory", o.directory},
                        {"round_csv", o.round_csv},
                        {"summary", o.summary},
                        {"qtable", o.qtable},
                        {"path_svg", o.path_svg},
                        {"convergence_svg", o.convergence_svg},
                        {"figure_episodes", o.figure_episodes},
                        {"path_episode", o.path_episode}};
    }
    return j;
}

}  // namespace detail

namespace {

// Walks a parsed document against the default document, rejecting keys the
// default does not have.
void check_known_keys(const ordered_json& doc, const ordered_json& schema, const std::string& prefix) {
    if (!doc.is_object()) {
        throw ConfigError(prefix.empty() ? "<root>" : prefix, "expected an object");
    }
    for (const auto& [key, value] : doc.items()) {
        const std::string path = prefix.empty() ? key : prefix + "." + key;
        if (!schema.contains(key)) throw ConfigError(path, "unknown key");
        if (schema[key].is_object()) check_known_keys(value, schema[key], path);
    }
}

template <class T>
T get_as(const ordered_json& node, const std::string& path) {
    try {
        if constexpr (std::is_same_v<T, int> || std::is_same_v<T, std::uint64_t>) {
            if (!node.is_number_integer()) throw ConfigError(path, "expected an integer");
            if constexpr (std::is_same_v<T, std::uint64_t>) {
                if (node.is_number_integer() && !node.is_number_unsigned() && node.get<std::int64_t>() < 0) {
                    throw ConfigError(path, "expected a non-negative integer");
                }
            }
        } else if constexpr (std::is_same_v<T, double>) {
            if (!node.is_number()) throw ConfigError(path, "expected a number");
        } else if constexpr (std::is_same_v<T, bool>) {
            if (!node.is_boolean()) throw ConfigError(path, "expected true or false");
        } else if constexpr (std::is_same_v<T, std::string>) {
            if (!node.is_string()) throw ConfigError(path, "expected a string");
        }
        return node.get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path, e.what());
    }
}

template <class T>
std::vector<T> get_list(const ordered_json& node, const std::string& path) {
    if (!node.is_array()) throw ConfigError(path, "expected a list");
    std::vector<T> out;
    for (std::size_t i = 0; i < node.size(); ++i) out.push_back(get_as<T>(node[i], path));
    return out;
}

Point get_point(const ordered_json& node, const std::string& path) {
    const auto xy = get_list<double>(node, path);
    if (xy.size() != 2) throw ConfigError(path, "expected [x, y]");
    return {xy[0], xy[1]};
}

template <class T>
void read_field(const ordered_json& obj, const char* key, const std::string& prefix, T& out) {
    if (obj.contains(key)) out = get_as<T>(obj[key], prefix + key);
}

RunConfig from_json(const ordered_json& doc) {
    RunConfig config;
    if (doc.contains("medium")) {
        const auto& m = doc["medium"];
        auto indices = config.medium.indices();
        int slab_width = config.medium.slab_width();
        int height = config.medium.height();
        Point start = config.medium.start();
        Point end = config.medium.end();
        if (m.contains("indices")) indices = get_list<double>(m["indices"], "medium.indices");
        read_field(m, "slab_width", "medium.", slab_width);
        read_field(m, "height", "medium.", height);
        if (m.contains("start")) start = get_point(m["start"], "medium.start");
        if (m.contains("end")) end = get_point(m["end"], "medium.end");
        try {
            config.medium = LayeredMedium(std::move(indices), slab_width, height, start, end);
        } catch (const std::invalid_argument& e) {
            const std::string what = e.what();
            const auto colon = what.find(':');
            throw ConfigError(what.substr(0, colon), what.substr(colon + 2));
        }
    }
    if (doc.contains("s_ini")) config.s_ini.ys = get_list<int>(doc["s_ini"], "s_ini");
    if (doc.contains("agent")) {
        const auto& a = doc["agent"];
        read_field(a, "epsilon", "agent.", config.agent.epsilon);
        read_field(a, "alpha", "agent.", config.agent.alpha);
        read_field(a, "gamma", "agent.", config.agent.gamma);
        read_field(a, "episodes", "agent.", config.agent.episodes);
        read_field(a, "rounds_per_episode", "agent.", config.agent.rounds_per_episode);
        read_field(a, "seed", "agent.", config.agent.seed);
    }
    if (doc.contains("reward_scale_mode")) {
        const auto& mode = doc["reward_scale_mode"];
        if (mode.is_string()) {
            if (mode.get<std::string>() != "normalized") {
                throw ConfigError("reward_scale_mode", "expected \"normalized\" or a positive number");
            }
            config.reward_scale.reset();
        } else {
            config.reward_scale = get_as<double>(mode, "reward_scale_mode");
        }
    }
    if (doc.contains("oracle")) {
        read_field(doc["oracle"], "max_states", "oracle.", config.oracle.max_states);
        read_field(doc["oracle"], "tolerance", "oracle.", config.oracle.tolerance);
    }
    if (doc.contains("evaluation")) {
        read_field(doc["evaluation"], "convergence_rel_tol", "evaluation.", config.evaluation.convergence_rel_tol);
        read_field(doc["evaluation"], "greedy_max_steps", "evaluation.", config.evaluation.greedy_max_steps);
    }
    if (doc.contains("outputs")) {
        const auto& o = doc["outputs"];
        read_field(o, "directory", "outputs.", config.outputs.directory);
        read_field(o, "round_csv", "outputs.", config.outputs.round_csv);
        read_field(o, "summary", "outputs.", config.outputs.summary);
        read_field(o, "qtable", "outputs.", config.outputs.qtable);
        read_field(o, "path_svg", "outputs.", config.outputs.path_svg);
        read_field(o, "convergence_svg", "outputs.", config.outputs.convergence_svg);
        if (o.contains("figure_episodes")) {
            config.outputs.figure_episodes = get_list<int>(o["figure_episodes"], "outputs.figure_episodes");
        }
        read_field(o, "path_episode", "outputs.", config.outputs.path_episode);
    }
    try {
        config.validate();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        const std::string what = e.what();
        const auto colon = what.find(':');
        throw ConfigError(what.substr(0, colon), colon == std::string::npos ? what : what.substr(colon + 2));
    }
    return config;
}

void apply_override(ordered_json& doc, const ordered_json& schema, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError(assignment, "override must have the form key=value");
    }
    const std::string key = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);

    ordered_json* node = &doc;
    const ordered_json* shape = &schema;
    std::size_t begin = 0;
    for (;;) {
        const auto dot = key.find('.', begin);
        const std::string part = key.substr(begin, dot == std::string::npos ? std::string::npos : dot - begin);
        if (!shape->is_object() || !shape->contains(part)) throw ConfigError(key, "unknown key");
        shape = &(*shape)[part];
        if (!node->is_object() && !node->is_null()) throw ConfigError(key, "parent is not an object");
        node = &(*node)[part];
        if (dot == std::string::npos) break;
        begin = dot + 1;
    }
    if (shape->is_object()) throw ConfigError(key, "cannot override a whole section");
    auto value = ordered_json::parse(text, nullptr, false);
    *node = value.is_discarded() ? ordered_json(text) : std::move(value);
}

}  // namespace

RunConfig parse_run_config(std::string_view json_text, std::span<const std::string> overrides) {
    auto doc = ordered_json::parse(json_text, nullptr, false, true);
    if (doc.is_discarded()) throw ConfigError("<root>", "config is not valid JSON");
    const auto schema = detail::config_to_json(RunConfig{}, true);
    check_known_keys(doc, schema, "");
    for (const auto& assignment : overrides) apply_override(doc, schema, assignment);
    return from_json(doc);
}

RunConfig load_run_config(const std::filesystem::path& path, std::span<const std::string> overrides) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_run_config(text.str(), overrides);
}

std::string run_config_to_json(const RunConfig& config) { return detail::config_to_json(config, true).dump(2); }

}  // namespace leastaction

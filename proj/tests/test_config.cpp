#include <gtest/gtest.h>

#include "leastaction/config.hpp"

using namespace leastaction;

namespace {

std::string field_of(const std::string& json, std::vector<std::string> overrides = {}) {
    try {
        parse_run_config(json, overrides);
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "<no error>";
}

}  // namespace

TEST(RunConfig, ShippedFilesParse) {
    const auto paper = load_run_config(LEASTACTION_CONFIG_DIR "/paper_default.json");
    EXPECT_EQ(paper.medium, paper_medium());
    EXPECT_EQ(paper.s_ini, (InterfaceState{{0, 0}}));
    EXPECT_EQ(paper.agent.epsilon, 0.9);
    EXPECT_EQ(paper.agent.alpha, 0.001);
    EXPECT_EQ(paper.agent.gamma, 0.9);
    EXPECT_EQ(paper.agent.episodes, 100);
    EXPECT_EQ(paper.agent.rounds_per_episode, 300);
    EXPECT_FALSE(paper.reward_scale.has_value());

    const auto alt = load_run_config(LEASTACTION_CONFIG_DIR "/paper_alt.json");
    EXPECT_EQ(alt.medium.indices(), (std::vector<double>{3.0, 1.0, 2.0}));
    EXPECT_EQ(alt.s_ini, (InterfaceState{{50, 50}}));
}

TEST(RunConfig, EmptyDocumentIsPaperDefault) {
    EXPECT_EQ(parse_run_config("{}"), RunConfig{});
}

TEST(RunConfig, JsonRoundTrip) {
    RunConfig c;
    c.agent.seed = 12345678901234ull;
    c.reward_scale = 2.5;
    c.outputs.figure_episodes = {1, 5};
    EXPECT_EQ(parse_run_config(run_config_to_json(c)), c);
}

TEST(RunConfig, UnknownKeysRejected) {
    EXPECT_EQ(field_of(R"({"agent": {"epsilom": 0.5}})"), "agent.epsilom");
    EXPECT_EQ(field_of(R"({"extra": 1})"), "extra");
    EXPECT_EQ(field_of("{}", {"agent.nope=1"}), "agent.nope");
    EXPECT_EQ(field_of("{}", {"nope.x=1"}), "nope.x");
}

TEST(RunConfig, ErrorsNameTheField) {
    EXPECT_EQ(field_of(R"({"medium": {"indices": [1, -1.3, 1.6]}})"), "medium.indices");
    EXPECT_EQ(field_of(R"({"medium": {"indices": "x"}})"), "medium.indices");
    EXPECT_EQ(field_of(R"({"agent": {"episodes": 1.5}})"), "agent.episodes");
    EXPECT_EQ(field_of(R"({"agent": {"epsilon": 2}})"), "agent.epsilon");
    EXPECT_EQ(field_of(R"({"s_ini": [0, 51]})"), "s_ini");
    EXPECT_EQ(field_of(R"({"s_ini": [0]})"), "s_ini");
    EXPECT_EQ(field_of(R"({"reward_scale_mode": "huge"})"), "reward_scale_mode");
    EXPECT_EQ(field_of(R"({"reward_scale_mode": -1})"), "reward_scale_mode");
    EXPECT_EQ(field_of(R"({"medium": {"end": [100, 50]}})"), "medium.end");
    EXPECT_EQ(field_of(R"({"outputs": {"summary": 1}})"), "outputs.summary");
    EXPECT_EQ(field_of("not json"), "<root>");
}

TEST(RunConfig, OverridesMatchFileEdits) {
    const std::vector<std::string> overrides{"agent.episodes=7", "medium.indices=[3,1,2]", "s_ini=[50,50]",
                                             "outputs.directory=some/where", "reward_scale_mode=1.5"};
    const auto overridden = parse_run_config("{}", overrides);
    const auto edited = parse_run_config(R"({"agent": {"episodes": 7}, "medium": {"indices": [3, 1, 2]},
        "s_ini": [50, 50], "outputs": {"directory": "some/where"}, "reward_scale_mode": 1.5})");
    EXPECT_EQ(overridden, edited);
    EXPECT_EQ(overridden.outputs.directory, "some/where");
    EXPECT_EQ(*overridden.reward_scale, 1.5);
}

TEST(RunConfig, OverrideSyntax) {
    EXPECT_THROW(parse_run_config("{}", std::vector<std::string>{"agent.episodes"}), ConfigError);
    EXPECT_EQ(field_of("{}", {"agent=3"}), "agent");
    EXPECT_EQ(parse_run_config("{}", std::vector<std::string>{"reward_scale_mode=normalized"}).reward_scale,
              std::nullopt);
}

TEST(RunConfig, NormalizedScaleScoresInitialPathAtOne) {
    const RunConfig c;
    EXPECT_DOUBLE_EQ(r_score(path_time(c.medium, c.s_ini), c.score_scale()), 1.0);
}

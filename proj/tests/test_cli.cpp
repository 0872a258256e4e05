#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "test_support.hpp"

using leastaction::testing::slurp;
using leastaction::testing::TempDir;

namespace {

struct Run {
    int status = -1;
    std::string output;
};

Run run_cli(const std::string& args) {
    const std::string cmd = std::string(LEASTACTION_CLI) + " " + args + " 2>&1";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 512> buf{};
    while (fgets(buf.data(), buf.size(), pipe)) r.output += buf.data();
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

const std::string kPaper = LEASTACTION_CONFIG_DIR "/paper_default.json";
const std::string kAlt = LEASTACTION_CONFIG_DIR "/paper_alt.json";

}  // namespace

TEST(Cli, TrainWritesArtifactsAndReportsOracle) {
    TempDir dir("cli_train");
    const auto r = run_cli("train --config " + kPaper + " --out " + dir.path().string());
    ASSERT_EQ(r.status, 0) << r.output;
    EXPECT_NE(r.output.find("discrete optimum    (21, 37)"), std::string::npos) << r.output;
    for (const char* name : {"rounds.csv", "summary.json", "qtable.json", "path.svg", "convergence.svg"}) {
        EXPECT_TRUE(std::filesystem::exists(dir.path() / name)) << name;
    }
}

TEST(Cli, ZeroEpisodesOverride) {
    TempDir dir("cli_zero");
    const auto r = run_cli("train --config " + kPaper + " --set agent.episodes=0 --out " + dir.path().string());
    ASSERT_EQ(r.status, 0) << r.output;
    EXPECT_NE(r.output.find("training            none"), std::string::npos) << r.output;
    const auto summary = nlohmann::json::parse(slurp(dir.path() / "summary.json"));
    EXPECT_TRUE(summary["training"].is_null());
}

TEST(Cli, OverrideEqualsEditedFile) {
    TempDir dir("cli_override");
    auto doc = nlohmann::json::parse(slurp(kPaper));
    doc["agent"]["episodes"] = 5;
    doc["agent"]["seed"] = 77;
    const auto edited = dir.path() / "edited.json";
    {
        std::ofstream(edited) << doc.dump(2);
    }
    const auto a = run_cli("train -q --config " + edited.string() + " --out " + (dir.path() / "a").string());
    const auto b = run_cli("train -q --config " + kPaper + " --set agent.episodes=5 --set agent.seed=77 --out " +
                           (dir.path() / "b").string());
    ASSERT_EQ(a.status, 0);
    ASSERT_EQ(b.status, 0);
    EXPECT_EQ(slurp(dir.path() / "a" / "rounds.csv"), slurp(dir.path() / "b" / "rounds.csv"));
    EXPECT_EQ(slurp(dir.path() / "a" / "summary.json"), slurp(dir.path() / "b" / "summary.json"));
}

TEST(Cli, NegativeIndexNamesField) {
    TempDir dir("cli_bad");
    auto doc = nlohmann::json::parse(slurp(kPaper));
    doc["medium"]["indices"] = {1.0, -1.3, 1.6};
    const auto bad = dir.path() / "bad.json";
    {
        std::ofstream(bad) << doc.dump();
    }
    const auto r = run_cli("train --config " + bad.string() + " --out " + dir.path().string());
    EXPECT_NE(r.status, 0);
    EXPECT_NE(r.output.find("medium.indices"), std::string::npos) << r.output;
}

TEST(Cli, UnknownOverrideRejected) {
    const auto r = run_cli("oracle --config " + kPaper + " --set agent.epsilom=0.5");
    EXPECT_NE(r.status, 0);
    EXPECT_NE(r.output.find("agent.epsilom"), std::string::npos) << r.output;
}

TEST(Cli, OraclePaperDefault) {
    const auto r = run_cli("oracle --config " + kPaper);
    ASSERT_EQ(r.status, 0) << r.output;
    EXPECT_NE(r.output.find("discrete optimum    (21, 37)"), std::string::npos) << r.output;
    EXPECT_NE(r.output.find("continuous optimum  (21.416123, 37.305713)"), std::string::npos) << r.output;
}

TEST(Cli, OracleUniformMedium) {
    const auto r = run_cli("oracle --config " + kPaper + " --set medium.indices=[1,1,1] --set medium.end=[150,0]");
    ASSERT_EQ(r.status, 0) << r.output;
    EXPECT_NE(r.output.find("(0, 0)  T = 150.000000"), std::string::npos) << r.output;
}

TEST(Cli, OracleRefusesOversizedStateSpace) {
    const auto r = run_cli("oracle --config " + kPaper +
                           " --set medium.indices=[1,1,1,1,1] --set medium.height=1000000 "
                           "--set medium.end=[250,0] --set s_ini=[0,0,0,0]");
    EXPECT_NE(r.status, 0);
    EXPECT_NE(r.output.find("exceeds the enumeration cap"), std::string::npos) << r.output;
}

TEST(Cli, RenderFromCsv) {
    TempDir dir("cli_render");
    ASSERT_EQ(run_cli("train -q --config " + kAlt + " --set agent.episodes=12 --out " + dir.path().string()).status, 0);
    std::filesystem::remove(dir.path() / "convergence.svg");
    std::filesystem::remove(dir.path() / "path.svg");
    const auto r = run_cli("render --config " + kAlt + " --set agent.episodes=12 --out " + dir.path().string());
    ASSERT_EQ(r.status, 0) << r.output;
    EXPECT_TRUE(std::filesystem::exists(dir.path() / "path.svg"));
    const auto svg = slurp(dir.path() / "convergence.svg");
    EXPECT_NE(svg.find("data-episode=\"11\""), std::string::npos);
    EXPECT_NE(svg.find("class=\"oracle-line\""), std::string::npos);
}

TEST(Cli, SweepAggregates) {
    TempDir dir("cli_sweep");
    const auto r = run_cli("sweep --config " + kPaper + " --seeds 1,2,3 --jobs 3 --out " + dir.path().string());
    ASSERT_EQ(r.status, 0) << r.output;
    const auto agg = nlohmann::json::parse(slurp(dir.path() / "sweep.json"));
    EXPECT_EQ(agg["seeds"].size(), 3u);
    EXPECT_TRUE(agg.contains("final_episode_convergence_rate"));
    for (int s = 1; s <= 3; ++s) {
        EXPECT_TRUE(std::filesystem::exists(dir.path() / ("seed_" + std::to_string(s)) / "summary.json"));
    }
}

TEST(Cli, SweepSingleSeedMatchesTrain) {
    TempDir dir("cli_sweep1");
    ASSERT_EQ(run_cli("train -q --config " + kPaper + " --set agent.seed=9 --out " + (dir.path() / "t").string()).status, 0);
    ASSERT_EQ(run_cli("sweep -q --config " + kPaper + " --seeds 9 --out " + (dir.path() / "s").string()).status, 0);
    EXPECT_EQ(slurp(dir.path() / "t" / "summary.json"), slurp(dir.path() / "s" / "seed_9" / "summary.json"));
}

TEST(Cli, SweepWithoutSeedsFails) {
    EXPECT_NE(run_cli("sweep --config " + kPaper).status, 0);
    EXPECT_NE(run_cli("sweep --config " + kPaper + " --seeds").status, 0);
}

TEST(Cli, MissingSubcommandOrConfigFails) {
    EXPECT_NE(run_cli("").status, 0);
    EXPECT_NE(run_cli("train").status, 0);
    EXPECT_NE(run_cli("train --config /no/such/file.json").status, 0);
}

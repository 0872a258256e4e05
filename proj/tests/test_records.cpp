#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "leastaction/experiment.hpp"
#include "leastaction/records.hpp"
#include "test_support.hpp"

using namespace leastaction;

namespace {

bool close6(double a, double b) { return a == b || std::abs(a - b) <= 5e-6 * std::max(std::abs(a), std::abs(b)); }

std::size_t count_lines(const std::string& text) { return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')); }

}  // namespace

TEST(RoundCsv, EmptyIsHeaderOnly) {
    std::ostringstream out;
    write_round_csv({}, out);
    EXPECT_EQ(out.str(), std::string(kRoundCsvHeader) + "\n");
    std::istringstream in(out.str());
    EXPECT_TRUE(read_round_csv(in).empty());
}

TEST(RoundCsv, RowFormat) {
    const RoundRecord r{3, 17, InterfaceState{{21, 38}}, {1, Direction::Up}, 205.1424, 1.234567891e9, -12.5, 205.13767};
    std::ostringstream out;
    write_round_csv(std::span(&r, 1), out);
    EXPECT_EQ(out.str(), std::string(kRoundCsvHeader) + "\n3,17,21;38,y2_up,205.142,1.23457e+09,-12.5,205.138\n");
}

TEST(RoundCsv, ParseReproducesRecordsToSixDigits) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> mag(-30.0, 30.0);
    std::uniform_int_distribution<int> y(0, 50);
    std::vector<RoundRecord> records;
    for (int i = 0; i < 500; ++i) {
        RoundRecord r;
        r.episode = i / 50;
        r.round = i % 50;
        r.state_after.ys = {y(rng), y(rng), y(rng)};
        r.action = MoveAction::from_index(static_cast<std::size_t>(y(rng) % 6));
        r.time_T = 150.0 + std::abs(mag(rng)) * 5;
        r.r_score = std::exp(mag(rng));
        r.reward = (i % 2 ? -1 : 1) * std::exp(mag(rng));
        r.best_T = r.time_T - 1.0 / 3.0;
        records.push_back(r);
    }
    std::stringstream buf;
    write_round_csv(records, buf);
    const auto parsed = read_round_csv(buf);
    ASSERT_EQ(parsed.size(), records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        EXPECT_EQ(parsed[i].episode, records[i].episode);
        EXPECT_EQ(parsed[i].round, records[i].round);
        EXPECT_EQ(parsed[i].state_after, records[i].state_after);
        EXPECT_EQ(parsed[i].action, records[i].action);
        EXPECT_TRUE(close6(parsed[i].time_T, records[i].time_T));
        EXPECT_TRUE(close6(parsed[i].r_score, records[i].r_score));
        EXPECT_TRUE(close6(parsed[i].reward, records[i].reward));
        EXPECT_TRUE(close6(parsed[i].best_T, records[i].best_T));
    }
}

TEST(RoundCsv, MalformedInputRejected) {
    std::istringstream bad_header("episode,round\n");
    EXPECT_THROW(read_round_csv(bad_header), std::runtime_error);
    std::istringstream bad_row(std::string(kRoundCsvHeader) + "\n1,2,3\n");
    EXPECT_THROW(read_round_csv(bad_row), std::runtime_error);
    std::istringstream bad_action(std::string(kRoundCsvHeader) + "\n1,2,3;4,z9,1,1,1,1\n");
    EXPECT_THROW(read_round_csv(bad_action), std::runtime_error);
}

TEST(RoundCsv, FullPaperRunHasOneLinePerRound) {
    leastaction::testing::TempDir dir("csv");
    RunConfig c;
    c.outputs = OutputConfig{};
    c.outputs.directory = dir.path().string();
    c.outputs.qtable = c.outputs.path_svg = c.outputs.convergence_svg = c.outputs.summary = false;
    run_experiment(c);
    EXPECT_EQ(count_lines(leastaction::testing::slurp(dir.path() / "rounds.csv")), 30001u);
}

TEST(RoundCsv, UnwritablePathThrows) {
    EXPECT_THROW(write_round_csv({}, std::filesystem::path("/nonexistent_dir_xyz/rounds.csv")), std::runtime_error);
}

TEST(ActionLabel, RoundTrip) {
    for (std::size_t i = 0; i < 10; ++i) {
        const auto a = MoveAction::from_index(i);
        EXPECT_EQ(parse_action_label(action_label(a)), a);
    }
    EXPECT_EQ(action_label({0, Direction::Down}), "y1_down");
}

TEST(QTableJson, SortedAndRoundTrips) {
    QTable t(4);
    t.row(InterfaceState{{10, 2}})[1] = -3.25;
    t.row(InterfaceState{{2, 40}})[0] = 1e-300;
    t.row(InterfaceState{{2, 7}})[3] = 0.1;
    const auto text = qtable_to_json(t);
    const auto doc = nlohmann::json::parse(text);
    ASSERT_EQ(doc["entries"].size(), 3u);
    EXPECT_EQ(doc["entries"][0]["state"], nlohmann::json({2, 7}));
    EXPECT_EQ(doc["entries"][1]["state"], nlohmann::json({2, 40}));
    EXPECT_EQ(doc["entries"][2]["state"], nlohmann::json({10, 2}));
    EXPECT_EQ(qtable_from_json(text), t);
    EXPECT_THROW(qtable_from_json("{\"num_actions\": 4, \"entries\": [{\"state\": [1,1], \"q\": [1]}]}"),
                 std::runtime_error);
}

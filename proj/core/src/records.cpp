#include "leastaction/records.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace leastaction {

namespace {

std::string format_real(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, sep)) parts.push_back(part);
    if (!text.empty() && text.back() == sep) parts.emplace_back();
    return parts;
}

}  // namespace

std::string action_label(MoveAction action) {
    return "y" + std::to_string(action.interface_index + 1) + (action.direction == Direction::Up ? "_up" : "_down");
}

MoveAction parse_action_label(const std::string& label) {
    const auto underscore = label.find('_');
    if (label.size() < 4 || label[0] != 'y' || underscore == std::string::npos) {
        throw std::runtime_error("bad action label '" + label + "'");
    }
    const int interface = std::stoi(label.substr(1, underscore - 1));
    const std::string dir = label.substr(underscore + 1);
    if (interface < 1 || (dir != "up" && dir != "down")) throw std::runtime_error("bad action label '" + label + "'");
    return {static_cast<std::size_t>(interface - 1), dir == "up" ? Direction::Up : Direction::Down};
}

void write_round_csv(std::span<const RoundRecord> records, std::ostream& out) {
    out << kRoundCsvHeader << '\n';
    for (const auto& r : records) {
        out << r.episode << ',' << r.round << ',';
        for (std::size_t i = 0; i < r.state_after.ys.size(); ++i) {
            if (i) out << ';';
            out << r.state_after.ys[i];
        }
        out << ',' << action_label(r.action) << ',' << format_real(r.time_T) << ',' << format_real(r.r_score) << ','
            << format_real(r.reward) << ',' << format_real(r.best_T) << '\n';
    }
}

void write_round_csv(std::span<const RoundRecord> records, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_round_csv(records, out);
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::vector<RoundRecord> read_round_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kRoundCsvHeader) {
        throw std::runtime_error("round CSV: missing or unexpected header");
    }
    std::vector<RoundRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != 8) {
            throw std::runtime_error("round CSV line " + std::to_string(line_no) + ": expected 8 fields");
        }
        try {
            RoundRecord r;
            r.episode = std::stoi(fields[0]);
            r.round = std::stoi(fields[1]);
            for (const auto& y : split(fields[2], ';')) r.state_after.ys.push_back(std::stoi(y));
            r.action = parse_action_label(fields[3]);
            r.time_T = std::stod(fields[4]);
            r.r_score = std::stod(fields[5]);
            r.reward = std::stod(fields[6]);
            r.best_T = std::stod(fields[7]);
            records.push_back(std::move(r));
        } catch (const std::logic_error&) {
            throw std::runtime_error("round CSV line " + std::to_string(line_no) + ": malformed field");
        }
    }
    return records;
}

std::vector<RoundRecord> read_round_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_round_csv(in);
}

std::string qtable_to_json(const QTable& table) {
    nlohmann::ordered_json doc;
    doc["num_actions"] = table.num_actions();
    auto entries = nlohmann::ordered_json::array();
    for (const auto& [state, values] : table.entries()) {
        entries.push_back({{"state", state.ys}, {"q", values}});
    }
    doc["entries"] = std::move(entries);
    return doc.dump(1);
}

QTable qtable_from_json(const std::string& text) {
    try {
        const auto doc = nlohmann::json::parse(text);
        QTable table(doc.at("num_actions").get<std::size_t>());
        for (const auto& entry : doc.at("entries")) {
            const auto q = entry.at("q").get<std::vector<double>>();
            if (q.size() != table.num_actions()) throw std::runtime_error("Q-table entry has the wrong width");
            auto row = table.row(InterfaceState{entry.at("state").get<std::vector<int>>()});
            std::copy(q.begin(), q.end(), row.begin());
        }
        return table;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("Q-table JSON: ") + e.what());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace leastaction

#include "leastaction/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>

namespace leastaction {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

void open_svg(std::ostream& out, double width, double height) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width) << "\" height=\""
        << num(height) << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << num(width) << "\" height=\"" << num(height)
        << "\" fill=\"white\"/>\n";
}

template <class Render>
void render_to_file(const std::filesystem::path& path, Render&& render) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    render(out);
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

// "Nice" tick spacing of roughly span / target.
double tick_step(double span, int target) {
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (raw <= m * mag) return m * mag;
    }
    return 10.0 * mag;
}

}  // namespace

void render_path_svg(const LayeredMedium& medium, std::span<const InterfaceState> states,
                     const InterfaceState& oracle_state, std::ostream& out) {
    for (const auto& s : states) check_state(medium, s);
    check_state(medium, oracle_state);

    constexpr double scale = 4.0;
    constexpr double margin = 40.0;
    const double w = medium.slab_width();
    const double h = medium.height();
    const double width = medium.num_slabs() * w * scale + 2 * margin;
    const double height = h * scale + 2 * margin + 30.0;
    auto px = [&](double x) { return margin + x * scale; };
    auto py = [&](double y) { return margin + (h - y) * scale; };

    const auto& n = medium.indices();
    const auto [lo, hi] = std::minmax_element(n.begin(), n.end());

    open_svg(out, width, height);
    out << "<g id=\"slabs\">\n";
    for (std::size_t i = 0; i < medium.num_slabs(); ++i) {
        // Denser media are darker.
        const double t = *hi > *lo ? (n[i] - *lo) / (*hi - *lo) : 0.0;
        const int shade = static_cast<int>(std::lround(235.0 - 110.0 * t));
        out << "<rect class=\"slab\" x=\"" << num(px(i * w)) << "\" y=\"" << num(py(h)) << "\" width=\""
            << num(w * scale) << "\" height=\"" << num(h * scale) << "\" fill=\"rgb(" << shade << ',' << shade
            << ",255)\" stroke=\"#555555\" stroke-width=\"1\"/>\n";
        char label[48];
        std::snprintf(label, sizeof label, "n = %g", n[i]);
        out << "<text x=\"" << num(px((i + 0.5) * w)) << "\" y=\"" << num(margin - 8.0)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" << label << "</text>\n";
    }
    out << "</g>\n";

    auto polyline = [&](const InterfaceState& s) {
        std::string points = num(px(0.0)) + ',' + num(py(medium.start().y));
        for (std::size_t i = 0; i < s.ys.size(); ++i) {
            points += ' ' + num(px((i + 1) * w)) + ',' + num(py(s.ys[i]));
        }
        points += ' ' + num(px(medium.num_slabs() * w)) + ',' + num(py(medium.end().y));
        return points;
    };

    out << "<g id=\"agent-paths\">\n";
    for (const auto& s : states) {
        out << "<polyline class=\"agent-path\" points=\"" << polyline(s)
            << "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\" stroke-opacity=\"0.6\"/>\n";
    }
    out << "</g>\n";
    out << "<polyline class=\"oracle-path\" points=\"" << polyline(oracle_state)
        << "\" fill=\"none\" stroke=\"#1f3fbf\" stroke-width=\"2.5\" stroke-dasharray=\"6,4\"/>\n";

    out << "<g id=\"endpoints\" font-family=\"sans-serif\" font-size=\"14\">\n";
    const std::pair<const char*, Point> ends[] = {{"A", medium.start()}, {"B", medium.end()}};
    for (const auto& [name, p] : ends) {
        out << "<circle class=\"endpoint\" cx=\"" << num(px(p.x)) << "\" cy=\"" << num(py(p.y))
            << "\" r=\"5\" fill=\"black\"/>\n";
        out << "<text x=\"" << num(px(p.x) + (p.x == 0.0 ? -16.0 : 8.0)) << "\" y=\"" << num(py(p.y) + 5.0)
            << "\">" << name << "</text>\n";
    }
    out << "</g>\n";
    out << "<text x=\"" << num(margin) << "\" y=\"" << num(height - 12.0)
        << "\" font-family=\"sans-serif\" font-size=\"12\">solid red: agent paths; dashed blue: least-time "
           "path</text>\n";
    out << "</svg>\n";
}

void render_path_svg(const LayeredMedium& medium, std::span<const InterfaceState> states,
                     const InterfaceState& oracle_state, const std::filesystem::path& path) {
    render_to_file(path, [&](std::ostream& out) { render_path_svg(medium, states, oracle_state, out); });
}

void render_convergence_svg(std::span<const RoundRecord> records, double oracle_time, std::span<const int> episodes,
                            std::ostream& out) {
    std::set<int> wanted(episodes.begin(), episodes.end());
    std::map<int, std::vector<const RoundRecord*>> traces;
    for (const auto& r : records) {
        if (wanted.empty() || wanted.count(r.episode)) traces[r.episode].push_back(&r);
    }

    double t_min = oracle_time;
    double t_max = oracle_time;
    int max_round = 1;
    for (const auto& [episode, rows] : traces) {
        for (const auto* r : rows) {
            t_min = std::min(t_min, r->time_T);
            t_max = std::max(t_max, r->time_T);
            max_round = std::max(max_round, r->round);
        }
    }
    const double pad = std::max(1.0, 0.05 * (t_max - t_min));
    t_min -= pad;
    t_max += pad;

    constexpr double width = 800.0;
    constexpr double height = 500.0;
    constexpr double left = 70.0, right = 150.0, top = 30.0, bottom = 60.0;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;
    auto px = [&](double round) { return left + plot_w * round / max_round; };
    auto py = [&](double t) { return top + plot_h * (t_max - t) / (t_max - t_min); };

    open_svg(out, width, height);
    out << "<g id=\"axes\" font-family=\"sans-serif\" font-size=\"12\" stroke=\"black\">\n";
    out << "<line x1=\"" << num(left) << "\" y1=\"" << num(top + plot_h) << "\" x2=\"" << num(left + plot_w)
        << "\" y2=\"" << num(top + plot_h) << "\"/>\n";
    out << "<line x1=\"" << num(left) << "\" y1=\"" << num(top) << "\" x2=\"" << num(left) << "\" y2=\""
        << num(top + plot_h) << "\"/>\n";
    const double xstep = tick_step(max_round, 6);
    for (double x = 0.0; x <= max_round + 1e-9; x += xstep) {
        out << "<line x1=\"" << num(px(x)) << "\" y1=\"" << num(top + plot_h) << "\" x2=\"" << num(px(x))
            << "\" y2=\"" << num(top + plot_h + 5.0) << "\"/>\n";
        out << "<text stroke=\"none\" x=\"" << num(px(x)) << "\" y=\"" << num(top + plot_h + 20.0)
            << "\" text-anchor=\"middle\">" << static_cast<long>(x) << "</text>\n";
    }
    const double ystep = tick_step(t_max - t_min, 6);
    for (double y = std::ceil(t_min / ystep) * ystep; y <= t_max; y += ystep) {
        out << "<line x1=\"" << num(left - 5.0) << "\" y1=\"" << num(py(y)) << "\" x2=\"" << num(left)
            << "\" y2=\"" << num(py(y)) << "\"/>\n";
        char label[32];
        std::snprintf(label, sizeof label, "%g", y);
        out << "<text stroke=\"none\" x=\"" << num(left - 8.0) << "\" y=\"" << num(py(y) + 4.0)
            << "\" text-anchor=\"end\">" << label << "</text>\n";
    }
    out << "<text class=\"axis-label\" stroke=\"none\" x=\"" << num(left + plot_w / 2) << "\" y=\""
        << num(height - 15.0) << "\" text-anchor=\"middle\" font-size=\"14\">round</text>\n";
    out << "<text class=\"axis-label\" stroke=\"none\" x=\"18\" y=\"" << num(top + plot_h / 2)
        << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 18 " << num(top + plot_h / 2)
        << ")\">time T</text>\n";
    out << "</g>\n";

    out << "<g id=\"traces\">\n";
    std::size_t color = 0;
    for (const auto& [episode, rows] : traces) {
        out << "<polyline class=\"episode-trace\" data-episode=\"" << episode << "\" points=\"";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i) out << ' ';
            out << num(px(rows[i]->round)) << ',' << num(py(rows[i]->time_T));
        }
        out << "\" fill=\"none\" stroke=\"" << kPalette[color % std::size(kPalette)]
            << "\" stroke-width=\"1.2\"/>\n";
        const double ly = top + 10.0 + 18.0 * static_cast<double>(color);
        out << "<line x1=\"" << num(left + plot_w + 15.0) << "\" y1=\"" << num(ly) << "\" x2=\""
            << num(left + plot_w + 35.0) << "\" y2=\"" << num(ly) << "\" stroke=\""
            << kPalette[color % std::size(kPalette)] << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << num(left + plot_w + 40.0) << "\" y=\"" << num(ly + 4.0)
            << "\" font-family=\"sans-serif\" font-size=\"12\">episode " << episode << "</text>\n";
        ++color;
    }
    out << "</g>\n";

    out << "<line class=\"oracle-line\" x1=\"" << num(left) << "\" y1=\"" << num(py(oracle_time)) << "\" x2=\""
        << num(left + plot_w) << "\" y2=\"" << num(py(oracle_time))
        << "\" stroke=\"#d62728\" stroke-width=\"2\" stroke-dasharray=\"3,3\"/>\n";
    char label[48];
    std::snprintf(label, sizeof label, "least time %.3f", oracle_time);
    out << "<text x=\"" << num(left + plot_w + 15.0) << "\" y=\"" << num(py(oracle_time) + 4.0)
        << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#d62728\">" << label << "</text>\n";
    out << "</svg>\n";
}

void render_convergence_svg(std::span<const RoundRecord> records, double oracle_time, std::span<const int> episodes,
                            const std::filesystem::path& path) {
    render_to_file(path, [&](std::ostream& out) { render_convergence_svg(records, oracle_time, episodes, out); });
}

}  // namespace leastaction

#include "leastaction/medium.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace leastaction {

LayeredMedium::LayeredMedium(std::vector<double> indices, int slab_width, int height, Point start,
                             Point end)
    : indices_(std::move(indices)), slab_width_(slab_width), height_(height), start_(start), end_(end) {
    if (indices_.size() < 2) {
        throw std::invalid_argument("medium.indices: need at least two slabs (one interface)");
    }
    for (double n : indices_) {
        if (!(n > 0.0) || !std::isfinite(n)) {
            throw std::invalid_argument("medium.indices: refractive indices must be finite and positive");
        }
    }
    if (slab_width_ <= 0) {
        throw std::invalid_argument("medium.slab_width: must be a positive integer");
    }
    if (height_ <= 0) {
        throw std::invalid_argument("medium.height: must be a positive integer");
    }
    if (start_.x != 0.0 || !(start_.y >= 0.0 && start_.y <= height_)) {
        throw std::invalid_argument("medium.start: must lie on the left boundary x = 0 with 0 <= y <= height");
    }
    const double right = static_cast<double>(indices_.size()) * slab_width_;
    if (end_.x != right || !(end_.y >= 0.0 && end_.y <= height_)) {
        throw std::invalid_argument("medium.end: must lie on the right boundary x = " +
                                    std::to_string(static_cast<long long>(right)) +
                                    " with 0 <= y <= height");
    }
}

LayeredMedium LayeredMedium::mirrored() const {
    const double h = height_;
    return LayeredMedium(indices_, slab_width_, height_, {start_.x, h - start_.y}, {end_.x, h - end_.y});
}

MoveAction MoveAction::from_index(std::size_t index) noexcept {
    return {index / 2, index % 2 == 0 ? Direction::Up : Direction::Down};
}

std::size_t MoveAction::index() const noexcept {
    return 2 * interface_index + (direction == Direction::Up ? 0 : 1);
}

bool is_valid(const LayeredMedium& medium, const InterfaceState& state) noexcept {
    if (state.ys.size() != medium.num_interfaces()) return false;
    return std::all_of(state.ys.begin(), state.ys.end(),
                       [h = medium.height()](int y) { return y >= 0 && y <= h; });
}

void check_state(const LayeredMedium& medium, const InterfaceState& state) {
    if (state.ys.size() != medium.num_interfaces()) {
        throw std::invalid_argument("state has " + std::to_string(state.ys.size()) +
                                    " coordinates but the medium has " +
                                    std::to_string(medium.num_interfaces()) + " interfaces");
    }
    for (int y : state.ys) {
        if (y < 0 || y > medium.height()) {
            throw std::invalid_argument("state coordinate " + std::to_string(y) + " outside [0, " +
                                        std::to_string(medium.height()) + "]");
        }
    }
}

std::vector<double> segment_lengths(const LayeredMedium& medium, std::span<const double> ys) {
    if (ys.size() != medium.num_interfaces()) {
        throw std::invalid_argument("state has " + std::to_string(ys.size()) +
                                    " coordinates but the medium has " +
                                    std::to_string(medium.num_interfaces()) + " interfaces");
    }
    const double w = medium.slab_width();
    std::vector<double> lengths;
    lengths.reserve(medium.num_slabs());
    double previous = medium.start().y;
    for (std::size_t i = 0; i < medium.num_slabs(); ++i) {
        const double next = i < ys.size() ? ys[i] : medium.end().y;
        lengths.push_back(std::hypot(w, next - previous));
        previous = next;
    }
    return lengths;
}

std::vector<double> segment_lengths(const LayeredMedium& medium, const InterfaceState& state) {
    check_state(medium, state);
    const std::vector<double> ys(state.ys.begin(), state.ys.end());
    return segment_lengths(medium, ys);
}

double path_time(const LayeredMedium& medium, std::span<const double> ys) {
    const auto lengths = segment_lengths(medium, ys);
    double total = 0.0;
    for (std::size_t i = 0; i < lengths.size(); ++i) total += lengths[i] * medium.indices()[i];
    return total;
}

double path_time(const LayeredMedium& medium, const InterfaceState& state) {
    check_state(medium, state);
    const std::vector<double> ys(state.ys.begin(), state.ys.end());
    return path_time(medium, ys);
}

InterfaceState apply_action(const LayeredMedium& medium, const InterfaceState& state, MoveAction action) {
    if (action.interface_index >= state.ys.size()) {
        throw std::invalid_argument("action interface index out of range");
    }
    InterfaceState next = state;
    int& y = next.ys[action.interface_index];
    y = std::clamp(y + static_cast<int>(action.direction), 0, medium.height());
    return next;
}

ScoreScale ScoreScale::factor(double factor) {
    if (!(factor > 0.0) || !std::isfinite(factor)) {
        throw std::invalid_argument("reward_scale_mode: explicit scale must be finite and positive");
    }
    return ScoreScale(std::log(factor));
}

ScoreScale ScoreScale::normalized_to(double reference_time) noexcept { return ScoreScale(reference_time); }

double r_score(double time, ScoreScale scale) noexcept { return std::exp(scale.log_factor() - time); }

double r_score(double time, double scale) { return r_score(time, ScoreScale::factor(scale)); }

}  // namespace leastaction

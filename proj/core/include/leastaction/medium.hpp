#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace leastaction {

/// A point in grid units. x runs left to right across the slabs, y runs along the interfaces.
struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

/// Stack of vertical slabs of equal width, each with its own refractive index.
///
/// Slab i spans x in [i*W, (i+1)*W]. The path starts at `start` on the left
/// boundary (x = 0) and ends at `end` on the right boundary (x = M*W). Light
/// speed is 1, so the time spent crossing a segment of length l in slab i is
/// l * n_i.
class LayeredMedium {
public:
    /// Throws std::invalid_argument if the geometry is inconsistent.
    LayeredMedium(std::vector<double> indices, int slab_width, int height, Point start, Point end);

    const std::vector<double>& indices() const noexcept { return indices_; }
    int slab_width() const noexcept { return slab_width_; }
    int height() const noexcept { return height_; }
    const Point& start() const noexcept { return start_; }
    const Point& end() const noexcept { return end_; }

    std::size_t num_slabs() const noexcept { return indices_.size(); }
    std::size_t num_interfaces() const noexcept { return indices_.size() - 1; }
    std::size_t num_actions() const noexcept { return 2 * num_interfaces(); }

    /// The same medium reflected through y -> H - y.
    LayeredMedium mirrored() const;

    friend bool operator==(const LayeredMedium&, const LayeredMedium&) = default;

private:
    std::vector<double> indices_;
    int slab_width_;
    int height_;
    Point start_;
    Point end_;
};

/// Integer crossing heights of the path, one per interface (the RL state).
struct InterfaceState {
    std::vector<int> ys;

    friend auto operator<=>(const InterfaceState&, const InterfaceState&) = default;
    friend bool operator==(const InterfaceState&, const InterfaceState&) = default;
};

enum class Direction : int { Up = +1, Down = -1 };

/// Move one interface crossing by one grid unit.
struct MoveAction {
    std::size_t interface_index = 0;
    Direction direction = Direction::Up;

    /// Actions are numbered y1-up, y1-down, y2-up, y2-down, ...
    static MoveAction from_index(std::size_t index) noexcept;
    std::size_t index() const noexcept;

    friend bool operator==(const MoveAction&, const MoveAction&) = default;
};

bool is_valid(const LayeredMedium& medium, const InterfaceState& state) noexcept;

/// Throws std::invalid_argument naming the problem if `state` does not fit `medium`.
void check_state(const LayeredMedium& medium, const InterfaceState& state);

/// Euclidean length of the straight segment inside each slab.
std::vector<double> segment_lengths(const LayeredMedium& medium, const InterfaceState& state);
std::vector<double> segment_lengths(const LayeredMedium& medium, std::span<const double> ys);

/// Total travel time T = sum_i l_i * n_i.
double path_time(const LayeredMedium& medium, const InterfaceState& state);
double path_time(const LayeredMedium& medium, std::span<const double> ys);

/// Applies `action`, clamping the moved coordinate to [0, H].
InterfaceState apply_action(const LayeredMedium& medium, const InterfaceState& state, MoveAction action);

/// Scale factor N of the R-score, stored as log N so that N = e^{T_ref} never overflows.
class ScoreScale {
public:
    /// N given directly. Throws std::invalid_argument unless factor > 0.
    static ScoreScale factor(double factor);
    /// N = e^{reference_time}, so a path of that time scores exactly 1.
    static ScoreScale normalized_to(double reference_time) noexcept;

    double log_factor() const noexcept { return log_factor_; }

private:
    explicit ScoreScale(double log_factor) noexcept : log_factor_(log_factor) {}
    double log_factor_;
};

/// R_s = N e^{-T}.
double r_score(double time, ScoreScale scale) noexcept;
double r_score(double time, double scale);

/// R = R_s(current) - R_s(best).
inline double reward(double r_current, double r_best) noexcept { return r_current - r_best; }

}  // namespace leastaction

template <>
struct std::hash<leastaction::InterfaceState> {
    std::size_t operator()(const leastaction::InterfaceState& s) const noexcept {
        std::size_t h = s.ys.size();
        for (int y : s.ys) {
            h ^= std::hash<int>{}(y) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

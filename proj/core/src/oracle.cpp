#include "leastaction/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace leastaction {

std::uint64_t state_space_size(const LayeredMedium& medium) noexcept {
    const auto side = static_cast<std::uint64_t>(medium.height()) + 1;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < medium.num_interfaces(); ++i) {
        if (total > std::numeric_limits<std::uint64_t>::max() / side) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        total *= side;
    }
    return total;
}

DiscreteOptimum brute_force_optimum(const LayeredMedium& medium, std::uint64_t max_states) {
    const std::uint64_t count = state_space_size(medium);
    if (count > max_states) {
        throw StateSpaceTooLarge("state space of " +
                                 (count == std::numeric_limits<std::uint64_t>::max()
                                      ? std::string("more than 2^64")
                                      : std::to_string(count)) +
                                 " states exceeds the enumeration cap of " + std::to_string(max_states));
    }

    const std::size_t dims = medium.num_interfaces();
    std::vector<double> ys(dims, 0.0);
    std::vector<int> odometer(dims, 0);

    DiscreteOptimum best{InterfaceState{odometer}, path_time(medium, ys)};
    // Odometer with the last coordinate fastest visits states in lexicographic order.
    for (;;) {
        std::size_t k = dims;
        while (k > 0 && odometer[k - 1] == medium.height()) {
            odometer[k - 1] = 0;
            ys[k - 1] = 0.0;
            --k;
        }
        if (k == 0) break;
        ++odometer[k - 1];
        ys[k - 1] = odometer[k - 1];

        const double time = path_time(medium, ys);
        if (time < best.time) {
            best.time = time;
            best.state.ys = odometer;
        }
    }
    return best;
}

double snell_residual(const LayeredMedium& medium, std::span<const double> ys) {
    const auto lengths = segment_lengths(medium, ys);
    const auto& n = medium.indices();
    double previous_y = medium.start().y;
    std::vector<double> invariants(lengths.size());
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        const double next_y = i < ys.size() ? ys[i] : medium.end().y;
        invariants[i] = n[i] * (next_y - previous_y) / lengths[i];
        previous_y = next_y;
    }
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < invariants.size(); ++i) {
        worst = std::max(worst, std::abs(invariants[i] - invariants[i + 1]));
    }
    return worst;
}

double snell_residual(const LayeredMedium& medium, const InterfaceState& state) {
    check_state(medium, state);
    const std::vector<double> ys(state.ys.begin(), state.ys.end());
    return snell_residual(medium, ys);
}

namespace {

// Change in n * hypot(w, d0) when the vertical offset grows by `step`, written
// as a product so it stays accurate for steps much smaller than d0.
double segment_time_delta(double n, double w, double d0, double step) {
    const double l0 = std::hypot(w, d0);
    const double l = std::hypot(w, d0 + step);
    return n * step * (2.0 * d0 + step) / (l + l0);
}

// T(ys with ys[k] = y) - T(ys). Only the two segments touching interface k change.
double coordinate_delta(const LayeredMedium& medium, std::span<const double> ys, std::size_t k, double y) {
    const double w = medium.slab_width();
    const double below = k == 0 ? medium.start().y : ys[k - 1];
    const double above = k + 1 < ys.size() ? ys[k + 1] : medium.end().y;
    const double step = y - ys[k];
    const auto& n = medium.indices();
    return segment_time_delta(n[k], w, ys[k] - below, step) + segment_time_delta(n[k + 1], w, above - ys[k], -step);
}

// Golden-section search for the minimizer of a unimodal f on [lo, hi].
template <class F>
double golden_section(F&& f, double lo, double hi) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(a) + std::abs(b))) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        if (!(c < d)) break;
    }
    const double mid = 0.5 * (a + b);
    // The endpoints can win when the minimum sits on the boundary.
    double best = mid;
    double fbest = f(mid);
    for (double x : {lo, hi}) {
        if (const double fx = f(x); fx < fbest) {
            best = x;
            fbest = fx;
        }
    }
    return best;
}

}  // namespace

ContinuousOptimum fermat_continuous(const LayeredMedium& medium, double tol, int max_sweeps) {
    if (!(tol > 0.0)) throw std::invalid_argument("fermat_continuous: tol must be positive");

    const std::size_t dims = medium.num_interfaces();
    const double h = medium.height();
    const double y_a = medium.start().y;
    const double y_b = medium.end().y;

    std::vector<double> ys(dims);
    for (std::size_t k = 0; k < dims; ++k) {
        const double t = static_cast<double>(k + 1) / static_cast<double>(medium.num_slabs());
        ys[k] = std::clamp(y_a + t * (y_b - y_a), 0.0, h);
    }

    ContinuousOptimum result;
    for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
        double improvement = 0.0;
        double largest_step = 0.0;
        for (std::size_t k = 0; k < dims; ++k) {
            auto delta = [&](double y) { return coordinate_delta(medium, ys, k, y); };
            const double y = golden_section(delta, 0.0, h);
            const double gain = -delta(y);
            if (gain > 0.0) {
                improvement += gain;
                largest_step = std::max(largest_step, std::abs(y - ys[k]));
                ys[k] = y;
            }
        }
        result.sweeps = sweep;
        if (improvement < tol && largest_step < tol) {
            result.ys = ys;
            result.time = path_time(medium, ys);
            result.snell_residual = snell_residual(medium, ys);
            return result;
        }
    }
    result.ys = ys;
    result.time = path_time(medium, ys);
    result.snell_residual = snell_residual(medium, ys);
    throw ConvergenceError("fermat_continuous did not converge within " + std::to_string(max_sweeps) + " sweeps",
                           std::move(result));
}

}  // namespace leastaction

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "leastaction/medium.hpp"

namespace leastaction {

/// Exact minimum of path_time over the integer grid.
struct DiscreteOptimum {
    InterfaceState state;
    double time = 0.0;
};

/// Minimum of path_time over real-valued crossing heights.
struct ContinuousOptimum {
    std::vector<double> ys;
    double time = 0.0;
    double snell_residual = 0.0;
    int sweeps = 0;
};

inline constexpr std::uint64_t kDefaultMaxStates = 100'000'000;

/// Raised when (H+1)^(M-1) exceeds the enumeration cap.
class StateSpaceTooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when coordinate descent hits its sweep cap. Carries the best iterate.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, ContinuousOptimum best)
        : std::runtime_error(what), best_(std::move(best)) {}
    const ContinuousOptimum& best_iterate() const noexcept { return best_; }

private:
    ContinuousOptimum best_;
};

/// Number of integer interface states, saturating at UINT64_MAX.
std::uint64_t state_space_size(const LayeredMedium& medium) noexcept;

/// Scans every integer state. Ties go to the lexicographically smallest state.
DiscreteOptimum brute_force_optimum(const LayeredMedium& medium, std::uint64_t max_states = kDefaultMaxStates);

/// max over adjacent slabs of |n_i sin(theta_i) - n_{i+1} sin(theta_{i+1})|,
/// with sin(theta_i) = dy_i / l_i. Zero exactly where Snell's law holds at
/// every interface.
double snell_residual(const LayeredMedium& medium, std::span<const double> ys);
double snell_residual(const LayeredMedium& medium, const InterfaceState& state);

inline constexpr double kDefaultContinuousTol = 1e-10;
inline constexpr int kMaxSweeps = 10'000;

/// Minimizes path_time over [0, H]^(M-1) by cyclic coordinate descent with a
/// golden-section line search per coordinate, starting from the straight line
/// A-B. Stops once a full sweep improves T by less than `tol` and moves no
/// coordinate by more than `tol`.
ContinuousOptimum fermat_continuous(const LayeredMedium& medium, double tol = kDefaultContinuousTol,
                                    int max_sweeps = kMaxSweeps);

}  // namespace leastaction

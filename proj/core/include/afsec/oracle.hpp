#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "afsec/network.hpp"
#include "afsec/rate.hpp"

namespace afsec {

/// Thrown when a requested search would exceed the evaluation budget or
/// the asymmetric axis cap.
struct OracleBudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Deterministic grid-search configuration. Axes live in fraction-of-cap
/// space: a fraction f on layer l maps to beta = f * beta_{l,max} given
/// the upstream choices, so every grid point is power-feasible and the
/// constraint boundary sits exactly at f = 1.
struct GridSpec {
    int steps_per_axis = 32;                     ///< >= 8
    int refine_rounds = 2;                       ///< zoom-ins around the incumbent
    bool symmetric_only = true;                  ///< L axes instead of L*m
    std::uint64_t max_evaluations = 100'000'000; ///< total point budget
    int max_asymmetric_axes = 9;                 ///< per-node search cap
};

struct GridSearchResult {
    ScalingAssignment best;         ///< incumbent assignment on the m-relay subnet
    RateResult rate;                ///< rate at the incumbent
    std::vector<double> final_step; ///< last-round step per axis, in beta units
    double eps_grid = 0.0;          ///< measured one-step rate change at the incumbent
    std::uint64_t evaluations = 0;
};

/// Exhaustive refinement search for the maximizer of the clamped secrecy
/// rate over the m-relay subnetwork. Deterministic: ties break toward the
/// lexicographically smallest scaling vector. Throws OracleBudgetError
/// when the point budget or axis cap would be exceeded.
GridSearchResult grid_search(const EcgalNetwork& net, int m, const GridSpec& spec);

/// Finite-difference derivative, flagged when a box boundary forced a
/// one-sided difference.
struct Derivative {
    double value = 0.0;
    bool one_sided = false;
};

/// Central-difference derivative of the raw log-ratio with respect to the
/// symmetric beta of layer l (0-based), relative step rel_step.
Derivative finite_diff_gradient(const EcgalNetwork& net, int m,
                                const std::vector<double>& per_layer_beta, int l,
                                double rel_step = 1e-6);

/// Sign (-1, 0, +1) of the numerical second derivative of the raw
/// log-ratio along layer l's symmetric beta. Throws std::domain_error when
/// the point is too close to zero for a symmetric step.
int second_derivative_sign(const EcgalNetwork& net, int m,
                           const std::vector<double>& per_layer_beta, int l,
                           double rel_step = 1e-4);

/// f'(x) by central differences with absolute step h.
template <class F>
double central_difference(F&& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// f''(x) by the symmetric second difference with absolute step h.
template <class F>
double second_difference(F&& f, double x, double h) {
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

}  // namespace afsec

#include "afsec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace afsec {

namespace {

struct Search {
    const EcgalNetwork& sub;  // m-relay subnetwork
    int steps;
    bool per_node;
    int axes;
    const std::vector<double>& lo;
    const std::vector<double>& hi;

    double ht2, he2, sigma2, P;

    double best_ratio = 0.0;
    std::vector<double> best_frac;
    std::vector<double> frac;
    std::uint64_t evals = 0;

    Search(const EcgalNetwork& n, int steps_, bool per_node_, int axes_,
           const std::vector<double>& lo_, const std::vector<double>& hi_)
        : sub(n), steps(steps_), per_node(per_node_), axes(axes_), lo(lo_), hi(hi_),
          ht2(n.h_t * n.h_t), he2(n.h_e * n.h_e), sigma2(n.sigma2), P(n.P),
          frac(static_cast<std::size_t>(axes_), 0.0) {}

    double grid_value(int axis, int j) const {
        const double l = lo[static_cast<std::size_t>(axis)];
        const double h = hi[static_cast<std::size_t>(axis)];
        return l + static_cast<double>(j) * (h - l) / static_cast<double>(steps - 1);
    }

    // Clamped objective: (1+SNR_t)/(1+SNR_e) floored at 1, from the prefix
    // coherent/incoherent powers and the last layer's sums.
    void consider(double S, double Q, double sig, double up) {
        ++evals;
        const double s2 = S * S;
        const double at = s2 * ht2;
        const double ae = s2 * he2;
        const double den_t = up * at + sigma2 * (Q * ht2 + 1.0);
        const double den_e = up * ae + sigma2 * (Q * he2 + 1.0);
        const double ratio = ((den_t + sig * at) * den_e) / (den_t * (den_e + sig * ae));
        const double rc = ratio > 1.0 ? ratio : 1.0;
        if (rc > best_ratio || (rc == best_ratio && std::lexicographical_compare(
                                                        frac.begin(), frac.end(),
                                                        best_frac.begin(), best_frac.end()))) {
            best_ratio = rc;
            best_frac = frac;
        }
    }

    void last_layer(int axis, int node, double cap, double S, double Q, double sig,
                    double up) {
        if (!per_node || node == sub.N - 1) {
            for (int j = 0; j < steps; ++j) {
                const double f = grid_value(axis, j);
                const double b = f * cap;
                frac[static_cast<std::size_t>(axis)] = f;
                if (per_node)
                    consider(S + b, Q + b * b, sig, up);
                else
                    consider(sub.N * b, sub.N * b * b, sig, up);
            }
            return;
        }
        for (int j = 0; j < steps; ++j) {
            const double f = grid_value(axis, j);
            const double b = f * cap;
            frac[static_cast<std::size_t>(axis)] = f;
            last_layer(axis + 1, node + 1, cap, S + b, Q + b * b, sig, up);
        }
    }

    void interior(int axis, int layer, int node, double cap, double S, double Q,
                  double sig, double up) {
        const double g = sub.h_mid[static_cast<std::size_t>(layer)];
        const double g2 = g * g;
        for (int j = 0; j < steps; ++j) {
            const double f = grid_value(axis, j);
            const double b = f * cap;
            frac[static_cast<std::size_t>(axis)] = f;
            double Sn = S + b, Qn = Q + b * b;
            if (!per_node) {
                Sn = sub.N * b;
                Qn = sub.N * b * b;
            }
            if (per_node && node + 1 < sub.N) {
                interior(axis + 1, layer, node + 1, cap, Sn, Qn, sig, up);
            } else {
                const double sig_next = sig * Sn * Sn * g2;
                const double up_next = up * Sn * Sn * g2 + sigma2 * Qn * g2;
                enter_layer(axis + 1, layer + 1, sig_next, up_next);
            }
        }
    }

    void enter_layer(int axis, int layer, double sig, double up) {
        const double cap = std::sqrt(P / (sig + up + sigma2));
        if (layer == sub.L - 1)
            last_layer(axis, 0, cap, 0.0, 0.0, sig, up);
        else
            interior(axis, layer, 0, cap, 0.0, 0.0, sig, up);
    }

    void run() { enter_layer(0, 0, sub.P_s * sub.h_s * sub.h_s, 0.0); }
};

// Maps a fraction vector back to a per-node assignment, re-deriving the
// dynamic caps layer by layer.
ScalingAssignment assignment_from_fractions(const EcgalNetwork& sub, bool per_node,
                                            const std::vector<double>& frac,
                                            std::vector<double>* caps_out = nullptr) {
    ScalingAssignment asg(sub.L, sub.N);
    double sig = sub.P_s * sub.h_s * sub.h_s;
    double up = 0.0;
    int axis = 0;
    for (int l = 0; l < sub.L; ++l) {
        const double cap = std::sqrt(sub.P / (sig + up + sub.sigma2));
        if (caps_out) caps_out->push_back(cap);
        double S = 0.0, Q = 0.0;
        for (int i = 0; i < sub.N; ++i) {
            const double f = frac[static_cast<std::size_t>(per_node ? axis + i : axis)];
            const double b = f * cap;
            asg.at(l, i) = b;
            S += b;
            Q += b * b;
        }
        axis += per_node ? sub.N : 1;
        if (l + 1 < sub.L) {
            const double g = sub.h_mid[static_cast<std::size_t>(l)];
            sig = sig * S * S * g * g;
            up = up * S * S * g * g + sub.sigma2 * Q * g * g;
        }
    }
    return asg;
}

double rate_at_fractions(const EcgalNetwork& sub, bool per_node,
                         const std::vector<double>& frac) {
    return evaluate(sub, assignment_from_fractions(sub, per_node, frac)).rate_bits;
}

}  // namespace

GridSearchResult grid_search(const EcgalNetwork& net, int m, const GridSpec& spec) {
    if (m < 1 || m > net.N)
        throw std::invalid_argument("relay count m must satisfy 1 <= m <= N");
    if (spec.steps_per_axis < 8)
        throw std::invalid_argument("grid needs at least 8 steps per axis");
    if (spec.refine_rounds < 0) throw std::invalid_argument("refine_rounds must be >= 0");

    const EcgalNetwork sub = net.with_relays(m);
    const int axes = spec.symmetric_only ? sub.L : sub.L * sub.N;
    if (!spec.symmetric_only && axes > spec.max_asymmetric_axes)
        throw OracleBudgetError("asymmetric search over " + std::to_string(axes) +
                                " axes exceeds the cap of " +
                                std::to_string(spec.max_asymmetric_axes));

    std::uint64_t per_round = 1;
    for (int a = 0; a < axes; ++a) {
        if (per_round > spec.max_evaluations / static_cast<std::uint64_t>(spec.steps_per_axis))
            throw OracleBudgetError("grid of " + std::to_string(spec.steps_per_axis) + "^" +
                                    std::to_string(axes) + " points exceeds the budget");
        per_round *= static_cast<std::uint64_t>(spec.steps_per_axis);
    }
    const std::uint64_t total = per_round * (static_cast<std::uint64_t>(spec.refine_rounds) + 1);
    if (per_round != 0 && total / per_round != static_cast<std::uint64_t>(spec.refine_rounds) + 1)
        throw OracleBudgetError("grid point count overflows the budget accounting");
    if (total > spec.max_evaluations)
        throw OracleBudgetError(std::to_string(total) + " grid points exceed the budget of " +
                                std::to_string(spec.max_evaluations));

    std::vector<double> lo(static_cast<std::size_t>(axes), 0.0);
    std::vector<double> hi(static_cast<std::size_t>(axes), 1.0);

    double best_ratio = 0.0;
    std::vector<double> best_frac;
    std::uint64_t evals = 0;

    for (int round = 0; round <= spec.refine_rounds; ++round) {
        Search s(sub, spec.steps_per_axis, !spec.symmetric_only, axes, lo, hi);
        // Carry the incumbent so refinement can never regress, even when
        // the shrunken grid misses the old point.
        s.best_ratio = best_ratio;
        s.best_frac = best_frac;
        s.run();
        best_ratio = s.best_ratio;
        best_frac = s.best_frac;
        evals += s.evals;
        if (round < spec.refine_rounds) {
            for (int a = 0; a < axes; ++a) {
                const auto ai = static_cast<std::size_t>(a);
                const double w = (hi[ai] - lo[ai]) / static_cast<double>(spec.steps_per_axis - 1);
                const double c = best_frac[ai];
                lo[ai] = std::max(0.0, c - w);
                hi[ai] = std::min(1.0, c + w);
            }
        }
    }

    GridSearchResult out{ScalingAssignment(sub.L, sub.N), RateResult{}, {}, 0.0, evals};
    std::vector<double> caps;
    out.best = assignment_from_fractions(sub, !spec.symmetric_only, best_frac, &caps);
    out.rate = evaluate(sub, out.best);

    out.final_step.resize(static_cast<std::size_t>(axes));
    const double r0 = out.rate.rate_bits;
    for (int a = 0; a < axes; ++a) {
        const auto ai = static_cast<std::size_t>(a);
        const double step_frac =
            (hi[ai] - lo[ai]) / static_cast<double>(spec.steps_per_axis - 1);
        const int layer = spec.symmetric_only ? a : a / sub.N;
        out.final_step[ai] = step_frac * caps[static_cast<std::size_t>(layer)];
        for (double dir : {-1.0, 1.0}) {
            std::vector<double> f = best_frac;
            f[ai] = std::clamp(f[ai] + dir * step_frac, 0.0, 1.0);
            const double r = rate_at_fractions(sub, !spec.symmetric_only, f);
            out.eps_grid = std::max(out.eps_grid, std::abs(r0 - r));
        }
    }
    return out;
}

namespace {

double raw_rate_with_layer_beta(const EcgalNetwork& sub, std::vector<double> betas, int l,
                                double b) {
    betas[static_cast<std::size_t>(l)] = b;
    return secrecy_rate_raw_symmetric(sub, betas);
}

}  // namespace

Derivative finite_diff_gradient(const EcgalNetwork& net, int m,
                                const std::vector<double>& per_layer_beta, int l,
                                double rel_step) {
    if (l < 0 || l >= net.L) throw std::invalid_argument("layer index out of range");
    const EcgalNetwork sub = net.with_relays(m);
    const double x = per_layer_beta[static_cast<std::size_t>(l)];
    const double cap = std::sqrt(net.P / receive_power(sub, per_layer_beta, l));
    const double h = rel_step * (x > 0.0 ? x : cap);
    const auto f = [&](double b) { return raw_rate_with_layer_beta(sub, per_layer_beta, l, b); };

    Derivative d;
    if (x - h < 0.0) {
        d.value = (f(x + h) - f(x)) / h;
        d.one_sided = true;
    } else if (x + h > cap) {
        d.value = (f(x) - f(x - h)) / h;
        d.one_sided = true;
    } else {
        d.value = central_difference(f, x, h);
    }
    return d;
}

int second_derivative_sign(const EcgalNetwork& net, int m,
                           const std::vector<double>& per_layer_beta, int l,
                           double rel_step) {
    if (l < 0 || l >= net.L) throw std::invalid_argument("layer index out of range");
    const EcgalNetwork sub = net.with_relays(m);
    const double x = per_layer_beta[static_cast<std::size_t>(l)];
    const double h = rel_step * x;
    if (!(h > 0.0) || x - h <= 0.0)
        throw std::domain_error("second-derivative step underflows near beta = 0");
    const auto f = [&](double b) { return raw_rate_with_layer_beta(sub, per_layer_beta, l, b); };
    const double fp = f(x + h), f0 = f(x), fm = f(x - h);
    const double d2 = fp - 2.0 * f0 + fm;
    const double scale = std::max({1.0, std::abs(fp), std::abs(f0), std::abs(fm)});
    const double tol = 64.0 * std::numeric_limits<double>::epsilon() * scale;
    if (d2 > tol) return 1;
    if (d2 < -tol) return -1;
    return 0;
}

}  // namespace afsec

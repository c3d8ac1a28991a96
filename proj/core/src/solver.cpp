#include "afsec/solver.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace afsec {

std::string_view to_string(LastLayerCase c) {
    switch (c) {
        case LastLayerCase::Max: return "MAX";
        case LastLayerCase::Glb: return "GLB";
        case LastLayerCase::Zero: return "ZERO";
    }
    return "?";
}

namespace {

void require_m(const EcgalNetwork& net, int m) {
    if (m < 1 || m > net.N)
        throw std::invalid_argument("relay count m must satisfy 1 <= m <= N, got " +
                                    std::to_string(m));
}

}  // namespace

std::vector<double> layered_beta_max(const EcgalNetwork& net, int m) {
    require_m(net, m);
    const EcgalNetwork sub = net.with_relays(m);
    std::vector<double> caps;
    caps.reserve(static_cast<std::size_t>(net.L));
    for (int l = 0; l < net.L; ++l) {
        const double p_rx = receive_power(sub, caps, l);
        caps.push_back(std::sqrt(net.P / p_rx));
    }
    return caps;
}

double layered_beta_L_glb(const EcgalNetwork& net, int m) {
    require_m(net, m);
    const EcgalNetwork sub = net.with_relays(m);
    double A = net.h_s * net.h_s;
    double B = 0.0;
    if (net.L >= 2) {
        const std::vector<double> caps = layered_beta_max(net, m);
        const LayerGainProducts pr = layer_products(sub, caps, 0, net.L - 2);
        A *= pr.H2;
        for (double g2 : pr.G2) B += g2;
    }
    const double mm = static_cast<double>(m);
    const double t = (net.P_s / net.sigma2) * (mm * A) / (1.0 + mm * B);
    // Outer factors assembled in log space so extreme P_s/sigma2 cannot
    // overflow the intermediate products.
    const double log_b2 =
        -(std::log(mm * net.h_t * net.h_e) + std::log1p(mm * B) + 0.5 * std::log1p(t));
    return std::exp(0.5 * log_b2);
}

ScalingSolution solve(const EcgalNetwork& net, int m) {
    require_m(net, m);
    ScalingSolution sol;
    sol.m = m;
    sol.beta_per_layer = layered_beta_max(net, m);
    sol.beta_L_max = sol.beta_per_layer.back();
    sol.beta_L_glb = layered_beta_L_glb(net, m);
    if (net.h_t > net.h_e) {
        if (sol.beta_L_glb < sol.beta_L_max) {
            sol.beta_per_layer.back() = sol.beta_L_glb;
            sol.last_layer_case = LastLayerCase::Glb;
        } else {
            sol.last_layer_case = LastLayerCase::Max;
        }
    } else {
        sol.beta_per_layer.back() = 0.0;
        sol.last_layer_case = LastLayerCase::Zero;
    }
    return sol;
}

ScalingSolution diamond_beta_opt(const EcgalNetwork& net, int m) {
    if (net.L != 1)
        throw std::invalid_argument("diamond_beta_opt requires a single relay layer");
    return solve(net, m);
}

RateResult optimal_rate(const EcgalNetwork& net, int m) {
    const ScalingSolution sol = solve(net, m);
    return evaluate_symmetric(net.with_relays(m), sol.beta_per_layer);
}

}  // namespace afsec

#include "afsec/network.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace afsec {

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

}  // namespace

void EcgalNetwork::validate() const {
    if (L < 1) fail("L must be >= 1");
    if (N < 1) fail("N must be >= 1");
    if (h_mid.size() != static_cast<std::size_t>(L - 1))
        fail("h_mid must have exactly L-1 entries");
    if (!positive_finite(h_s)) fail("h_s must be finite and > 0");
    for (double g : h_mid)
        if (!positive_finite(g)) fail("h_mid entries must be finite and > 0");
    if (!positive_finite(h_t)) fail("h_t must be finite and > 0");
    if (!positive_finite(h_e)) fail("h_e must be finite and > 0");
    if (!positive_finite(P_s)) fail("P_s must be finite and > 0");
    if (!positive_finite(P)) fail("P must be finite and > 0");
    if (!positive_finite(sigma2)) fail("sigma2 must be finite and > 0");
}

EcgalNetwork EcgalNetwork::with_relays(int m) const {
    if (m < 1) fail("relay count must be >= 1");
    EcgalNetwork sub = *this;
    sub.N = m;
    return sub;
}

double EcgalNetwork::out_gain(int l, double last_hop) const {
    return l + 1 < L ? h_mid[static_cast<std::size_t>(l)] : last_hop;
}

ScalingAssignment::ScalingAssignment(int layers, int relays, double fill)
    : layers_(layers), relays_(relays),
      b_(static_cast<std::size_t>(layers) * static_cast<std::size_t>(relays), fill) {
    if (layers < 1 || relays < 1) fail("assignment needs at least one layer and relay");
}

ScalingAssignment ScalingAssignment::symmetric(int layers, int relays,
                                               const std::vector<double>& per_layer) {
    if (per_layer.size() != static_cast<std::size_t>(layers))
        fail("per-layer beta list must have one entry per layer");
    ScalingAssignment s(layers, relays);
    for (int l = 0; l < layers; ++l)
        for (int i = 0; i < relays; ++i) s.at(l, i) = per_layer[static_cast<std::size_t>(l)];
    return s;
}

double ScalingAssignment::layer_sum(int l) const {
    double acc = 0.0;
    for (int i = 0; i < relays_; ++i) acc += at(l, i);
    return acc;
}

double ScalingAssignment::layer_sum_sq(int l) const {
    double acc = 0.0;
    for (int i = 0; i < relays_; ++i) acc += at(l, i) * at(l, i);
    return acc;
}

namespace detail {

void require_shape(const EcgalNetwork& net, const ScalingAssignment& s) {
    if (s.layers() != net.L || s.relays() != net.N)
        fail("assignment shape " + std::to_string(s.layers()) + "x" +
             std::to_string(s.relays()) + " does not match network " +
             std::to_string(net.L) + "x" + std::to_string(net.N));
}

LayerSums layer_sums(const EcgalNetwork& net, const ScalingAssignment& s) {
    require_shape(net, s);
    LayerSums out;
    out.S.resize(static_cast<std::size_t>(net.L));
    out.Q.resize(static_cast<std::size_t>(net.L));
    for (int l = 0; l < net.L; ++l) {
        out.S[static_cast<std::size_t>(l)] = s.layer_sum(l);
        out.Q[static_cast<std::size_t>(l)] = s.layer_sum_sq(l);
    }
    return out;
}

}  // namespace detail

namespace {

double source_gain(const EcgalNetwork& net, const ScalingAssignment& s, double last_hop) {
    detail::require_shape(net, s);
    double acc = net.h_s;
    for (int l = 0; l < net.L; ++l) acc *= s.layer_sum(l) * net.out_gain(l, last_hop);
    return acc;
}

double source_gain_pathsum(const EcgalNetwork& net, const ScalingAssignment& s,
                           double last_hop, std::uint64_t max_paths) {
    detail::require_shape(net, s);
    std::uint64_t paths = 1;
    for (int l = 0; l < net.L; ++l) {
        paths *= static_cast<std::uint64_t>(net.N);
        if (paths > max_paths)
            throw std::length_error("path enumeration exceeds cap of " +
                                    std::to_string(max_paths) + " paths");
    }
    std::vector<int> idx(static_cast<std::size_t>(net.L), 0);
    double total = 0.0;
    for (std::uint64_t p = 0; p < paths; ++p) {
        double term = net.h_s;
        for (int l = 0; l < net.L; ++l)
            term *= s.at(l, idx[static_cast<std::size_t>(l)]) * net.out_gain(l, last_hop);
        total += term;
        for (int l = net.L - 1; l >= 0; --l) {  // odometer increment
            if (++idx[static_cast<std::size_t>(l)] < net.N) break;
            idx[static_cast<std::size_t>(l)] = 0;
        }
    }
    return total;
}

double relay_gain(const EcgalNetwork& net, const ScalingAssignment& s, int l, int j,
                  double last_hop) {
    detail::require_shape(net, s);
    if (l < 0 || l >= net.L || j < 0 || j >= net.N)
        fail("relay index out of range");
    double acc = s.at(l, j) * net.out_gain(l, last_hop);
    for (int m = l + 1; m < net.L; ++m) acc *= s.layer_sum(m) * net.out_gain(m, last_hop);
    return acc;
}

}  // namespace

double h_source_dest(const EcgalNetwork& net, const ScalingAssignment& s) {
    return source_gain(net, s, net.h_t);
}

double h_source_eve(const EcgalNetwork& net, const ScalingAssignment& s) {
    return source_gain(net, s, net.h_e);
}

double h_source_dest_pathsum(const EcgalNetwork& net, const ScalingAssignment& s,
                             std::uint64_t max_paths) {
    return source_gain_pathsum(net, s, net.h_t, max_paths);
}

double h_source_eve_pathsum(const EcgalNetwork& net, const ScalingAssignment& s,
                            std::uint64_t max_paths) {
    return source_gain_pathsum(net, s, net.h_e, max_paths);
}

double h_relay_dest(const EcgalNetwork& net, const ScalingAssignment& s, int l, int j) {
    return relay_gain(net, s, l, j, net.h_t);
}

double h_relay_eve(const EcgalNetwork& net, const ScalingAssignment& s, int l, int j) {
    return relay_gain(net, s, l, j, net.h_e);
}

LayerGainProducts layer_products(const EcgalNetwork& net,
                                 const std::vector<double>& per_layer_beta, int i, int j) {
    if (i < 0 || j > net.L - 2 || i > j) fail("invalid interior layer range");
    if (per_layer_beta.size() < static_cast<std::size_t>(j) + 1)
        fail("per-layer beta list too short for requested range");
    const double n = static_cast<double>(net.N);
    LayerGainProducts out;
    out.G2.assign(static_cast<std::size_t>(j - i + 1), 0.0);
    double H2 = 1.0;
    for (int k = j; k >= i; --k) {
        const double beta = per_layer_beta[static_cast<std::size_t>(k)];
        const double g2 = net.h_mid[static_cast<std::size_t>(k)] *
                          net.h_mid[static_cast<std::size_t>(k)];
        // G2[k] carries layer k's own (incoherent) noise through the
        // coherent tail k+1..j, which is exactly the H2 accumulated so far.
        out.G2[static_cast<std::size_t>(k - i)] = n * beta * beta * g2 * H2;
        H2 *= n * beta * n * beta * g2;
    }
    out.H2 = H2;
    return out;
}

double receive_power(const EcgalNetwork& net, const std::vector<double>& per_layer_beta,
                     int l) {
    if (l < 0 || l >= net.L) fail("layer index out of range");
    if (l == 0) return net.P_s * net.h_s * net.h_s + net.sigma2;
    LayerGainProducts pr = layer_products(net, per_layer_beta, 0, l - 1);
    double noise = 1.0;
    for (double g2 : pr.G2) noise += g2;
    return net.P_s * net.h_s * net.h_s * pr.H2 + noise * net.sigma2;
}

bool check_feasible(const EcgalNetwork& net, const ScalingAssignment& s, double rel_tol) {
    detail::require_shape(net, s);
    // Walk layers propagating the coherent (signal + shared upstream noise)
    // and incoherent (per-relay own noise) power components; the cap at
    // layer l depends on upstream layers only.
    double sig = net.P_s * net.h_s * net.h_s;
    double up = 0.0;
    for (int l = 0; l < net.L; ++l) {
        const double p_rx = sig + up + net.sigma2;
        const double cap2 = net.P / p_rx;
        for (int i = 0; i < net.N; ++i) {
            const double b = s.at(l, i);
            if (b < 0.0) return false;
            if (b * b > cap2 * (1.0 + rel_tol)) return false;
        }
        if (l + 1 < net.L) {
            const double g = net.h_mid[static_cast<std::size_t>(l)];
            const double g2 = g * g;
            const double S = s.layer_sum(l);
            const double Q = s.layer_sum_sq(l);
            up = up * S * S * g2 + net.sigma2 * Q * g2;
            sig = sig * S * S * g2;
        }
    }
    return true;
}

}  // namespace afsec

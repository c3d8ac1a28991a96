#include "afsec/rate.hpp"

#include <cmath>
#include <stdexcept>

namespace afsec {

namespace detail {

double snr_from_sums(const EcgalNetwork& net, const std::vector<double>& S,
                     const std::vector<double>& Q, double last_hop) {
    const int L = net.L;
    // tail(l) = out_gain(l) * prod_{m>l} S_m * out_gain(m); the modified
    // relay->receiver gain of layer l is beta * tail(l), so the layer's
    // noise contribution is Q_l * tail(l)^2.
    double tail = last_hop;
    double noise = Q[static_cast<std::size_t>(L - 1)] * tail * tail;
    for (int l = L - 2; l >= 0; --l) {
        tail = net.h_mid[static_cast<std::size_t>(l)] * S[static_cast<std::size_t>(l + 1)] * tail;
        noise += Q[static_cast<std::size_t>(l)] * tail * tail;
    }
    const double h = net.h_s * S[0] * tail;
    return (net.P_s / net.sigma2) * h * h / (1.0 + noise);
}

}  // namespace detail

double snr_destination(const EcgalNetwork& net, const ScalingAssignment& s) {
    const auto sums = detail::layer_sums(net, s);
    return detail::snr_from_sums(net, sums.S, sums.Q, net.h_t);
}

double snr_eavesdropper(const EcgalNetwork& net, const ScalingAssignment& s) {
    const auto sums = detail::layer_sums(net, s);
    return detail::snr_from_sums(net, sums.S, sums.Q, net.h_e);
}

namespace {

void require_snr(double v, const char* name) {
    if (std::isnan(v) || v < 0.0)
        throw std::invalid_argument(std::string(name) + " must be a nonnegative number");
}

}  // namespace

double secrecy_rate_raw(double snr_t, double snr_e) {
    require_snr(snr_t, "snr_t");
    require_snr(snr_e, "snr_e");
    return 0.5 * std::log2((1.0 + snr_t) / (1.0 + snr_e));
}

double secrecy_rate(double snr_t, double snr_e) {
    const double raw = secrecy_rate_raw(snr_t, snr_e);
    return raw > 0.0 ? raw : 0.0;
}

RateResult evaluate(const EcgalNetwork& net, const ScalingAssignment& s) {
    const auto sums = detail::layer_sums(net, s);
    RateResult out;
    out.snr_t = detail::snr_from_sums(net, sums.S, sums.Q, net.h_t);
    out.snr_e = detail::snr_from_sums(net, sums.S, sums.Q, net.h_e);
    out.rate_bits = secrecy_rate(out.snr_t, out.snr_e);
    return out;
}

namespace {

void symmetric_sums(const EcgalNetwork& net, const std::vector<double>& per_layer_beta,
                    std::vector<double>& S, std::vector<double>& Q) {
    if (per_layer_beta.size() != static_cast<std::size_t>(net.L))
        throw std::invalid_argument("per-layer beta list must have one entry per layer");
    const double n = static_cast<double>(net.N);
    S.resize(per_layer_beta.size());
    Q.resize(per_layer_beta.size());
    for (std::size_t l = 0; l < per_layer_beta.size(); ++l) {
        S[l] = n * per_layer_beta[l];
        Q[l] = n * per_layer_beta[l] * per_layer_beta[l];
    }
}

}  // namespace

RateResult evaluate_symmetric(const EcgalNetwork& net,
                              const std::vector<double>& per_layer_beta) {
    std::vector<double> S, Q;
    symmetric_sums(net, per_layer_beta, S, Q);
    RateResult out;
    out.snr_t = detail::snr_from_sums(net, S, Q, net.h_t);
    out.snr_e = detail::snr_from_sums(net, S, Q, net.h_e);
    out.rate_bits = secrecy_rate(out.snr_t, out.snr_e);
    return out;
}

double secrecy_rate_raw_symmetric(const EcgalNetwork& net,
                                  const std::vector<double>& per_layer_beta) {
    std::vector<double> S, Q;
    symmetric_sums(net, per_layer_beta, S, Q);
    return secrecy_rate_raw(detail::snr_from_sums(net, S, Q, net.h_t),
                            detail::snr_from_sums(net, S, Q, net.h_e));
}

}  // namespace afsec

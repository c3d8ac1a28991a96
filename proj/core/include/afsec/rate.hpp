#pragma once

#include <vector>

#include "afsec/network.hpp"

namespace afsec {

/// Destination/eavesdropper SNRs and the clamped secrecy rate of one
/// scaling assignment.
struct RateResult {
    double snr_t = 0.0;      ///< linear SNR at the destination
    double snr_e = 0.0;      ///< linear SNR at the eavesdropper
    double rate_bits = 0.0;  ///< [.]^+ secrecy rate, bits per channel use
};

/// SNR at the destination: (P_s/sigma2) * h_st^2 / (1 + sum h_{lj,t}^2).
double snr_destination(const EcgalNetwork& net, const ScalingAssignment& s);

/// SNR at the eavesdropper: the destination expression with the final hop
/// gain replaced by h_e (interior layers unchanged).
double snr_eavesdropper(const EcgalNetwork& net, const ScalingAssignment& s);

/// Clamped secrecy rate max(0, 0.5*log2((1+snr_t)/(1+snr_e))) in bits per
/// channel use. Rejects NaN or negative SNRs.
double secrecy_rate(double snr_t, double snr_e);

/// Unclamped log-ratio 0.5*log2((1+snr_t)/(1+snr_e)); negative when the
/// eavesdropper sees the better channel. Used by the stationarity checks.
double secrecy_rate_raw(double snr_t, double snr_e);

/// Bundles both SNRs and the clamped rate. Costs O(L*N).
RateResult evaluate(const EcgalNetwork& net, const ScalingAssignment& s);

/// Evaluate the symmetric assignment where all relays of layer l run at
/// per_layer_beta[l].
RateResult evaluate_symmetric(const EcgalNetwork& net,
                              const std::vector<double>& per_layer_beta);

/// Raw log-ratio of the symmetric assignment; convenience for derivative
/// probes along one layer's beta.
double secrecy_rate_raw_symmetric(const EcgalNetwork& net,
                                  const std::vector<double>& per_layer_beta);

namespace detail {

/// Eq.-style SNR from per-layer sums with a chosen final-hop gain.
double snr_from_sums(const EcgalNetwork& net, const std::vector<double>& S,
                     const std::vector<double>& Q, double last_hop);

}  // namespace detail

}  // namespace afsec

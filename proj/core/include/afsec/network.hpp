#pragma once

#include <cstdint>
#include <vector>

namespace afsec {

/// Symmetric Gaussian layered AF relay network with equal channel gains
/// between adjacent layers: a source feeds L relay layers of N nodes each
/// (full bipartite connectivity, one shared gain per hop), the last layer
/// feeds the destination, and an eavesdropper overhears the last layer.
struct EcgalNetwork {
    int L = 1;                  ///< relay layers, >= 1
    int N = 1;                  ///< relays per layer, >= 1
    double h_s = 1.0;           ///< source -> first-layer gain
    std::vector<double> h_mid;  ///< inter-layer gains, size L-1
    double h_t = 1.0;           ///< last layer -> destination gain
    double h_e = 1.0;           ///< last layer -> eavesdropper gain
    double P_s = 1.0;           ///< source transmit power
    double P = 1.0;             ///< per-relay transmit power cap
    double sigma2 = 1.0;        ///< noise variance at every node

    /// Throws std::invalid_argument on any violated invariant (sizes,
    /// positivity, finiteness).
    void validate() const;

    /// Same network with m relays per layer. Used for evaluating the
    /// k-relay subnetwork; by symmetry every size-m subset is equivalent.
    EcgalNetwork with_relays(int m) const;

    /// Outgoing gain of relay layer l (0-based): h_mid[l] for interior
    /// layers, `last_hop` (h_t or h_e) for the final layer.
    double out_gain(int l, double last_hop) const;
};

/// Per-node amplification factors; row = layer (0-based), column = relay.
class ScalingAssignment {
public:
    ScalingAssignment() : ScalingAssignment(1, 1) {}
    ScalingAssignment(int layers, int relays, double fill = 0.0);

    /// All relays of layer l share per_layer[l].
    static ScalingAssignment symmetric(int layers, int relays,
                                       const std::vector<double>& per_layer);

    int layers() const { return layers_; }
    int relays() const { return relays_; }

    double at(int l, int i) const { return b_[static_cast<std::size_t>(l) * relays_ + i]; }
    double& at(int l, int i) { return b_[static_cast<std::size_t>(l) * relays_ + i]; }

    double layer_sum(int l) const;
    double layer_sum_sq(int l) const;

    bool operator==(const ScalingAssignment&) const = default;

private:
    int layers_;
    int relays_;
    std::vector<double> b_;
};

/// Squared signal/noise gain products of a run of interior layers.
struct LayerGainProducts {
    double H2 = 1.0;         ///< forward (coherent) squared gain product
    std::vector<double> G2;  ///< per-layer noise-path squared products
};

/// Modified source->destination gain: the sum over all equal-delay paths,
/// which for full bipartite ECGAL connectivity factorizes as
/// h_s * prod_l (sum_i beta[l][i]) * g_l.
double h_source_dest(const EcgalNetwork& net, const ScalingAssignment& s);

/// Same with the final hop taken to the eavesdropper.
double h_source_eve(const EcgalNetwork& net, const ScalingAssignment& s);

/// Brute-force path enumeration of the source->destination gain. Test
/// oracle for the product form; cost N^L terms, capped by max_paths.
/// Throws std::length_error when the cap is exceeded.
double h_source_dest_pathsum(const EcgalNetwork& net, const ScalingAssignment& s,
                             std::uint64_t max_paths = 1'000'000);

/// Eavesdropper variant of the path enumeration.
double h_source_eve_pathsum(const EcgalNetwork& net, const ScalingAssignment& s,
                            std::uint64_t max_paths = 1'000'000);

/// Modified gain from relay j of layer l (0-based) to the destination:
/// beta[l][j] times the coherent tail through layers l+1..L-1.
double h_relay_dest(const EcgalNetwork& net, const ScalingAssignment& s, int l, int j);

/// Same with the final hop taken to the eavesdropper.
double h_relay_eve(const EcgalNetwork& net, const ScalingAssignment& s, int l, int j);

/// H2 and G2 products over interior layers i..j (0-based, i <= j <= L-2)
/// for a symmetric per-layer assignment:
///   H2    = prod_{k=i..j} (N beta_k)^2 h_k^2
///   G2[m] = N beta_m^2 h_m^2 * prod_{k=m+1..j} (N beta_k)^2 h_k^2
LayerGainProducts layer_products(const EcgalNetwork& net,
                                 const std::vector<double>& per_layer_beta, int i, int j);

/// Received signal+noise power at a relay of layer l (0-based) when the
/// upstream layers run at the given symmetric betas. Layer 0 receives
/// P_s h_s^2 + sigma2.
double receive_power(const EcgalNetwork& net, const std::vector<double>& per_layer_beta,
                     int l);

/// True when every beta respects the power cap induced by the upstream
/// assignment (beta^2 <= P / P_rx within rel_tol).
bool check_feasible(const EcgalNetwork& net, const ScalingAssignment& s,
                    double rel_tol = 1e-9);

namespace detail {

/// Per-layer coherent sums S_l = sum_i beta[l][i] and power sums
/// Q_l = sum_i beta[l][i]^2; everything downstream depends on betas only
/// through these.
struct LayerSums {
    std::vector<double> S;
    std::vector<double> Q;
};

LayerSums layer_sums(const EcgalNetwork& net, const ScalingAssignment& s);

/// Requires matching dimensions, throws std::invalid_argument otherwise.
void require_shape(const EcgalNetwork& net, const ScalingAssignment& s);

}  // namespace detail

}  // namespace afsec

#pragma once

#include <string_view>
#include <vector>

#include "afsec/network.hpp"
#include "afsec/rate.hpp"

namespace afsec {

/// Which branch the last relay layer lands on at the optimum.
enum class LastLayerCase {
    Max,   ///< power-constraint boundary binds (beta_max < beta_glb)
    Glb,   ///< interior stationary point (beta_glb <= beta_max)
    Zero,  ///< h_t <= h_e: no positive secrecy rate, all-off last layer
};

std::string_view to_string(LastLayerCase c);

/// Closed-form optimal symmetric scaling: layers 1..L-1 at their power
/// caps, layer L at min(beta_L_max, beta_L_glb) or 0.
struct ScalingSolution {
    int m = 1;                          ///< relays used per layer
    std::vector<double> beta_per_layer; ///< optimum beta, one per layer
    LastLayerCase last_layer_case = LastLayerCase::Zero;
    double beta_L_max = 0.0;            ///< last layer's power cap
    double beta_L_glb = 0.0;            ///< last layer's interior stationary point
};

/// Per-layer power caps beta_{l,max} = sqrt(P / P_rx,l), computed
/// recursively with upstream layers at their own caps and m relays per
/// layer. Returns one value per layer (the last entry is the cap the
/// optimum is clamped to).
std::vector<double> layered_beta_max(const EcgalNetwork& net, int m);

/// Interior stationary point of the last layer's secrecy rate when the
/// first L-1 layers run at their caps with m relays per layer:
///   beta_glb^2 = 1 / (m h_t h_e (1+mB) sqrt(1 + (P_s/sigma2) mA/(1+mB)))
/// with A, B the signal/noise gain products of the interior layers. For
/// L = 1 this reduces to the diamond form (A = h_s^2, B = 0).
double layered_beta_L_glb(const EcgalNetwork& net, int m);

/// Closed-form optimum for a diamond network (L = 1) with m of the N
/// relays in use. Throws when L != 1.
ScalingSolution diamond_beta_opt(const EcgalNetwork& net, int m);

/// Closed-form optimum for any ECGAL network with m of the N relays in
/// use per layer: interior layers at beta_max, last layer at
/// min(beta_L_max, beta_L_glb) when h_t > h_e, else 0.
ScalingSolution solve(const EcgalNetwork& net, int m);

/// Rate achieved by `solve` evaluated on the m-relay subnetwork.
RateResult optimal_rate(const EcgalNetwork& net, int m);

}  // namespace afsec

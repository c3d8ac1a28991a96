#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "afsec/network.hpp"
#include "afsec/solver.hpp"

namespace afsec {

/// Which printed bound a report was checked against.
enum class BoundId {
    DiamondIAdd,
    DiamondIMul,
    DiamondIIAdd,
    DiamondIIMul,
    L2IAdd,
    L2IMul,
    L2IIAdd,
    L2IIMul,
    AsympMaxAdd,
    AsympMaxMul,
    AsympGlbAdd,
    AsympGlbMul,
};

enum class BoundKind { Additive, Multiplicative };

std::string_view to_string(BoundId id);

/// One evaluated bound: its value and the slack against the realized gap
/// (bound - gap for additive, bound / gap for multiplicative; absent when
/// the gap itself is absent).
struct BoundEval {
    BoundId id;
    double value = 0.0;
    std::optional<double> slack;
};

/// Rate loss of using k of N relays per layer, with the matching printed
/// bound. When the N- and k-relay solutions land on different last-layer
/// cases, both candidate bounds are carried and regime_ok is false.
struct GapReport {
    EcgalNetwork net;
    int k = 1;
    LastLayerCase case_N = LastLayerCase::Zero;
    LastLayerCase case_k = LastLayerCase::Zero;
    double rate_N = 0.0;
    double rate_k = 0.0;
    double additive_gap = 0.0;
    std::optional<double> multiplicative_gap;  ///< absent when rate_k == 0
    BoundKind kind = BoundKind::Additive;      ///< dispatched by the power regime
    std::vector<BoundEval> bounds;             ///< primary first; empty for ZERO case
    bool regime_ok = false;
};

/// Computes both optimal rates and fills the report. Requires 1 <= k < N.
GapReport gaps(const EcgalNetwork& net, int k);

/// Diamond (L = 1) bounds. `c` selects Case I (Max) or Case II (Glb).
double bound_diamond(const EcgalNetwork& net, int k, LastLayerCase c, BoundKind kind);

/// Two-layer (L = 2) bounds, transcribed term by term.
double bound_two_layer(const EcgalNetwork& net, int k, LastLayerCase c, BoundKind kind);

/// Asymptotic layered bounds (L >= 2) built from
///   a = h_t^2 sum_{i=1..L-1} 1/h_i^2  and  b = h_t^2 sum_{i=2..L-1} 1/h_i^2.
double bound_asymptotic(const EcgalNetwork& net, int k, LastLayerCase c, BoundKind kind);

/// The a and b constants of the asymptotic bounds.
double asymptotic_a(const EcgalNetwork& net);
double asymptotic_b(const EcgalNetwork& net);

enum class SweepAxis { SourcePower, RelaysUsed, RelaysPerLayer, Layers };

/// One GapReport per value, in input order. The axis value replaces P_s,
/// k, N or L of the template; an L sweep extends h_mid by repeating its
/// last entry (and truncates for shorter networks).
std::vector<GapReport> sweep(const EcgalNetwork& net_template, SweepAxis axis,
                             const std::vector<double>& values, int k);

/// CSV serialization, one row per report (see README for the schema).
/// Floats use shortest round-trip decimals; absent values are empty cells.
void write_gap_csv(std::ostream& os, const std::vector<GapReport>& rows);
std::string gap_csv(const std::vector<GapReport>& rows);

}  // namespace afsec

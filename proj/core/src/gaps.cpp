#include "afsec/gaps.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "afsec/net_io.hpp"

namespace afsec {

std::string_view to_string(BoundId id) {
    switch (id) {
        case BoundId::DiamondIAdd: return "DIAMOND_I_ADD";
        case BoundId::DiamondIMul: return "DIAMOND_I_MUL";
        case BoundId::DiamondIIAdd: return "DIAMOND_II_ADD";
        case BoundId::DiamondIIMul: return "DIAMOND_II_MUL";
        case BoundId::L2IAdd: return "L2_I_ADD";
        case BoundId::L2IMul: return "L2_I_MUL";
        case BoundId::L2IIAdd: return "L2_II_ADD";
        case BoundId::L2IIMul: return "L2_II_MUL";
        case BoundId::AsympMaxAdd: return "ASYMP_MAX_ADD";
        case BoundId::AsympMaxMul: return "ASYMP_MAX_MUL";
        case BoundId::AsympGlbAdd: return "ASYMP_GLB_ADD";
        case BoundId::AsympGlbMul: return "ASYMP_GLB_MUL";
    }
    return "?";
}

namespace {

void require_bound_args(const EcgalNetwork& net, int k, LastLayerCase c, int wanted_L,
                        bool at_least) {
    const bool l_ok = at_least ? net.L >= wanted_L : net.L == wanted_L;
    if (!l_ok)
        throw std::invalid_argument("bound needs L " + std::string(at_least ? ">= " : "== ") +
                                    std::to_string(wanted_L));
    if (k < 1 || k > net.N)
        throw std::invalid_argument("bound needs 1 <= k <= N");
    if (c == LastLayerCase::Zero)
        throw std::invalid_argument("no gap bound applies to the zero-rate case");
}

double inv_diff(double k, double n, double p) {
    return std::pow(k, -p) - std::pow(n, -p);
}

}  // namespace

double bound_diamond(const EcgalNetwork& net, int kk, LastLayerCase c, BoundKind kind) {
    require_bound_args(net, kk, c, 1, false);
    const double n = net.N, k = kk;
    const double s2 = net.sigma2;
    if (c == LastLayerCase::Max) {
        if (kind == BoundKind::Additive)
            return 0.5 * std::log2(1.0 + s2 / (net.P * net.h_e * net.h_e) * inv_diff(k, n, 2));
        return (n / k) * (1.0 + s2 / net.P *
                                    (1.0 / (k * net.h_e * net.h_e) -
                                     1.0 / (n * net.h_t * net.h_t)));
    }
    if (kind == BoundKind::Additive) return 0.25 * std::log2(n / k);
    return std::max(n / k, net.h_t / net.h_e);
}

double bound_two_layer(const EcgalNetwork& net, int kk, LastLayerCase c, BoundKind kind) {
    require_bound_args(net, kk, c, 2, false);
    const double n = net.N, k = kk;
    const double s2 = net.sigma2;
    const double h1_2 = net.h_mid[0] * net.h_mid[0];
    const double h2 = net.h_t, h2_2 = net.h_t * net.h_t;
    const double he_2 = net.h_e * net.h_e;
    const double c1 = s2 / (net.P * h1_2);  // sigma^2 / (P h_1^2)
    const double ce = s2 / (net.P * he_2);  // sigma^2 / (P h_e^2)
    if (c == LastLayerCase::Max) {
        if (kind == BoundKind::Additive) {
            const double first =
                1.0 + (h2_2 / h1_2) * inv_diff(k, n, 1) + c1 * inv_diff(k, n, 2);
            const double second = 1.0 + ce * inv_diff(k, n, 2) + c1 * inv_diff(k, n, 3) +
                                  c1 * ce * inv_diff(k, n, 4);
            return 0.5 * std::log2(first) + 0.5 * std::log2(second);
        }
        const double bracket = 1.0 + c1 * inv_diff(k, n, 2) +
                               (s2 / net.P) * (1.0 / (k * k * he_2) - 1.0 / (n * n * h2_2)) +
                               c1 * (s2 / net.P) *
                                   (1.0 / (k * k * k * he_2) - 1.0 / (n * n * n * h2_2));
        return (n / k) * (n / k) * bracket;
    }
    if (kind == BoundKind::Additive) {
        const double ph1 = net.P * h1_2 / s2;  // P h_1^2 / sigma^2
        const double root_k = std::sqrt(std::pow(k, -6.0) + ph1 / (k * k * k));
        const double root_n = std::sqrt(std::pow(n, -6.0) + ph1 / (n * n * n));
        const double bracket =
            1.0 + c1 * (inv_diff(k, n, 3) + (h2 / net.h_e) * (root_k - root_n));
        return 0.75 * std::log2(n / k) + 0.5 * std::log2(bracket);
    }
    return std::max((n / k) * (1.0 + c1 * inv_diff(k, n, 2)), h2 / net.h_e);
}

double asymptotic_a(const EcgalNetwork& net) {
    if (net.L < 2) throw std::invalid_argument("asymptotic constants need L >= 2");
    double acc = 0.0;
    for (double h : net.h_mid) acc += 1.0 / (h * h);
    return net.h_t * net.h_t * acc;
}

double asymptotic_b(const EcgalNetwork& net) {
    if (net.L < 2) throw std::invalid_argument("asymptotic constants need L >= 2");
    double acc = 0.0;
    for (std::size_t i = 1; i < net.h_mid.size(); ++i)
        acc += 1.0 / (net.h_mid[i] * net.h_mid[i]);
    return net.h_t * net.h_t * acc;
}

double bound_asymptotic(const EcgalNetwork& net, int kk, LastLayerCase c, BoundKind kind) {
    require_bound_args(net, kk, c, 2, true);
    const double n = net.N, k = kk;
    const double s2 = net.sigma2;
    const double a = asymptotic_a(net);
    const double b = asymptotic_b(net);
    const double hL_2 = net.h_t * net.h_t;
    const double he_2 = net.h_e * net.h_e;
    const double h1_2 = net.h_mid[0] * net.h_mid[0];
    if (c == LastLayerCase::Max) {
        if (kind == BoundKind::Additive)
            return 0.5 * std::log2(1.0 + a * inv_diff(k, n, 1)) +
                   0.5 * std::log2(1.0 + a * (s2 / (net.P * hL_2)) * inv_diff(k, n, 3) +
                                   (s2 / (net.P * he_2)) * inv_diff(k, n, 2));
        const double bracket = 1.0 + (s2 / (net.P * h1_2)) * inv_diff(k, n, 2) +
                               (s2 / net.P) * (1.0 / (k * k * he_2) - 1.0 / (n * n * hL_2)) +
                               (s2 / (net.P * hL_2)) * inv_diff(k, n, 3) * b;
        return (n / k) * (n / k) * bracket;
    }
    if (kind == BoundKind::Additive)
        return 0.75 * std::log2(n / k) +
               0.5 * std::log2(1.0 + std::sqrt(s2 * a / (net.P * he_2)) * inv_diff(k, n, 1.5) +
                               (s2 * a / (net.P * hL_2)) * inv_diff(k, n, 3));
    return std::max((n / k) * (1.0 + (s2 / (net.P * h1_2)) * inv_diff(k, n, 2) +
                               (s2 * b / net.P) * inv_diff(k, n, 3)),
                    net.h_t / net.h_e);
}

namespace {

BoundId bound_id_for(int L, LastLayerCase c, BoundKind kind) {
    const bool add = kind == BoundKind::Additive;
    const bool case1 = c == LastLayerCase::Max;
    if (L == 1)
        return case1 ? (add ? BoundId::DiamondIAdd : BoundId::DiamondIMul)
                     : (add ? BoundId::DiamondIIAdd : BoundId::DiamondIIMul);
    if (L == 2)
        return case1 ? (add ? BoundId::L2IAdd : BoundId::L2IMul)
                     : (add ? BoundId::L2IIAdd : BoundId::L2IIMul);
    return case1 ? (add ? BoundId::AsympMaxAdd : BoundId::AsympMaxMul)
                 : (add ? BoundId::AsympGlbAdd : BoundId::AsympGlbMul);
}

double bound_for(const EcgalNetwork& net, int k, LastLayerCase c, BoundKind kind) {
    if (net.L == 1) return bound_diamond(net, k, c, kind);
    if (net.L == 2) return bound_two_layer(net, k, c, kind);
    return bound_asymptotic(net, k, c, kind);
}

BoundEval make_bound_eval(const EcgalNetwork& net, int k, LastLayerCase c, BoundKind kind,
                          double add_gap, const std::optional<double>& mul_gap) {
    BoundEval ev{bound_id_for(net.L, c, kind), bound_for(net, k, c, kind), std::nullopt};
    if (kind == BoundKind::Additive)
        ev.slack = ev.value - add_gap;
    else if (mul_gap && *mul_gap > 0.0)
        ev.slack = ev.value / *mul_gap;
    return ev;
}

}  // namespace

GapReport gaps(const EcgalNetwork& net, int k) {
    if (k < 1 || k >= net.N)
        throw std::invalid_argument("k must satisfy 1 <= k < N, got k=" + std::to_string(k) +
                                    " N=" + std::to_string(net.N));
    GapReport rep;
    rep.net = net;
    rep.k = k;
    const ScalingSolution sol_N = solve(net, net.N);
    const ScalingSolution sol_k = solve(net, k);
    rep.case_N = sol_N.last_layer_case;
    rep.case_k = sol_k.last_layer_case;
    rep.rate_N = evaluate_symmetric(net.with_relays(net.N), sol_N.beta_per_layer).rate_bits;
    rep.rate_k = evaluate_symmetric(net.with_relays(k), sol_k.beta_per_layer).rate_bits;
    rep.additive_gap = rep.rate_N - rep.rate_k;
    if (rep.rate_k > 0.0) rep.multiplicative_gap = rep.rate_N / rep.rate_k;

    rep.kind = net.P_s >= net.sigma2 ? BoundKind::Additive : BoundKind::Multiplicative;
    const double ratio = net.P_s / net.sigma2;
    const bool power_ok = rep.kind == BoundKind::Additive ? net.N <= 1e-2 * ratio
                                                          : net.N <= 1e-2 / ratio;

    if (rep.case_N == LastLayerCase::Zero) {
        rep.regime_ok = false;  // no positive rate, no bound to dispatch
        return rep;
    }
    if (rep.case_N == rep.case_k) {
        rep.bounds.push_back(
            make_bound_eval(net, k, rep.case_N, rep.kind, rep.additive_gap,
                            rep.multiplicative_gap));
        rep.regime_ok = power_ok;
    } else {
        // Mixed case near the beta_max = beta_glb crossover: carry both
        // candidates (N-solution's case first) and flag the regime.
        rep.bounds.push_back(make_bound_eval(net, k, rep.case_N, rep.kind, rep.additive_gap,
                                             rep.multiplicative_gap));
        rep.bounds.push_back(make_bound_eval(net, k, rep.case_k, rep.kind, rep.additive_gap,
                                             rep.multiplicative_gap));
        rep.regime_ok = false;
    }
    return rep;
}

namespace {

EcgalNetwork net_for_sweep_value(const EcgalNetwork& tpl, SweepAxis axis, double value,
                                 int& k) {
    EcgalNetwork net = tpl;
    const auto as_int = [&](const char* what) {
        if (!std::isfinite(value) || value != std::floor(value) || value < 1.0 ||
            value > 1e9)
            throw std::invalid_argument(std::string("sweep value for ") + what +
                                        " must be a positive integer");
        return static_cast<int>(value);
    };
    switch (axis) {
        case SweepAxis::SourcePower:
            net.P_s = value;
            break;
        case SweepAxis::RelaysUsed:
            k = as_int("k");
            break;
        case SweepAxis::RelaysPerLayer:
            net.N = as_int("N");
            break;
        case SweepAxis::Layers: {
            const int L = as_int("L");
            if (L > 1 && tpl.h_mid.empty())
                throw std::invalid_argument(
                    "cannot extend a single-layer template to more layers");
            std::vector<double> mids;
            for (int i = 0; i < L - 1; ++i)
                mids.push_back(i < static_cast<int>(tpl.h_mid.size())
                                   ? tpl.h_mid[static_cast<std::size_t>(i)]
                                   : tpl.h_mid.back());
            net.L = L;
            net.h_mid = std::move(mids);
            break;
        }
    }
    net.validate();
    if (k < 1 || k >= net.N)
        throw std::invalid_argument("sweep requires 1 <= k < N for every value");
    return net;
}

}  // namespace

std::vector<GapReport> sweep(const EcgalNetwork& net_template, SweepAxis axis,
                             const std::vector<double>& values, int k) {
    std::vector<GapReport> out(values.size());
    const auto compute = [&](std::size_t i) {
        int ki = k;
        const EcgalNetwork net = net_for_sweep_value(net_template, axis, values[i], ki);
        out[i] = gaps(net, ki);
    };
    const unsigned workers =
        std::min<unsigned>(std::thread::hardware_concurrency(), 8);
    if (values.size() < 16 || workers < 2) {
        for (std::size_t i = 0; i < values.size(); ++i) compute(i);
        return out;
    }
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex err_mutex;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < values.size(); i += workers) {
                try {
                    compute(i);
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

void write_gap_csv(std::ostream& os, const std::vector<GapReport>& rows) {
    std::size_t mid_cols = 0;
    for (const auto& r : rows) mid_cols = std::max(mid_cols, r.net.h_mid.size());

    os << "L,N,k,P_s,P,sigma2,h_s";
    for (std::size_t i = 0; i < mid_cols; ++i) os << ",h_mid" << (i + 1);
    os << ",h_t,h_e,case_N,case_k,rate_N,rate_k,add_gap,mul_gap,bound_id,bound_value,"
          "slack,regime_ok\n";

    for (const auto& r : rows) {
        const EcgalNetwork& n = r.net;
        os << n.L << ',' << n.N << ',' << r.k << ',' << format_double(n.P_s) << ','
           << format_double(n.P) << ',' << format_double(n.sigma2) << ','
           << format_double(n.h_s);
        for (std::size_t i = 0; i < mid_cols; ++i) {
            os << ',';
            if (i < n.h_mid.size()) os << format_double(n.h_mid[i]);
        }
        os << ',' << format_double(n.h_t) << ',' << format_double(n.h_e) << ','
           << to_string(r.case_N) << ',' << to_string(r.case_k) << ','
           << format_double(r.rate_N) << ',' << format_double(r.rate_k) << ','
           << format_double(r.additive_gap) << ',';
        if (r.multiplicative_gap) os << format_double(*r.multiplicative_gap);
        os << ',';
        if (!r.bounds.empty()) os << to_string(r.bounds.front().id);
        os << ',';
        if (!r.bounds.empty()) os << format_double(r.bounds.front().value);
        os << ',';
        if (!r.bounds.empty() && r.bounds.front().slack)
            os << format_double(*r.bounds.front().slack);
        os << ',' << (r.regime_ok ? "true" : "false") << '\n';
    }
}

std::string gap_csv(const std::vector<GapReport>& rows) {
    std::ostringstream os;
    write_gap_csv(os, rows);
    return os.str();
}

}  // namespace afsec

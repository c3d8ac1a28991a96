#include <benchmark/benchmark.h>

#include "afsec/gaps.hpp"
#include "afsec/oracle.hpp"
#include "afsec/rate.hpp"
#include "afsec/solver.hpp"

namespace {

afsec::EcgalNetwork layered_net(int L, int N) {
    afsec::EcgalNetwork net;
    net.L = L;
    net.N = N;
    net.h_s = 1.0;
    net.h_mid.assign(static_cast<std::size_t>(L - 1), 1.5);
    net.h_t = 2.0;
    net.h_e = 1.0;
    net.P_s = 10.0;
    net.P = 1.0;
    net.sigma2 = 1.0;
    return net;
}

void BM_Evaluate(benchmark::State& state) {
    const auto net = layered_net(static_cast<int>(state.range(0)), 8);
    const auto asg = afsec::ScalingAssignment::symmetric(
        net.L, net.N, std::vector<double>(static_cast<std::size_t>(net.L), 0.1));
    for (auto _ : state) benchmark::DoNotOptimize(afsec::evaluate(net, asg));
}
BENCHMARK(BM_Evaluate)->Arg(1)->Arg(3);

void BM_Solve(benchmark::State& state) {
    const auto net = layered_net(static_cast<int>(state.range(0)), 8);
    for (auto _ : state) benchmark::DoNotOptimize(afsec::solve(net, net.N));
}
BENCHMARK(BM_Solve)->Arg(1)->Arg(3);

void BM_PathSum(benchmark::State& state) {
    const auto net = layered_net(3, static_cast<int>(state.range(0)));
    const auto asg = afsec::ScalingAssignment::symmetric(
        net.L, net.N, std::vector<double>(3, 0.1));
    for (auto _ : state)
        benchmark::DoNotOptimize(afsec::h_source_dest_pathsum(net, asg));
}
BENCHMARK(BM_PathSum)->Arg(4)->Arg(10);

void BM_GridSearchDiamond(benchmark::State& state) {
    const auto net = layered_net(1, static_cast<int>(state.range(0)));
    afsec::GridSpec spec;
    spec.steps_per_axis = 16;
    spec.refine_rounds = 1;
    spec.symmetric_only = false;
    for (auto _ : state)
        benchmark::DoNotOptimize(afsec::grid_search(net, net.N, spec));
}
BENCHMARK(BM_GridSearchDiamond)->Arg(2)->Arg(4);

void BM_Gaps(benchmark::State& state) {
    const auto net = layered_net(2, 8);
    for (auto _ : state) benchmark::DoNotOptimize(afsec::gaps(net, 2));
}
BENCHMARK(BM_Gaps);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "urllc/numerics.hpp"
#include "urllc/planner.hpp"
#include "urllc/sim.hpp"

namespace {

void BM_InvQ(benchmark::State& state) {
  double p = 1e-9;
  for (auto _ : state) {
    benchmark::DoNotOptimize(urllc::inv_q_function(p));
    p = p < 0.4 ? p * 1.7 : 1e-9;
  }
}
BENCHMARK(BM_InvQ);

void BM_RequiredSinr(benchmark::State& state) {
  const urllc::SystemConfig cfg;
  const urllc::TrafficModel traffic{0.01, 5e-4};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        urllc::required_sinr(cfg, traffic, urllc::QosExponent(0.1), urllc::Probability(1e-5)));
  }
}
BENCHMARK(BM_RequiredSinr);

void BM_OptimizedSplit(benchmark::State& state) {
  urllc::SystemConfig cfg;
  cfg.bandwidth_hz = 1e6;
  const urllc::TrafficModel traffic{0.01, 5e-4};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        urllc::split_budget(1e-5, urllc::SplitPolicy::optimized(), cfg, traffic));
  }
}
BENCHMARK(BM_OptimizedSplit);

void BM_SimulateQueue(benchmark::State& state) {
  urllc::QueueSimConfig cfg;
  cfg.num_frames = static_cast<std::uint64_t>(state.range(0));
  cfg.traffic = urllc::TrafficModel{0.5, 5e-4};
  for (auto _ : state) {
    benchmark::DoNotOptimize(urllc::simulate_queue(cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateQueue)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

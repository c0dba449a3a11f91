#include <benchmark/benchmark.h>

#include "tokendcf/network.hpp"
#include "tokendcf/random.hpp"
#include "tokendcf/simulator.hpp"

using namespace tokendcf;

// Schedule/fire churn with a steady population of pending events.
static void BM_EventQueue(benchmark::State& state) {
  const auto pending = state.range(0);
  for (auto _ : state) {
    Simulator sim;
    RandomStream rng(1);
    std::int64_t left = 200'000;
    std::function<void()> tick = [&] {
      if (--left > 0) sim.schedule(rng.uniform_int(0, 1000), EventTarget{}, tick);
    };
    for (std::int64_t i = 0; i < pending; ++i) sim.schedule(rng.uniform_int(0, 1000), EventTarget{}, tick);
    benchmark::DoNotOptimize(sim.run_until(1'000'000'000));
  }
  state.SetItemsProcessed(state.iterations() * 200'000);
}
BENCHMARK(BM_EventQueue)->Arg(16)->Arg(256)->Arg(4096);

static void BM_CancelHeavy(benchmark::State& state) {
  for (auto _ : state) {
    Simulator sim;
    for (int i = 0; i < 100'000; ++i) {
      const EventId id = sim.schedule(i % 977, EventTarget{}, [] {});
      if (i % 3 != 0) sim.cancel(id);
    }
    benchmark::DoNotOptimize(sim.run_until(1000));
  }
  state.SetItemsProcessed(state.iterations() * 100'000);
}
BENCHMARK(BM_CancelHeavy);

// One second of a saturated clique; items are simulated events.
static void BM_SaturatedClique(benchmark::State& state) {
  ScenarioConfig cfg;
  cfg.n_transmitters = static_cast<int>(state.range(0));
  cfg.duration_s = 1.0;
  const Protocol proto = state.range(1) == 0 ? Protocol::Dcf : Protocol::TokenDcf;
  std::uint64_t events = 0;
  for (auto _ : state) {
    Network net(cfg, proto, derive_run_seed(1, 0));
    const RunResult r = net.run();
    events += r.events;
    benchmark::DoNotOptimize(r.report.throughput_bps);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(events));
}
BENCHMARK(BM_SaturatedClique)
    ->ArgsProduct({{5, 20, 30}, {0, 1}})
    ->ArgNames({"n_tx", "token"})
    ->Unit(benchmark::kMillisecond);

static void BM_MultiHop(benchmark::State& state) {
  ScenarioConfig cfg;
  cfg.area_side_m = 800;
  cfg.traffic.packet_size = 1500;
  cfg.duration_s = 1.0;
  for (auto _ : state) {
    Network net(cfg, Protocol::TokenDcf, derive_run_seed(1, 0));
    benchmark::DoNotOptimize(net.run().report.throughput_bps);
  }
}
BENCHMARK(BM_MultiHop)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();

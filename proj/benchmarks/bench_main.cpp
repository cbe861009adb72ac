#include <benchmark/benchmark.h>

#include <random>

#include "avrsa/simulation.hpp"

namespace {

using namespace avrsa;

NetworkGraph nsfnet(double avg = 0.99) {
  return build_nsfnet(kDefaultSlotCount, AvailabilityPolicy::jitter(avg), 1);
}

// A half-full spectrum with random occupancy.
SpectrumBitmap random_bitmap(std::size_t slots, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SpectrumBitmap b(slots);
  for (std::size_t i = 0; i < slots; ++i) {
    if (rng() % 2) b.set_busy(i);
  }
  return b;
}

void BM_FirstFit(benchmark::State& state) {
  const auto b = random_bitmap(kDefaultSlotCount, 3);
  const auto need = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(b.lowest_fit(need));
}
BENCHMARK(BM_FirstFit)->Arg(2)->Arg(5)->Arg(9);

void BM_CandidatePaths(benchmark::State& state) {
  const auto g = nsfnet();
  LightpathRequest lr{VertexId{0}, VertexId{13}, 4, static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(candidate_paths(g, lr));
}
BENCHMARK(BM_CandidatePaths)->Arg(1)->Arg(5)->Arg(10);

// Provisions a fixed batch of requests against an empty network.
void provision_batch(benchmark::State& state, ProtectionMode mode) {
  Scenario sc;
  sc.n_requests = 200;
  sc.mode = mode;
  const auto base = nsfnet();
  const auto reqs = generate_arrivals(sc, base.vertex_count());
  for (auto _ : state) {
    state.PauseTiming();
    NetworkGraph g = base;
    ProtectionState ps;
    state.ResumeTiming();
    for (std::size_t i = 0; i < reqs.size(); ++i) {
      benchmark::DoNotOptimize(
          rsacs_with_protection(g, reqs[i], ConnectionId{i}, sc.a_th, mode, ps));
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(reqs.size()));
}

void BM_ProvisionDsbpss(benchmark::State& state) { provision_batch(state, ProtectionMode::dsbpss); }
void BM_ProvisionDcycles(benchmark::State& state) { provision_batch(state, ProtectionMode::dcycles); }
BENCHMARK(BM_ProvisionDsbpss)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProvisionDcycles)->Unit(benchmark::kMillisecond);

void BM_Simulation(benchmark::State& state) {
  Scenario sc;
  sc.n_requests = 5000;
  sc.mode = static_cast<ProtectionMode>(state.range(0));
  const auto topo = nsfnet();
  for (auto _ : state) benchmark::DoNotOptimize(run(sc, topo));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(sc.n_requests));
}
BENCHMARK(BM_Simulation)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

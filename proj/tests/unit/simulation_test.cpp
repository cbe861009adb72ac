#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "avrsa/fault_injection.hpp"
#include "avrsa/simulation.hpp"

namespace avrsa {
namespace {

NetworkGraph nsfnet() { return build_nsfnet(kDefaultSlotCount, AvailabilityPolicy::uniform(1.0)); }

Scenario small(ProtectionMode mode, std::size_t n, std::uint64_t seed = 1) {
  Scenario sc;
  sc.mode = mode;
  sc.n_requests = n;
  sc.seed = seed;
  return sc;
}

TEST(Arrivals, Deterministic) {
  const Scenario sc = small(ProtectionMode::none, 1000, 42);
  const auto a = generate_arrivals(sc, 14);
  const auto b = generate_arrivals(sc, 14);
  ASSERT_EQ(a.size(), 1000u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].s, b[i].s);
    EXPECT_EQ(a[i].d, b[i].d);
    EXPECT_EQ(a[i].slots_needed, b[i].slots_needed);
    EXPECT_EQ(a[i].arrival_s, b[i].arrival_s);
    EXPECT_EQ(a[i].holding_s, b[i].holding_s);
  }
  const auto c = generate_arrivals(small(ProtectionMode::none, 1000, 43), 14);
  EXPECT_NE(a[0].arrival_s, c[0].arrival_s);
}

TEST(Arrivals, Statistics) {
  const Scenario sc = small(ProtectionMode::none, 200000, 7);
  const auto a = generate_arrivals(sc, 14);
  const double mean_gap = a.back().arrival_s / static_cast<double>(a.size());
  EXPECT_NEAR(mean_gap * sc.arrival_rate(14), 1.0, 0.01);
  double hold = 0.0;
  for (const auto& r : a) {
    EXPECT_NE(r.s, r.d);
    EXPECT_LT(index(r.s), 14u);
    EXPECT_LT(index(r.d), 14u);
    EXPECT_GE(r.slots_needed, 2u);
    EXPECT_LE(r.slots_needed, 9u);
    hold += r.holding_s;
  }
  EXPECT_NEAR(hold / static_cast<double>(a.size()), 1.0, 0.01);
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end(), [](const auto& x, const auto& y) {
    return x.arrival_s < y.arrival_s;
  }));
}

TEST(Scenario, ArrivalRate) {
  Scenario sc;
  sc.load_erlang = 15.0;
  sc.mean_holding_s = 2.0;
  EXPECT_DOUBLE_EQ(sc.arrival_rate(14), 15.0 * 14.0 / 2.0);
  sc.load_basis = LoadBasis::network;
  EXPECT_DOUBLE_EQ(sc.arrival_rate(14), 7.5);
  EXPECT_DOUBLE_EQ(sc.warm_up_s(), 6.0);
}

TEST(StreamSeed, StreamsDiffer) {
  EXPECT_NE(stream_seed(1, Stream::traffic), stream_seed(1, Stream::availability));
  EXPECT_NE(stream_seed(1, Stream::traffic), stream_seed(2, Stream::traffic));
  EXPECT_EQ(stream_seed(5, Stream::traffic), stream_seed(5, Stream::traffic));
}

TEST(Run, DeterministicAndConserving) {
  for (auto mode : {ProtectionMode::none, ProtectionMode::dsbpss, ProtectionMode::dcycles}) {
    Scenario sc = small(mode, 3000, 3);
    sc.check_invariants = true;
    const auto r1 = run(sc, nsfnet());
    const auto r2 = run(sc, nsfnet());
    EXPECT_EQ(r1, r2) << to_string(mode);
    EXPECT_GT(r1.arrived, 0u);
    EXPECT_LE(r1.blocked, r1.arrived);
    EXPECT_LE(r1.protection_slot_time, r1.slot_time_used);
    EXPECT_LE(r1.slot_time_used, r1.slot_time_capacity);
    if (mode == ProtectionMode::none) {
      EXPECT_EQ(r1.protection_slot_time, 0.0);
    } else {
      EXPECT_GT(r1.needing_protection, 0u);
    }
  }
}

TEST(Run, WarmUpArrivalsAreNotCounted) {
  Scenario sc = small(ProtectionMode::none, 2000, 9);
  const auto arrivals = generate_arrivals(sc, 14);
  const auto counted = std::count_if(arrivals.begin(), arrivals.end(), [&](const auto& r) {
    return r.arrival_s >= sc.warm_up_s();
  });
  EXPECT_EQ(run(sc, nsfnet()).arrived, static_cast<std::uint64_t>(counted));
}

TEST(Simulator, DrainFreesEverything) {
  for (auto mode : {ProtectionMode::dsbpss, ProtectionMode::dcycles}) {
    NetworkGraph g = nsfnet();
    Scenario sc = small(mode, 5000, 11);
    assign_availability(g, sc.availability_policy(), stream_seed(sc.seed, Stream::availability));
    Simulator sim(std::move(g), sc);
    sim.advance_arrivals(800);
    EXPECT_EQ(sim.arrivals_handled(), 800u);
    EXPECT_FALSE(sim.resources_free());
    EXPECT_NO_THROW(sim.verify());
    sim.drain();
    EXPECT_TRUE(sim.finished());
    EXPECT_TRUE(sim.resources_free());
  }
}

TEST(Simulator, RandomPrefixesPassFaultInjection) {
  std::mt19937_64 rng(2024);
  for (auto mode : {ProtectionMode::dsbpss, ProtectionMode::dcycles}) {
    for (int trial = 0; trial < 4; ++trial) {
      NetworkGraph g = nsfnet();
      Scenario sc = small(mode, 600, rng());
      assign_availability(g, sc.availability_policy(), stream_seed(sc.seed, Stream::availability));
      Simulator sim(std::move(g), sc);
      sim.advance_arrivals(std::uniform_int_distribution<std::size_t>(50, 600)(rng));
      sim.verify();
      const auto live = sim.live_connections();
      const auto rep = inject_single_failures(sim.graph(), sim.protection(), live, mode);
      EXPECT_EQ(rep.total_conflicts, 0u);
      EXPECT_EQ(rep.total_violations, 0u);
    }
  }
}

}  // namespace
}  // namespace avrsa

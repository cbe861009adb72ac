#include <gtest/gtest.h>

#include "avrsa/fault_injection.hpp"
#include "avrsa/provisioning.hpp"
#include "fixtures.hpp"

namespace avrsa {
namespace {

using testing::graph_of;
using testing::lk;
using testing::vx;

LightpathRequest req(const NetworkGraph& g, const char* s, const char* d, std::size_t slots) {
  return {vx(g, s), vx(g, d), slots, 5};
}

NetworkGraph ring4(double a) {
  return graph_of({{"a", "b", a}, {"b", "c", a}, {"c", "d", a}, {"d", "a", a}});
}

TEST(ParseMode, RoundTrip) {
  for (auto m : {ProtectionMode::none, ProtectionMode::dsbpss, ProtectionMode::dcycles}) {
    EXPECT_EQ(parse_mode(to_string(m)), m);
  }
  EXPECT_THROW(parse_mode("pcycles"), std::invalid_argument);
}

TEST(Provision, RejectsThresholdOutsideUnitInterval) {
  auto g = ring4(0.99);
  ProtectionState ps;
  for (double a : {0.0, -0.1, 1.5}) {
    EXPECT_THROW(rsacs_with_protection(g, req(g, "a", "b", 2), ConnectionId{1}, a,
                                       ProtectionMode::dsbpss, ps),
                 std::invalid_argument);
  }
}

TEST(Provision, AboveThresholdNeedsNoProtection) {
  for (auto mode : {ProtectionMode::dsbpss, ProtectionMode::dcycles}) {
    auto g = ring4(0.9999);
    ProtectionState ps;
    auto r = rsacs_with_protection(g, req(g, "a", "b", 2), ConnectionId{1}, 0.999, mode, ps);
    ASSERT_TRUE(std::holds_alternative<Connection>(r));
    const auto& c = std::get<Connection>(r);
    EXPECT_FALSE(c.report.protection_needed);
    EXPECT_FALSE(c.report.protected_);
    EXPECT_EQ(c.report.a_pp_max, c.report.a_p_max);
    EXPECT_TRUE(ps.empty());
    EXPECT_EQ(g.link(lk(g, "a", "b")).bitmap.count_busy(), 2u);
  }
}

TEST(Provision, BelowThresholdGetsProtected) {
  for (auto mode : {ProtectionMode::dsbpss, ProtectionMode::dcycles}) {
    auto g = ring4(0.99);
    ProtectionState ps;
    auto r = rsacs_with_protection(g, req(g, "a", "b", 2), ConnectionId{1}, 0.995, mode, ps);
    const auto& c = std::get<Connection>(r);
    EXPECT_TRUE(c.report.protection_needed);
    EXPECT_TRUE(c.report.protected_) << to_string(mode);
    EXPECT_GE(c.report.a_pp_max, 0.995);
    EXPECT_FALSE(ps.empty());
    EXPECT_NO_THROW(ps.verify(g));
  }
}

TEST(Provision, ModeNoneLeavesPathUnprotected) {
  auto g = ring4(0.99);
  ProtectionState ps;
  auto r = rsacs_with_protection(g, req(g, "a", "b", 2), ConnectionId{1}, 0.995,
                                 ProtectionMode::none, ps);
  const auto& c = std::get<Connection>(r);
  EXPECT_TRUE(c.report.protection_needed);
  EXPECT_FALSE(c.report.protected_);
  EXPECT_TRUE(ps.empty());
}

TEST(Provision, SaturatedGraphKeepsWorkingPathWithoutProtection) {
  for (auto mode : {ProtectionMode::dsbpss, ProtectionMode::dcycles}) {
    auto g = graph_of({{"a", "b", 0.99}, {"b", "c", 0.99}, {"c", "a", 0.99}}, 4);
    const LinkId other[] = {lk(g, "b", "c"), lk(g, "c", "a")};
    allocate(g, other, {0, 4});
    const auto before = g;
    ProtectionState ps;
    auto r = rsacs_with_protection(g, req(g, "a", "b", 2), ConnectionId{1}, 0.999, mode, ps);
    ASSERT_TRUE(std::holds_alternative<Connection>(r));
    const auto& c = std::get<Connection>(r);
    EXPECT_TRUE(c.report.protection_needed);
    EXPECT_FALSE(c.report.protected_);
    EXPECT_TRUE(c.backups.empty());
    EXPECT_TRUE(c.cycle_protections.empty());
    EXPECT_TRUE(ps.empty());
    EXPECT_EQ(g.link(lk(g, "a", "b")).bitmap.count_busy(), 2u);
    EXPECT_EQ(g.link(lk(g, "b", "c")).bitmap, before.link(lk(g, "b", "c")).bitmap);
  }
}

TEST(Provision, BlockedWhenNoPathFits) {
  auto g = graph_of({{"a", "b"}}, 4);
  ProtectionState ps;
  auto r = rsacs_with_protection(g, req(g, "a", "b", 5), ConnectionId{1}, 0.999,
                                 ProtectionMode::dsbpss, ps);
  EXPECT_TRUE(std::holds_alternative<Blocked>(r));
  EXPECT_EQ(g.link(lk(g, "a", "b")).bitmap.count_busy(), 0u);
}

TEST(ReleaseConnection, RestoresGraphAndState) {
  for (auto mode : {ProtectionMode::dsbpss, ProtectionMode::dcycles}) {
    auto g = ring4(0.99);
    const auto pristine = g;
    ProtectionState ps;
    auto c1 = std::get<Connection>(
        rsacs_with_protection(g, req(g, "a", "b", 2), ConnectionId{1}, 0.995, mode, ps));
    auto c2 = std::get<Connection>(
        rsacs_with_protection(g, req(g, "c", "d", 3), ConnectionId{2}, 0.995, mode, ps));
    release_connection(g, c1, ps);
    EXPECT_NO_THROW(ps.verify(g));
    release_connection(g, c2, ps);
    EXPECT_TRUE(ps.empty()) << to_string(mode);
    for (LinkId id : g.link_ids()) EXPECT_EQ(g.link(id).bitmap, pristine.link(id).bitmap);
  }
}

TEST(FaultInjection, DsbpssPathsRestoredWithoutConflicts) {
  auto g = graph_of({{"A", "B", 0.99}, {"B", "C", 0.99}, {"C", "D", 0.99}, {"A", "F", 0.99},
                     {"F", "E", 0.99}, {"E", "D", 0.99}, {"B", "F", 0.99}, {"B", "E", 0.99}});
  ProtectionState ps;
  std::vector<Connection> live;
  live.push_back(std::get<Connection>(rsacs_with_protection(
      g, req(g, "A", "D", 3), ConnectionId{1}, 0.999, ProtectionMode::dsbpss, ps)));
  live.push_back(std::get<Connection>(rsacs_with_protection(
      g, req(g, "B", "E", 2), ConnectionId{2}, 0.999, ProtectionMode::dsbpss, ps)));
  ASSERT_TRUE(live[0].report.protected_);
  ASSERT_TRUE(live[1].report.protected_);

  const auto rep = inject_single_failures(g, ps, live, ProtectionMode::dsbpss);
  EXPECT_EQ(rep.per_link.size(), g.link_count());
  EXPECT_EQ(rep.total_conflicts, 0u);
  EXPECT_EQ(rep.total_violations, 0u);
  for (const auto& o : rep.per_link) EXPECT_EQ(o.restored, o.affected);
}

TEST(FaultInjection, DetectsBackupSlotsClaimedTwice) {
  auto g = ring4(0.99);
  ProtectionState ps;
  std::vector<Connection> live;
  live.push_back(std::get<Connection>(rsacs_with_protection(
      g, req(g, "a", "b", 2), ConnectionId{1}, 0.995, ProtectionMode::dsbpss, ps)));
  // A forged second connection on the same working link reusing the first
  // connection's backup.
  Connection forged = live[0];
  forged.working.id = ConnectionId{2};
  live.push_back(forged);
  const auto rep = inject_single_failures(g, ps, live, ProtectionMode::dsbpss);
  EXPECT_GT(rep.total_conflicts, 0u);
}

TEST(FaultInjection, UnprotectedThresholdPathIsViolation) {
  auto g = ring4(0.99);
  ProtectionState ps;
  std::vector<Connection> live;
  live.push_back(std::get<Connection>(rsacs_with_protection(
      g, req(g, "a", "b", 2), ConnectionId{1}, 0.995, ProtectionMode::dsbpss, ps)));
  live[0].backups.clear();
  const auto rep = inject_single_failures(g, ps, live, ProtectionMode::dsbpss);
  EXPECT_EQ(rep.total_violations, 1u);
}

TEST(FaultInjection, DcyclesProtectedLinksRestored) {
  auto g = graph_of({{"A", "B", 0.99}, {"B", "C", 0.99}, {"C", "E", 0.99}, {"E", "F", 0.99},
                     {"F", "A", 0.99}, {"C", "D", 0.99}, {"D", "E", 0.99}, {"F", "B", 0.99},
                     {"B", "E", 0.99}});
  ProtectionState ps;
  std::vector<Connection> live;
  live.push_back(std::get<Connection>(rsacs_with_protection(
      g, req(g, "A", "C", 2), ConnectionId{1}, 0.999, ProtectionMode::dcycles, ps)));
  live.push_back(std::get<Connection>(rsacs_with_protection(
      g, req(g, "F", "D", 2), ConnectionId{2}, 0.999, ProtectionMode::dcycles, ps)));
  for (const auto& c : live) ASSERT_TRUE(c.report.protected_);
  const auto rep = inject_single_failures(g, ps, live, ProtectionMode::dcycles);
  EXPECT_EQ(rep.total_conflicts, 0u);
  EXPECT_EQ(rep.total_violations, 0u);
  for (const auto& c : live) {
    for (const auto& cp : c.cycle_protections) {
      EXPECT_EQ(rep.per_link[index(cp.link)].unrestored, 0u);
    }
  }
}

}  // namespace
}  // namespace avrsa

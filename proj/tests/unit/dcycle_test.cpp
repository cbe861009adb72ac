#include <gtest/gtest.h>

#include <algorithm>

#include "avrsa/availability.hpp"
#include "avrsa/dcycle.hpp"
#include "fixtures.hpp"

namespace avrsa {
namespace {

using testing::graph_of;
using testing::lk;
using testing::vx;

// Cycle A-B-C-E-F-A with chords F-B and B-E, and a detour C-D-E.
NetworkGraph hexagon(double a = 0.99) {
  return graph_of({{"A", "B", a},
                   {"B", "C", a},
                   {"C", "E", a},
                   {"E", "F", a},
                   {"F", "A", a},
                   {"C", "D", a},
                   {"D", "E", a},
                   {"F", "B", a},
                   {"B", "E", a}});
}

CycleId add_cycle(NetworkGraph& g, DCycleSet& cs, std::initializer_list<const char*> ring,
                  std::size_t cap) {
  DCycle c;
  for (const char* n : ring) c.ring.push_back(vx(g, n));
  c.capacity_slots = cap;
  std::vector<LinkBlock> held;
  for (std::size_t i = 0; i < c.ring.size(); ++i) {
    const LinkId l = *g.find_link(c.ring[i], c.ring[(i + 1) % c.ring.size()]);
    c.links.push_back(l);
    c.blocks.push_back(first_fit(g.link(l).bitmap, cap));
    held.push_back({l, c.blocks.back()});
  }
  allocate(g, held);
  return cs.add(std::move(c));
}

WorkingPath working(NetworkGraph& g, std::uint64_t id, std::initializer_list<const char*> route,
                    std::size_t slots) {
  WorkingPath wp;
  wp.id = ConnectionId{id};
  SpectrumBitmap bits(g.slot_count());
  for (const char* n : route) wp.vertices.push_back(vx(g, n));
  for (std::size_t i = 0; i + 1 < wp.vertices.size(); ++i) {
    const LinkId l = *g.find_link(wp.vertices[i], wp.vertices[i + 1]);
    wp.links.push_back(l);
    bits &= g.link(l).bitmap;
    wp.availability *= g.link(l).availability;
  }
  wp.block = first_fit(bits, slots);
  allocate(g, wp.links, wp.block);
  return wp;
}

// Rotates so the smallest vertex comes first and the second is the smaller
// neighbour, making rings comparable.
std::vector<VertexId> canonical(std::vector<VertexId> ring) {
  auto it = std::min_element(ring.begin(), ring.end(),
                             [](VertexId a, VertexId b) { return index(a) < index(b); });
  std::rotate(ring.begin(), it, ring.end());
  if (ring.size() > 2 && index(ring.back()) < index(ring[1])) std::reverse(ring.begin() + 1, ring.end());
  return ring;
}

std::vector<VertexId> names(const NetworkGraph& g, std::initializer_list<const char*> ns) {
  std::vector<VertexId> out;
  for (const char* n : ns) out.push_back(vx(g, n));
  return out;
}

TEST(MinAvailabilityLink, Examples) {
  const LinkId ls[] = {LinkId{4}, LinkId{2}, LinkId{9}};
  const double a[] = {0.99, 0.9, 0.999};
  EXPECT_EQ(min_availability_link(ls, a), LinkId{2});
  const double same[] = {0.9, 0.9, 0.9};
  EXPECT_EQ(min_availability_link(ls, same), LinkId{2});
  const LinkId one[] = {LinkId{7}};
  const double a1[] = {0.5};
  EXPECT_EQ(min_availability_link(one, a1), LinkId{7});
  const LinkId skip[] = {LinkId{2}};
  EXPECT_EQ(min_availability_link(ls, a, skip), LinkId{4});
  const LinkId all[] = {LinkId{4}, LinkId{2}, LinkId{9}};
  EXPECT_FALSE(min_availability_link(ls, a, all).has_value());
}

TEST(DCycle, ArcsAndRelations) {
  auto g = hexagon();
  DCycleSet cs;
  const CycleId id = add_cycle(g, cs, {"A", "B", "C", "E", "F"}, 2);
  const DCycle& c = *cs.find(id);
  EXPECT_EQ(c.relation(g.link(lk(g, "A", "B"))), ProtectionKind::on_cycle);
  EXPECT_EQ(c.relation(g.link(lk(g, "F", "B"))), ProtectionKind::straddling);
  EXPECT_EQ(c.relation(g.link(lk(g, "B", "E"))), ProtectionKind::straddling);
  EXPECT_FALSE(c.relation(g.link(lk(g, "C", "D"))).has_value());

  const auto on = c.backup_arcs(g.link(lk(g, "A", "B")));
  ASSERT_EQ(on.size(), 1u);
  EXPECT_EQ(on[0].size(), 4u);
  EXPECT_EQ(std::count(on[0].begin(), on[0].end(), lk(g, "A", "B")), 0);

  const auto st = c.backup_arcs(g.link(lk(g, "B", "E")));
  ASSERT_EQ(st.size(), 2u);
  EXPECT_EQ(st[0].size() + st[1].size(), 5u);
  EXPECT_NO_THROW(cs.verify(g));
}

TEST(CycleBackupAvailability, OnCycleIsComplementaryArc) {
  auto g = graph_of({{"a", "b", 0.9}, {"b", "c", 0.8}, {"c", "d", 0.7}, {"d", "a", 0.6}});
  DCycleSet cs;
  const CycleId id = add_cycle(g, cs, {"a", "b", "c", "d"}, 1);
  const DCycle& c = *cs.find(id);
  const LinkId ab = lk(g, "a", "b");
  double expect = 1.0;
  for (LinkId l : g.link_ids()) {
    if (l != ab) expect *= g.link(l).availability;
  }
  EXPECT_NEAR(cycle_backup_availability(c, g, ab, 1), expect, 1e-12);
}

TEST(CycleBackupAvailability, StraddlerParallelOrSplit) {
  auto g = graph_of({{"a", "b", 0.9}, {"b", "c", 0.8}, {"c", "d", 0.7}, {"d", "a", 0.6}, {"a", "c", 0.5}});
  DCycleSet cs;
  const CycleId id = add_cycle(g, cs, {"a", "b", "c", "d"}, 2);
  const DCycle& c = *cs.find(id);
  const double arc1 = 0.9 * 0.8;
  const double arc2 = 0.7 * 0.6;
  const LinkId ac = lk(g, "a", "c");
  EXPECT_NEAR(cycle_backup_availability(c, g, ac, 2), 1.0 - (1.0 - arc1) * (1.0 - arc2), 1e-12);
  EXPECT_NEAR(cycle_backup_availability(c, g, ac, 4), arc1 * arc2, 1e-12);
}

TEST(CheckCycles, StraddlerAndOnCycleWithinCapacity) {
  auto g = hexagon();
  DCycleSet cs;
  const CycleId id = add_cycle(g, cs, {"A", "B", "C", "E", "F"}, 2);
  const auto fb = check_cycles(cs, g, lk(g, "F", "B"), 2);
  ASSERT_TRUE(fb);
  EXPECT_EQ(fb->cycle, id);
  EXPECT_EQ(fb->kind, ProtectionKind::straddling);
  // Both arcs together carry twice the capacity.
  EXPECT_TRUE(check_cycles(cs, g, lk(g, "F", "B"), 4));
  EXPECT_FALSE(check_cycles(cs, g, lk(g, "F", "B"), 5));

  const auto ab = check_cycles(cs, g, lk(g, "A", "B"), 2);
  ASSERT_TRUE(ab);
  EXPECT_EQ(ab->kind, ProtectionKind::on_cycle);
  EXPECT_FALSE(check_cycles(cs, g, lk(g, "A", "B"), 3));
  EXPECT_FALSE(check_cycles(cs, g, lk(g, "C", "D"), 1));
}

TEST(CheckCycles, PrefersStraddlingUse) {
  auto g = hexagon();
  DCycleSet cs;
  add_cycle(g, cs, {"F", "B", "E"}, 2);                       // F-B on this cycle
  const CycleId outer = add_cycle(g, cs, {"A", "B", "C", "E", "F"}, 2);  // F-B straddles
  const auto use = check_cycles(cs, g, lk(g, "F", "B"), 1);
  ASSERT_TRUE(use);
  EXPECT_EQ(use->cycle, outer);
  EXPECT_EQ(use->kind, ProtectionKind::straddling);
}

TEST(CheckCycles, SkipsCycleAlreadyProtectingTheLink) {
  auto g = hexagon();
  DCycleSet cs;
  const CycleId id = add_cycle(g, cs, {"A", "B", "C", "E", "F"}, 2);
  cs.find(id)->protected_links.push_back(
      {lk(g, "A", "B"), ConnectionId{1}, 2, ProtectionKind::on_cycle});
  EXPECT_FALSE(check_cycles(cs, g, lk(g, "A", "B"), 1));
}

TEST(FindCycleFor, TriangleGivesOnCycle) {
  auto g = graph_of({{"a", "b"}, {"b", "c"}, {"c", "a"}});
  DCycleSet cs;
  const auto plan = find_cycle_for(g, lk(g, "a", "b"), 2, cs, 5);
  ASSERT_TRUE(plan);
  EXPECT_EQ(plan->kind, CyclePlan::Kind::new_on_cycle);
  EXPECT_EQ(canonical(plan->ring), canonical(names(g, {"a", "b", "c"})));
  EXPECT_EQ(plan->links.size(), 3u);
  EXPECT_EQ(plan->capacity_slots, 2u);
}

TEST(FindCycleFor, SquareWithChordGivesStraddling) {
  auto g = graph_of({{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}, {"a", "c"}});
  DCycleSet cs;
  const LinkId ac = lk(g, "a", "c");
  const auto plan = find_cycle_for(g, ac, 3, cs, 5);
  ASSERT_TRUE(plan);
  EXPECT_EQ(plan->kind, CyclePlan::Kind::new_straddling);
  EXPECT_EQ(canonical(plan->ring), canonical(names(g, {"a", "b", "c", "d"})));
  EXPECT_EQ(std::count(plan->links.begin(), plan->links.end(), ac), 0);

  const CycleUse use = apply_plan(g, cs, *plan, ac, 3);
  EXPECT_EQ(use.kind, ProtectionKind::straddling);
  EXPECT_NO_THROW(cs.verify(g));
  EXPECT_EQ(cs.reserved_slots(), 12u);
}

TEST(FindCycleFor, BridgeHasNoCycle) {
  auto g = graph_of({{"a", "b"}, {"b", "c"}, {"c", "a"}, {"c", "d"}});
  DCycleSet cs;
  EXPECT_FALSE(find_cycle_for(g, lk(g, "c", "d"), 1, cs, 5));
}

TEST(FindCycleFor, OnCycleNeedsSpareSlotsOnTheLink) {
  auto g = graph_of({{"a", "b"}, {"b", "c"}, {"c", "a"}}, 4);
  const LinkId ab[] = {lk(g, "a", "b")};
  allocate(g, ab, {0, 3});
  DCycleSet cs;
  EXPECT_FALSE(find_cycle_for(g, ab[0], 2, cs, 5));
  EXPECT_TRUE(find_cycle_for(g, ab[0], 1, cs, 5));
}

TEST(Dcyc, ExtendsExistingCycleThroughNewLink) {
  auto g = hexagon();
  g.set_availability(lk(g, "F", "E"), 0.95);
  g.set_availability(lk(g, "E", "D"), 0.96);
  DCycleSet cs;
  const CycleId id = add_cycle(g, cs, {"A", "B", "C", "E", "F"}, 2);
  cs.find(id)->protected_links.push_back(
      {lk(g, "A", "B"), ConnectionId{1}, 2, ProtectionKind::on_cycle});

  const auto wp = working(g, 2, {"F", "E", "D"}, 2);
  LightpathRequest lr{wp.vertices.front(), wp.vertices.back(), 2, 5};
  const auto r = dcyc(g, lr, wp, wp.availability, 0.99, cs);
  ASSERT_TRUE(r);
  ASSERT_EQ(r->protections.size(), 2u);
  EXPECT_EQ(r->protections[0].link, lk(g, "F", "E"));
  EXPECT_EQ(r->protections[1].link, lk(g, "E", "D"));
  ASSERT_EQ(cs.cycles().size(), 1u);
  const DCycle& c = cs.cycles()[0];
  EXPECT_EQ(canonical(c.ring), canonical(names(g, {"A", "B", "C", "D", "E", "F"})));
  EXPECT_FALSE(c.contains_link(lk(g, "C", "E")));
  // The dropped link's reservation is released.
  EXPECT_EQ(g.link(lk(g, "C", "E")).bitmap.count_busy(), 0u);
  EXPECT_NO_THROW(cs.verify(g));
  EXPECT_GE(r->a_pp, 0.99);
}

TEST(Dcyc, SingleOnCycleProtectionUpdatesAvailability) {
  auto g = graph_of({{"p", "q", 0.99}, {"q", "r", 0.9}, {"r", "s", 0.99}, {"q", "t", 0.99},
                     {"t", "r", 0.99}});
  DCycleSet cs;
  const auto wp = working(g, 1, {"p", "q", "r", "s"}, 2);
  LightpathRequest lr{wp.vertices.front(), wp.vertices.back(), 2, 5};
  const auto r = dcyc(g, lr, wp, wp.availability, 0.97, cs);
  ASSERT_TRUE(r);
  ASSERT_EQ(r->protections.size(), 1u);
  EXPECT_EQ(r->protections[0].kind, ProtectionKind::on_cycle);
  const double a_arc = 0.99 * 0.99;
  EXPECT_NEAR(r->protections[0].a_bp, a_arc, 1e-12);
  EXPECT_NEAR(r->a_pp, wp.availability * (1.0 - 0.1 * (1.0 - a_arc)) / 0.9, 1e-12);
  ASSERT_EQ(cs.cycles().size(), 1u);
  EXPECT_EQ(cs.cycles()[0].protected_links.size(), 1u);
}

TEST(Dcyc, BridgeRollsBack) {
  auto g = graph_of({{"a", "b", 0.99}, {"b", "c", 0.99}, {"c", "a", 0.99}, {"c", "d", 0.9}});
  DCycleSet cs;
  const auto wp = working(g, 1, {"a", "c", "d"}, 2);
  const auto snapshot = g;
  LightpathRequest lr{wp.vertices.front(), wp.vertices.back(), 2, 5};
  EXPECT_FALSE(dcyc(g, lr, wp, wp.availability, 0.999, cs));
  EXPECT_TRUE(cs.empty());
  for (LinkId id : g.link_ids()) EXPECT_EQ(g.link(id).bitmap, snapshot.link(id).bitmap);
}

TEST(Dcyc, PartialProgressIsRolledBack) {
  // c-d is the weakest link and protectable; a-c then fails because a-b-c is
  // saturated and a-c itself has no spare slots.
  auto g = graph_of({{"a", "c", 0.95}, {"c", "d", 0.9}, {"d", "e", 0.99}, {"e", "c", 0.99},
                     {"a", "b", 0.99}, {"b", "c", 0.99}},
                    4);
  const LinkId ab[] = {lk(g, "a", "b")};
  allocate(g, ab, {0, 4});
  DCycleSet cs;
  const auto wp = working(g, 1, {"a", "c", "d"}, 3);
  const auto snapshot = g;
  LightpathRequest lr{wp.vertices.front(), wp.vertices.back(), 3, 5};
  EXPECT_FALSE(dcyc(g, lr, wp, wp.availability, 0.999, cs));
  EXPECT_TRUE(cs.empty());
  for (LinkId id : g.link_ids()) EXPECT_EQ(g.link(id).bitmap, snapshot.link(id).bitmap);
}

TEST(DismantleUnused, ReleasesOnlyIdleCycles) {
  auto g = hexagon();
  const auto pristine = g;
  DCycleSet cs;
  const CycleId busy = add_cycle(g, cs, {"A", "B", "C", "E", "F"}, 2);
  add_cycle(g, cs, {"C", "D", "E"}, 1);
  cs.find(busy)->protected_links.push_back(
      {lk(g, "A", "B"), ConnectionId{7}, 2, ProtectionKind::on_cycle});
  EXPECT_EQ(cs.dismantle_unused(g), 1u);
  ASSERT_EQ(cs.cycles().size(), 1u);
  EXPECT_EQ(cs.cycles()[0].id, busy);

  cs.release_protections(ConnectionId{7});
  EXPECT_EQ(cs.dismantle_unused(g), 1u);
  EXPECT_TRUE(cs.empty());
  for (LinkId id : g.link_ids()) EXPECT_EQ(g.link(id).bitmap, pristine.link(id).bitmap);
}

TEST(DCycleSet, VerifyCatchesOverlappingReservations) {
  auto g = hexagon();
  DCycleSet cs;
  add_cycle(g, cs, {"A", "B", "C", "E", "F"}, 2);
  DCycle clash = cs.cycles()[0];
  cs.add(clash);  // same blocks as the first cycle
  EXPECT_THROW(cs.verify(g), Error);
}

}  // namespace
}  // namespace avrsa

#include "avrsa/dcycle.hpp"

#include <algorithm>
#include <map>

#include "avrsa/availability.hpp"

namespace avrsa {

bool DCycle::contains_link(LinkId l) const {
  return std::find(links.begin(), links.end(), l) != links.end();
}

std::optional<std::size_t> DCycle::position(VertexId v) const {
  auto it = std::find(ring.begin(), ring.end(), v);
  if (it == ring.end()) return std::nullopt;
  return static_cast<std::size_t>(it - ring.begin());
}

std::optional<ProtectionKind> DCycle::relation(const Link& l) const {
  if (contains_link(l.id)) return ProtectionKind::on_cycle;
  if (position(l.u) && position(l.v)) return ProtectionKind::straddling;
  return std::nullopt;
}

std::vector<std::vector<LinkId>> DCycle::backup_arcs(const Link& l) const {
  const std::size_t n = links.size();
  std::vector<std::vector<LinkId>> arcs;
  auto rel = relation(l);
  if (!rel) return arcs;
  if (*rel == ProtectionKind::on_cycle) {
    const auto i = static_cast<std::size_t>(std::find(links.begin(), links.end(), l.id) -
                                            links.begin());
    std::vector<LinkId> arc;
    for (std::size_t j = 1; j < n; ++j) arc.push_back(links[(i + j) % n]);
    arcs.push_back(std::move(arc));
  } else {
    std::size_t a = *position(l.u);
    std::size_t b = *position(l.v);
    if (a > b) std::swap(a, b);
    std::vector<LinkId> first(links.begin() + static_cast<std::ptrdiff_t>(a),
                              links.begin() + static_cast<std::ptrdiff_t>(b));
    std::vector<LinkId> second(links.begin() + static_cast<std::ptrdiff_t>(b), links.end());
    second.insert(second.end(), links.begin(), links.begin() + static_cast<std::ptrdiff_t>(a));
    arcs.push_back(std::move(first));
    arcs.push_back(std::move(second));
  }
  return arcs;
}

std::size_t DCycle::allowance(ProtectionKind kind) const {
  return kind == ProtectionKind::on_cycle ? capacity_slots : 2 * capacity_slots;
}

bool DCycle::protects(LinkId l) const {
  return std::any_of(protected_links.begin(), protected_links.end(),
                     [l](const CycleProtectionEntry& e) { return e.link == l; });
}

namespace {

double arc_availability(const NetworkGraph& g, const std::vector<LinkId>& arc) {
  double a = 1.0;
  for (LinkId id : arc) a *= g.link(id).availability;
  return a;
}

}  // namespace

double cycle_backup_availability(const DCycle& c, const NetworkGraph& g, LinkId l,
                                 std::size_t demand) {
  const auto arcs = c.backup_arcs(g.link(l));
  if (arcs.empty()) throw Error("cycle does not protect link " + std::to_string(index(l)));
  if (arcs.size() == 1) return arc_availability(g, arcs[0]);
  const double a1 = arc_availability(g, arcs[0]);
  const double a2 = arc_availability(g, arcs[1]);
  if (demand <= c.capacity_slots) {
    const double both[] = {a1, a2};
    return parallel_availability(both);
  }
  return a1 * a2;
}

const DCycle* DCycleSet::find(CycleId id) const {
  for (const auto& c : cycles_) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

DCycle* DCycleSet::find(CycleId id) {
  for (auto& c : cycles_) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

CycleId DCycleSet::add(DCycle c) {
  c.id = CycleId{next_id_++};
  cycles_.push_back(std::move(c));
  return cycles_.back().id;
}

void DCycleSet::replace(DCycle c) {
  DCycle* slot = find(c.id);
  if (!slot) throw Error("unknown cycle " + std::to_string(value(c.id)));
  *slot = std::move(c);
}

std::size_t DCycleSet::reserved_slots() const {
  std::size_t n = 0;
  for (const auto& c : cycles_) n += c.reserved_slots();
  return n;
}

void DCycleSet::release_protections(ConnectionId wp) {
  for (auto& c : cycles_) {
    auto& e = c.protected_links;
    e.erase(std::remove_if(e.begin(), e.end(),
                           [wp](const CycleProtectionEntry& x) { return x.wp == wp; }),
            e.end());
  }
}

std::size_t DCycleSet::dismantle_unused(NetworkGraph& g) {
  std::size_t removed = 0;
  for (auto it = cycles_.begin(); it != cycles_.end();) {
    if (it->protected_links.empty()) {
      std::vector<LinkBlock> held;
      for (std::size_t i = 0; i < it->links.size(); ++i) held.push_back({it->links[i], it->blocks[i]});
      release(g, held);
      it = cycles_.erase(it);
      ++removed;
    } else {
      ++it;
    }
  }
  return removed;
}

void DCycleSet::verify(const NetworkGraph& g) const {
  auto fail = [](const DCycle& c, const std::string& m) {
    throw Error("cycle " + std::to_string(value(c.id)) + ": " + m);
  };
  std::map<std::size_t, std::vector<SlotBlock>> per_link;
  for (const auto& c : cycles_) {
    const std::size_t n = c.links.size();
    if (n < 3 || c.ring.size() != n || c.blocks.size() != n) fail(c, "malformed ring");
    for (std::size_t i = 0; i < n; ++i) {
      const Link& l = g.link(c.links[i]);
      const VertexId a = c.ring[i];
      const VertexId b = c.ring[(i + 1) % n];
      if (!(l.touches(a) && l.touches(b))) fail(c, "link does not join consecutive ring vertices");
      for (std::size_t j = i + 1; j < n; ++j) {
        if (c.ring[i] == c.ring[j]) fail(c, "repeated vertex");
        if (c.links[i] == c.links[j]) fail(c, "repeated link");
      }
      if (c.blocks[i].len != c.capacity_slots) fail(c, "block size differs from capacity");
      if (!l.bitmap.all_busy(c.blocks[i])) fail(c, "reserved block not busy");
      for (const auto& other : per_link[index(c.links[i])]) {
        if (other.overlaps(c.blocks[i])) fail(c, "overlaps another cycle's reservation");
      }
      per_link[index(c.links[i])].push_back(c.blocks[i]);
    }
    for (std::size_t i = 0; i < c.protected_links.size(); ++i) {
      const auto& e = c.protected_links[i];
      for (std::size_t j = i + 1; j < c.protected_links.size(); ++j) {
        if (c.protected_links[j].link == e.link) fail(c, "working link protected twice");
      }
      auto rel = c.relation(g.link(e.link));
      if (!rel || *rel != e.kind) fail(c, "protected link no longer on or straddling the cycle");
      if (e.demand > c.allowance(e.kind)) fail(c, "demand exceeds cycle capacity");
    }
  }
}

std::optional<LinkId> min_availability_link(std::span<const LinkId> links,
                                            std::span<const double> availability,
                                            std::span<const LinkId> exclude) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < links.size(); ++i) {
    if (std::find(exclude.begin(), exclude.end(), links[i]) != exclude.end()) continue;
    if (!best || availability[i] < availability[*best] ||
        (availability[i] == availability[*best] && index(links[i]) < index(links[*best]))) {
      best = i;
    }
  }
  if (!best) return std::nullopt;
  return links[*best];
}

std::optional<CycleUse> check_cycles(const DCycleSet& cs, const NetworkGraph& g, LinkId l,
                                     std::size_t demand) {
  const Link& link = g.link(l);
  std::optional<CycleUse> best;
  for (const auto& c : cs.cycles()) {
    if (c.protects(l)) continue;
    auto rel = c.relation(link);
    if (!rel || demand > c.allowance(*rel)) continue;
    CycleUse use{c.id, *rel, cycle_backup_availability(c, g, l, demand)};
    if (!best) {
      best = use;
      continue;
    }
    const bool straddles = use.kind == ProtectionKind::straddling;
    const bool best_straddles = best->kind == ProtectionKind::straddling;
    if (straddles != best_straddles) {
      if (straddles) best = use;
    } else if (use.a_bp > best->a_bp) {
      best = use;
    }
  }
  return best;
}

namespace {

// Replaces one arc of `c` by a path through `l` built from `p1` (which runs
// from l.u to l.v without l). Tries keeping the longer arc first.
std::optional<CyclePlan> try_extend(const NetworkGraph& g, const DCycle& c, const Link& l,
                                    const CandidatePath& p1) {
  const auto& z = p1.vertices;
  const std::size_t m = z.size() - 1;
  auto on_cycle = [&](VertexId v) { return c.position(v).has_value(); };
  if (on_cycle(l.u) && on_cycle(l.v)) return std::nullopt;

  std::optional<std::size_t> xi;
  for (std::size_t i = 0; i <= m; ++i) {
    if (on_cycle(z[i])) {
      xi = i;
      break;
    }
  }
  std::optional<std::size_t> yi;
  for (std::size_t i = m + 1; i-- > 0;) {
    if (on_cycle(z[i])) {
      yi = i;
      break;
    }
  }
  if (!xi || !yi || *xi >= *yi) return std::nullopt;

  // Segment from y round through l to x; interior vertices are off the cycle.
  std::vector<VertexId> seg_vertices(z.begin() + static_cast<std::ptrdiff_t>(*yi), z.end());
  seg_vertices.insert(seg_vertices.end(), z.begin(),
                      z.begin() + static_cast<std::ptrdiff_t>(*xi) + 1);
  std::vector<LinkId> seg_links(p1.links.begin() + static_cast<std::ptrdiff_t>(*yi),
                                p1.links.end());
  seg_links.push_back(l.id);
  seg_links.insert(seg_links.end(), p1.links.begin(),
                   p1.links.begin() + static_cast<std::ptrdiff_t>(*xi));

  const std::size_t n = c.links.size();
  const std::size_t px = *c.position(z[*xi]);
  const std::size_t py = *c.position(z[*yi]);

  struct Arc {
    std::vector<VertexId> vertices;  // x .. y
    std::vector<LinkId> links;
  };
  Arc forward;
  for (std::size_t p = px;; p = (p + 1) % n) {
    forward.vertices.push_back(c.ring[p]);
    if (p == py) break;
    forward.links.push_back(c.links[p]);
  }
  Arc backward;
  for (std::size_t p = px;; p = (p + n - 1) % n) {
    backward.vertices.push_back(c.ring[p]);
    if (p == py) break;
    backward.links.push_back(c.links[(p + n - 1) % n]);
  }
  std::vector<const Arc*> order{&forward, &backward};
  if (backward.links.size() > forward.links.size()) std::swap(order[0], order[1]);

  for (const Arc* kept : order) {
    CyclePlan plan;
    plan.kind = CyclePlan::Kind::extend;
    plan.extends = c.id;
    plan.capacity_slots = c.capacity_slots;
    plan.protection = ProtectionKind::on_cycle;
    plan.ring = kept->vertices;
    plan.ring.insert(plan.ring.end(), seg_vertices.begin() + 1, seg_vertices.end() - 1);
    plan.links = kept->links;
    plan.links.insert(plan.links.end(), seg_links.begin(), seg_links.end());

    DCycle shaped = c;
    shaped.ring = plan.ring;
    shaped.links = plan.links;
    bool valid = true;
    for (const auto& e : c.protected_links) {
      auto rel = shaped.relation(g.link(e.link));
      if (!rel || e.demand > shaped.allowance(*rel)) {
        valid = false;
        break;
      }
    }
    if (!valid) continue;
    for (LinkId id : seg_links) {
      if (!is_feasible(g.link(id).bitmap, c.capacity_slots)) {
        valid = false;
        break;
      }
    }
    if (valid) return plan;
  }
  return std::nullopt;
}

}  // namespace

std::optional<CyclePlan> find_cycle_for(const NetworkGraph& g, LinkId l, std::size_t demand,
                                        const DCycleSet& cs, std::size_t k) {
  const Link& link = g.link(l);
  const LinkId without_l[] = {l};
  const NetworkGraph g1 = remove_links(g, without_l);
  LightpathRequest around{link.u, link.v, demand, k};
  const auto alternates = candidate_paths(g1, around);
  if (alternates.empty()) return std::nullopt;
  const CandidatePath& p1 = select_best(alternates);

  for (const auto& c : cs.cycles()) {
    if (c.capacity_slots < demand || c.protects(l)) continue;
    if (auto plan = try_extend(g, c, link, p1)) return plan;
  }

  // Second route disjoint from p1 apart from l's end nodes.
  std::vector<LinkId> drop(p1.links.begin(), p1.links.end());
  for (std::size_t i = 1; i + 1 < p1.vertices.size(); ++i) {
    for (LinkId id : g1.incident(p1.vertices[i])) drop.push_back(id);
  }
  std::sort(drop.begin(), drop.end(), [](LinkId a, LinkId b) { return index(a) < index(b); });
  drop.erase(std::unique(drop.begin(), drop.end()), drop.end());
  const NetworkGraph g2 = remove_links(g1, drop);
  const auto seconds = candidate_paths(g2, around);
  if (!seconds.empty()) {
    const CandidatePath& p2 = select_best(seconds);
    CyclePlan plan;
    plan.kind = CyclePlan::Kind::new_straddling;
    plan.capacity_slots = demand;
    plan.protection = ProtectionKind::straddling;
    plan.ring = p1.vertices;
    plan.ring.insert(plan.ring.end(), p2.vertices.rbegin() + 1, p2.vertices.rend() - 1);
    plan.links = p1.links;
    plan.links.insert(plan.links.end(), p2.links.rbegin(), p2.links.rend());
    return plan;
  }

  if (is_feasible(link.bitmap, demand)) {
    CyclePlan plan;
    plan.kind = CyclePlan::Kind::new_on_cycle;
    plan.capacity_slots = demand;
    plan.protection = ProtectionKind::on_cycle;
    plan.ring = p1.vertices;
    plan.links = p1.links;
    plan.links.push_back(l);
    return plan;
  }
  return std::nullopt;
}

CycleUse apply_plan(NetworkGraph& g, DCycleSet& cs, const CyclePlan& plan, LinkId l,
                    std::size_t demand) {
  if (plan.kind == CyclePlan::Kind::extend) {
    const DCycle* old = plan.extends ? cs.find(*plan.extends) : nullptr;
    if (!old) throw Error("extension of unknown cycle");
    DCycle next = *old;
    next.ring = plan.ring;
    next.links = plan.links;
    next.blocks.clear();

    std::vector<LinkBlock> added;
    for (LinkId id : plan.links) {
      auto it = std::find(old->links.begin(), old->links.end(), id);
      if (it != old->links.end()) {
        next.blocks.push_back(old->blocks[static_cast<std::size_t>(it - old->links.begin())]);
      } else {
        const SlotBlock b = first_fit(g.link(id).bitmap, plan.capacity_slots);
        next.blocks.push_back(b);
        added.push_back({id, b});
      }
    }
    std::vector<LinkBlock> dropped;
    for (std::size_t i = 0; i < old->links.size(); ++i) {
      if (!next.contains_link(old->links[i])) dropped.push_back({old->links[i], old->blocks[i]});
    }
    allocate(g, added);
    release(g, dropped);
    for (auto& e : next.protected_links) e.kind = *next.relation(g.link(e.link));
    const CycleId id = next.id;
    cs.replace(std::move(next));
    const DCycle& c = *cs.find(id);
    return {id, *c.relation(g.link(l)), cycle_backup_availability(c, g, l, demand)};
  }

  DCycle c;
  c.ring = plan.ring;
  c.links = plan.links;
  c.capacity_slots = plan.capacity_slots;
  std::vector<LinkBlock> held;
  for (LinkId id : plan.links) {
    const SlotBlock b = first_fit(g.link(id).bitmap, plan.capacity_slots);
    c.blocks.push_back(b);
    held.push_back({id, b});
  }
  allocate(g, held);
  const CycleId id = cs.add(std::move(c));
  const DCycle& added = *cs.find(id);
  return {id, *added.relation(g.link(l)), cycle_backup_availability(added, g, l, demand)};
}

std::optional<DcycResult> dcyc(NetworkGraph& g, const LightpathRequest& lr, const WorkingPath& wp,
                               double a_pp_max, double a_th, DCycleSet& cs) {
  DcycResult result{{}, a_pp_max};
  if (a_pp_max >= a_th) return result;

  const DCycleSet cycles_before = cs;
  std::vector<std::pair<LinkId, SpectrumBitmap>> bitmaps_before;
  for (LinkId id : g.link_ids()) bitmaps_before.emplace_back(id, g.link(id).bitmap);
  auto roll_back = [&] {
    cs = cycles_before;
    for (auto& [id, bits] : bitmaps_before) g.link(id).bitmap = std::move(bits);
  };

  std::vector<double> availability;
  for (LinkId id : wp.links) availability.push_back(g.link(id).availability);
  std::vector<LinkId> done;
  const std::size_t demand = lr.slots_needed;

  double a_pp = a_pp_max;
  while (a_pp < a_th) {
    auto l = min_availability_link(wp.links, availability, done);
    if (!l) {
      roll_back();
      return std::nullopt;
    }
    std::optional<CycleUse> use = check_cycles(cs, g, *l, demand);
    if (!use) {
      auto plan = find_cycle_for(g, *l, demand, cs, lr.k);
      if (!plan) {
        roll_back();
        return std::nullopt;
      }
      use = apply_plan(g, cs, *plan, *l, demand);
    }
    cs.find(use->cycle)->protected_links.push_back({*l, wp.id, demand, use->kind});

    const double a_l = g.link(*l).availability;
    const DcycUpdate upd = ava_dcyc_update(a_pp, a_l, use->a_bp);
    a_pp = upd.a_pp;
    const auto pos = static_cast<std::size_t>(
        std::find(wp.links.begin(), wp.links.end(), *l) - wp.links.begin());
    availability[pos] = upd.a_pl;
    done.push_back(*l);
    result.protections.push_back({use->cycle, *l, use->kind, use->a_bp});
  }
  result.a_pp = a_pp;
  return result;
}

}  // namespace avrsa

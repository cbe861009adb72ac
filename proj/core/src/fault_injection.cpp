#include "avrsa/fault_injection.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

namespace avrsa {

namespace {

bool uses(const std::vector<LinkId>& links, LinkId l) {
  return std::find(links.begin(), links.end(), l) != links.end();
}

bool backup_intact(const NetworkGraph& g, const BackupPath& bp, LinkId failed) {
  if (uses(bp.links, failed)) return false;
  return std::all_of(bp.links.begin(), bp.links.end(),
                     [&](LinkId id) { return g.link(id).bitmap.all_busy(bp.block); });
}

void check_dsbpss(const NetworkGraph& g, const std::vector<const Connection*>& affected,
                  LinkId failed, LinkFailureOutcome& out) {
  // Every backup slot of an affected path, whether or not it gets used,
  // must belong to that path alone among the affected ones.
  std::map<std::pair<std::size_t, std::size_t>, std::set<ConnectionId>> claimants;
  for (const Connection* c : affected) {
    bool restored = false;
    for (const auto& bp : c->backups) {
      if (backup_intact(g, bp, failed)) restored = true;
      for (LinkId id : bp.links) {
        for (std::size_t s = bp.block.start; s < bp.block.end(); ++s) {
          claimants[{index(id), s}].insert(c->working.id);
        }
      }
    }
    if (restored) {
      ++out.restored;
    } else {
      ++out.unrestored;
      if (c->report.protected_) ++out.violations;
    }
  }
  for (const auto& [slot, wps] : claimants) {
    if (wps.size() > 1) ++out.conflicts;
  }
}

void check_dcycles(const NetworkGraph& g, const DCycleSet& cs,
                   const std::vector<const Connection*>& affected, LinkId failed,
                   LinkFailureOutcome& out) {
  const Link& f = g.link(failed);
  std::map<CycleId, std::size_t> demand_on;
  for (const Connection* c : affected) {
    bool restored = false;
    bool was_protected = false;
    for (const auto& cp : c->cycle_protections) {
      if (cp.link != failed) continue;
      was_protected = true;
      const DCycle* cycle = cs.find(cp.cycle);
      if (!cycle) continue;
      auto entry = std::find_if(cycle->protected_links.begin(), cycle->protected_links.end(),
                                [&](const CycleProtectionEntry& e) {
                                  return e.link == failed && e.wp == c->working.id;
                                });
      if (entry == cycle->protected_links.end()) continue;
      auto rel = cycle->relation(f);
      if (!rel || entry->demand > cycle->allowance(*rel)) continue;
      demand_on[cycle->id] += entry->demand;
      restored = true;
    }
    if (restored) {
      ++out.restored;
    } else {
      ++out.unrestored;
      if (was_protected && c->report.protected_) ++out.violations;
    }
  }
  for (const auto& [id, demand] : demand_on) {
    const DCycle& cycle = *cs.find(id);
    if (demand > cycle.allowance(*cycle.relation(f))) ++out.conflicts;
    for (std::size_t i = 0; i < cycle.links.size(); ++i) {
      if (!g.link(cycle.links[i]).bitmap.all_busy(cycle.blocks[i])) ++out.conflicts;
    }
  }
}

}  // namespace

RestorationReport inject_single_failures(const NetworkGraph& g, const ProtectionState& ps,
                                         std::span<const Connection> live, ProtectionMode mode) {
  RestorationReport report;
  for (LinkId failed : g.link_ids()) {
    LinkFailureOutcome out;
    out.link = failed;
    std::vector<const Connection*> affected;
    for (const auto& c : live) {
      if (uses(c.working.links, failed)) affected.push_back(&c);
    }
    out.affected = affected.size();
    switch (mode) {
      case ProtectionMode::none:
        out.unrestored = affected.size();
        break;
      case ProtectionMode::dsbpss:
        check_dsbpss(g, affected, failed, out);
        break;
      case ProtectionMode::dcycles:
        check_dcycles(g, ps.cycles, affected, failed, out);
        break;
    }
    report.total_conflicts += out.conflicts;
    report.total_violations += out.violations;
    report.per_link.push_back(out);
  }
  return report;
}

}  // namespace avrsa

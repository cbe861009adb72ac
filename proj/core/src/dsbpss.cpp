#include "avrsa/dsbpss.hpp"

#include <algorithm>
#include <unordered_map>

#include "avrsa/availability.hpp"

namespace avrsa {

namespace {

bool link_less(LinkId a, LinkId b) { return index(a) < index(b); }

std::vector<LinkId> sorted_links(std::span<const LinkId> links) {
  std::vector<LinkId> out(links.begin(), links.end());
  std::sort(out.begin(), out.end(), link_less);
  return out;
}

bool ref_less(const BackupRef& a, const BackupRef& b) {
  if (a.wp != b.wp) return value(a.wp) < value(b.wp);
  return a.backup < b.backup;
}

// Memoizes "is registered path X link-disjoint from the new path" for one call.
class DisjointCache {
 public:
  DisjointCache(const BackupRegistry& reg, std::span<const LinkId> new_links)
      : reg_(reg), new_links_(new_links) {}

  bool operator()(ConnectionId wp) {
    auto it = memo_.find(wp);
    if (it != memo_.end()) return it->second;
    const bool d = links_disjoint(reg_.working_links(wp), new_links_);
    memo_.emplace(wp, d);
    return d;
  }

 private:
  const BackupRegistry& reg_;
  std::span<const LinkId> new_links_;
  std::unordered_map<ConnectionId, bool> memo_;
};

bool claims_shareable(std::span<const BackupRef> claims, DisjointCache& disjoint) {
  if (claims.empty()) return false;
  return std::all_of(claims.begin(), claims.end(),
                     [&](const BackupRef& c) { return disjoint(c.wp); });
}

// Slots on `link` a backup of the new path could use right now: free ones
// plus shareable backup slots.
SpectrumBitmap usable_slots(const NetworkGraph& g, const BackupRegistry& reg, LinkId link,
                            DisjointCache& disjoint) {
  SpectrumBitmap bits = g.link(link).bitmap;
  const auto per_slot = reg.link_claims(link);
  // Neighbouring slots of one backup carry identical claims; reuse the answer.
  const std::vector<BackupRef>* prev = nullptr;
  bool prev_shareable = false;
  for (std::size_t s = 0; s < per_slot.size(); ++s) {
    const auto& c = per_slot[s];
    if (c.empty()) continue;
    if (!prev || c != *prev) {
      prev = &c;
      prev_shareable = claims_shareable(c, disjoint);
    }
    if (prev_shareable) bits.set_free(s);
  }
  return bits;
}

}  // namespace

bool links_disjoint(std::span<const LinkId> a, std::span<const LinkId> b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (link_less(*i, *j)) {
      ++i;
    } else {
      ++j;
    }
  }
  return true;
}

std::vector<ConnectionId> BackupRegistry::working_paths() const {
  std::vector<ConnectionId> out;
  out.reserve(entries_.size());
  for (const auto& [wp, e] : entries_) out.push_back(wp);
  return out;
}

std::span<const LinkId> BackupRegistry::working_links(ConnectionId wp) const {
  auto it = entries_.find(wp);
  if (it == entries_.end()) {
    throw RegistryError("working path " + std::to_string(value(wp)) + " not registered");
  }
  return it->second.working;
}

std::span<const BackupPath> BackupRegistry::backups(ConnectionId wp) const {
  auto it = entries_.find(wp);
  if (it == entries_.end()) return {};
  return it->second.backups;
}

std::span<const BackupRef> BackupRegistry::claims(LinkId link, std::size_t slot) const {
  if (index(link) >= claims_.size() || slot >= claims_[index(link)].size()) return {};
  return claims_[index(link)][slot];
}

std::span<const std::vector<BackupRef>> BackupRegistry::link_claims(LinkId link) const {
  if (index(link) >= claims_.size()) return {};
  return claims_[index(link)];
}

std::vector<BackupRegistry::SlotClaims>& BackupRegistry::link_claims(LinkId link,
                                                                      std::size_t slots) {
  if (claims_.size() <= index(link)) claims_.resize(index(link) + 1);
  auto& per_slot = claims_[index(link)];
  if (per_slot.size() < slots) per_slot.resize(slots);
  return per_slot;
}

bool BackupRegistry::shareable(LinkId link, std::size_t slot,
                               std::span<const LinkId> wp_links) const {
  DisjointCache disjoint(*this, wp_links);
  return claims_shareable(claims(link, slot), disjoint);
}

std::vector<ShareGroup> BackupRegistry::groups() const {
  std::vector<ShareGroup> out;
  for (std::size_t li = 0; li < claims_.size(); ++li) {
    const auto& per_slot = claims_[li];
    std::size_t s = 0;
    while (s < per_slot.size()) {
      if (per_slot[s].empty()) {
        ++s;
        continue;
      }
      std::size_t e = s + 1;
      while (e < per_slot.size() && per_slot[e] == per_slot[s]) ++e;
      ShareGroup grp;
      grp.backup_link = link_id(li);
      grp.block = {s, e - s};
      grp.owner_backups = per_slot[s];
      std::sort(grp.owner_backups.begin(), grp.owner_backups.end(), ref_less);
      for (const auto& r : grp.owner_backups) {
        if (grp.protected_wps.empty() || grp.protected_wps.back() != r.wp) {
          grp.protected_wps.push_back(r.wp);
        }
      }
      out.push_back(std::move(grp));
      s = e;
    }
  }
  return out;
}

void BackupRegistry::add_working(ConnectionId wp, std::span<const LinkId> links) {
  if (entries_.contains(wp)) {
    throw RegistryError("working path " + std::to_string(value(wp)) + " already registered");
  }
  entries_[wp].working = sorted_links(links);
}

void BackupRegistry::reserve(NetworkGraph& g, ConnectionId wp, BackupPath bp) {
  auto it = entries_.find(wp);
  if (it == entries_.end()) {
    throw RegistryError("working path " + std::to_string(value(wp)) + " not registered");
  }
  Entry& entry = it->second;
  std::vector<LinkId> bp_sorted = sorted_links(bp.links);
  if (!links_disjoint(bp_sorted, entry.working)) {
    throw RegistryError("backup path shares a link with its working path");
  }

  DisjointCache disjoint(*this, entry.working);
  for (LinkId l : bp.links) {
    const SpectrumBitmap& bits = g.link(l).bitmap;
    for (std::size_t s = bp.block.start; s < bp.block.end(); ++s) {
      if (bits.is_free(s)) continue;
      if (!claims_shareable(claims(l, s), disjoint)) {
        throw RegistryError("backup slot " + std::to_string(s) + " on link " +
                            std::to_string(index(l)) + " is not shareable");
      }
    }
  }

  const BackupRef ref{wp, static_cast<std::uint32_t>(entry.backups.size())};
  for (LinkId l : bp.links) {
    auto& per_slot = link_claims(l, g.slot_count());
    SpectrumBitmap& bits = g.link(l).bitmap;
    for (std::size_t s = bp.block.start; s < bp.block.end(); ++s) {
      if (per_slot[s].empty()) {
        bits.set_busy(s);
        ++reserved_;
      }
      per_slot[s].push_back(ref);
    }
  }
  entry.backups.push_back(std::move(bp));
}

void BackupRegistry::release(NetworkGraph& g, ConnectionId wp) {
  auto it = entries_.find(wp);
  if (it == entries_.end()) {
    throw RegistryError("working path " + std::to_string(value(wp)) + " not registered");
  }
  const Entry& entry = it->second;
  for (std::size_t b = 0; b < entry.backups.size(); ++b) {
    const BackupRef ref{wp, static_cast<std::uint32_t>(b)};
    const BackupPath& bp = entry.backups[b];
    for (LinkId l : bp.links) {
      auto& per_slot = link_claims(l, g.slot_count());
      for (std::size_t s = bp.block.start; s < bp.block.end(); ++s) {
        auto& c = per_slot[s];
        c.erase(std::remove(c.begin(), c.end(), ref), c.end());
        if (c.empty()) {
          g.link(l).bitmap.set_free(s);
          --reserved_;
        }
      }
    }
  }
  entries_.erase(it);
}

void BackupRegistry::verify(const NetworkGraph& g) const {
  auto fail = [](const std::string& m) { throw RegistryError("registry invariant: " + m); };
  std::size_t counted = 0;
  for (std::size_t li = 0; li < claims_.size(); ++li) {
    const LinkId link = link_id(li);
    for (std::size_t s = 0; s < claims_[li].size(); ++s) {
      const auto& c = claims_[li][s];
      if (c.empty()) continue;
      ++counted;
      if (g.link(link).bitmap.is_free(s)) fail("claimed backup slot marked free");
      for (std::size_t i = 0; i < c.size(); ++i) {
        auto e = entries_.find(c[i].wp);
        if (e == entries_.end() || c[i].backup >= e->second.backups.size()) {
          fail("claim by unknown backup");
        }
        const BackupPath& bp = e->second.backups[c[i].backup];
        if (s < bp.block.start || s >= bp.block.end() ||
            std::find(bp.links.begin(), bp.links.end(), link) == bp.links.end()) {
          fail("claim outside its backup's block");
        }
        for (std::size_t j = i + 1; j < c.size(); ++j) {
          if (c[i].wp == c[j].wp) fail("slot claimed twice by one working path");
          if (!links_disjoint(working_links(c[i].wp), working_links(c[j].wp))) {
            fail("slot shared by working paths with a common link");
          }
        }
      }
    }
  }
  if (counted != reserved_) fail("reserved slot counter out of sync");
  for (const auto& [wp, e] : entries_) {
    for (std::size_t b = 0; b < e.backups.size(); ++b) {
      const BackupPath& bp = e.backups[b];
      if (!links_disjoint(sorted_links(bp.links), e.working)) fail("backup not disjoint");
      for (LinkId l : bp.links) {
        for (std::size_t s = bp.block.start; s < bp.block.end(); ++s) {
          auto c = claims(l, s);
          if (std::find(c.begin(), c.end(), BackupRef{wp, static_cast<std::uint32_t>(b)}) ==
              c.end()) {
            fail("backup slot not claimed");
          }
        }
      }
    }
  }
}

bool can_share(const ShareGroup& group, std::span<const LinkId> new_wp_links,
               const BackupRegistry& reg) {
  return std::all_of(group.protected_wps.begin(), group.protected_wps.end(),
                     [&](ConnectionId wp) {
                       return links_disjoint(reg.working_links(wp), new_wp_links);
                     });
}

NetworkGraph free_backup_slots(const NetworkGraph& g_pruned, const BackupRegistry& reg,
                               std::span<const LinkId> new_wp_links) {
  NetworkGraph out = g_pruned;
  const std::vector<LinkId> wp_sorted = sorted_links(new_wp_links);
  DisjointCache disjoint(reg, wp_sorted);
  for (LinkId l : out.link_ids()) {
    out.link(l).bitmap = usable_slots(g_pruned, reg, l, disjoint);
  }
  return out;
}

DsbpssResult dsbpss(NetworkGraph& g, const LightpathRequest& lr, const WorkingPath& wp,
                    BackupRegistry& reg, double a_pp_max, double a_th) {
  DsbpssResult result{{}, a_pp_max};
  if (a_pp_max >= a_th) return result;

  const NetworkGraph pruned = remove_links(g, wp.links);
  const NetworkGraph search = free_backup_slots(pruned, reg, wp.links);
  LightpathRequest backup_lr = lr;
  backup_lr.s = wp.vertices.front();
  backup_lr.d = wp.vertices.back();
  std::vector<CandidatePath> candidates = candidate_paths(search, backup_lr);

  reg.add_working(wp.id, wp.links);
  const std::vector<LinkId> wp_sorted = sorted_links(wp.links);
  double a_pp = a_pp_max;
  while (a_pp < a_th) {
    if (candidates.empty()) {
      reg.release(g, wp.id);
      return {{}, a_pp_max};
    }
    const std::size_t best = best_index(candidates);
    CandidatePath cand = std::move(candidates[best]);
    candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(best));

    // Earlier backups of this path may have taken slots since the search.
    DisjointCache disjoint(reg, wp_sorted);
    SpectrumBitmap bits(g.slot_count());
    for (LinkId l : cand.links) bits &= usable_slots(g, reg, l, disjoint);
    auto block = bits.lowest_fit(lr.slots_needed);
    if (!block) continue;

    BackupPath bp{cand.vertices, cand.links, *block, cand.availability};
    reg.reserve(g, wp.id, bp);
    result.backups.push_back(std::move(bp));
    a_pp = ava_dsbpss_update(a_pp, cand.availability);
  }
  result.a_pp = a_pp;
  return result;
}

void release_backups(NetworkGraph& g, ConnectionId wp, BackupRegistry& reg) {
  reg.release(g, wp);
}

}  // namespace avrsa

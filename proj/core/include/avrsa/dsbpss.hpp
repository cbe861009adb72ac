#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "avrsa/routing.hpp"
#include "avrsa/spectrum.hpp"
#include "avrsa/topology.hpp"

namespace avrsa {

/// Shared backup path protection with slot sharing between link-disjoint
/// working paths.
///
/// Backup reservations are tracked per (link, slot). A slot may be claimed by
/// backups of several working paths only when those working paths are
/// pairwise link-disjoint, so a single link failure activates at most one of
/// the claims on it.

/// A backup path; one block used end to end, no spectrum conversion.
struct BackupPath {
  std::vector<VertexId> vertices;
  std::vector<LinkId> links;
  SlotBlock block;
  double availability = 1.0;
};

/// Identifies backup number `backup` of working path `wp`.
struct BackupRef {
  ConnectionId wp{};
  std::uint32_t backup = 0;
  friend bool operator==(const BackupRef&, const BackupRef&) = default;
};

/// A maximal run of slots on one backup link claimed by the same backups.
struct ShareGroup {
  LinkId backup_link{};
  SlotBlock block;
  std::vector<ConnectionId> protected_wps;
  std::vector<BackupRef> owner_backups;
};

class BackupRegistry {
 public:
  bool contains(ConnectionId wp) const { return entries_.contains(wp); }
  bool empty() const { return entries_.empty(); }
  std::vector<ConnectionId> working_paths() const;
  /// Sorted working links of a registered path.
  std::span<const LinkId> working_links(ConnectionId wp) const;
  std::span<const BackupPath> backups(ConnectionId wp) const;

  /// Claims on one backup slot; empty when the slot holds no backup.
  std::span<const BackupRef> claims(LinkId link, std::size_t slot) const;
  /// Claims on every slot of `link`, indexed by slot; may be shorter than the
  /// slot count when the high slots never held a backup.
  std::span<const std::vector<BackupRef>> link_claims(LinkId link) const;
  /// Number of (link, slot) pairs held for backups; shared slots count once.
  std::size_t reserved_slots() const { return reserved_; }
  std::vector<ShareGroup> groups() const;

  /// True iff `slot` on `link` is claimed and every claimant's working path
  /// is link-disjoint from `wp_links` (sorted).
  bool shareable(LinkId link, std::size_t slot, std::span<const LinkId> wp_links) const;

  void add_working(ConnectionId wp, std::span<const LinkId> links);
  /// Reserves `bp` for `wp`, marking newly used slots busy in `g`. Every slot
  /// must be free or shareable; otherwise throws RegistryError and nothing
  /// changes.
  void reserve(NetworkGraph& g, ConnectionId wp, BackupPath bp);
  /// Drops `wp` and all its backups, freeing slots no other backup claims.
  void release(NetworkGraph& g, ConnectionId wp);

  /// Throws RegistryError describing the first broken invariant.
  void verify(const NetworkGraph& g) const;

 private:
  struct Entry {
    std::vector<LinkId> working;
    std::vector<BackupPath> backups;
  };
  using SlotClaims = std::vector<BackupRef>;

  std::vector<SlotClaims>& link_claims(LinkId link, std::size_t slots);

  std::map<ConnectionId, Entry> entries_;
  std::vector<std::vector<SlotClaims>> claims_;  // [link][slot]
  std::size_t reserved_ = 0;
};

/// True iff link sets `a` and `b` (both sorted) share no link.
bool links_disjoint(std::span<const LinkId> a, std::span<const LinkId> b);

/// Slots of `group` may also protect a working path with `new_wp_links`
/// (sorted) iff that path is link-disjoint from every path the group
/// protects.
bool can_share(const ShareGroup& group, std::span<const LinkId> new_wp_links,
               const BackupRegistry& reg);

/// A copy of `g_pruned` in which backup slots shareable with the new working
/// path are marked free. Other busy slots stay busy.
NetworkGraph free_backup_slots(const NetworkGraph& g_pruned, const BackupRegistry& reg,
                               std::span<const LinkId> new_wp_links);

struct DsbpssResult {
  std::vector<BackupPath> backups;  // empty: path left unprotected
  double a_pp = 0.0;
};

/// Stacks link-disjoint backups for `wp` until its availability reaches a_th.
/// If candidates run out first, every reservation made by this call is
/// rolled back and the result has no backups and the input a_pp.
DsbpssResult dsbpss(NetworkGraph& g, const LightpathRequest& lr, const WorkingPath& wp,
                    BackupRegistry& reg, double a_pp_max, double a_th);

/// Dismantles the backups of `wp`. Throws RegistryError for an unknown path.
void release_backups(NetworkGraph& g, ConnectionId wp, BackupRegistry& reg);

}  // namespace avrsa

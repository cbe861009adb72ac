#pragma once

#include <optional>
#include <span>
#include <vector>

#include "avrsa/routing.hpp"
#include "avrsa/spectrum.hpp"
#include "avrsa/topology.hpp"

namespace avrsa {

// Dynamic protection cycles: link protection by cycles formed, extended and
// dismantled on demand. A link on the cycle is protected by the rest of the
// cycle; a straddling link (both ends on the cycle, link not on it) by either
// of the two arcs between its ends. Cycle slots need not be aligned across
// links because converters sit at the ends of a failed link.

enum class ProtectionKind { on_cycle, straddling };

struct CycleProtectionEntry {
  LinkId link{};
  ConnectionId wp{};
  std::size_t demand = 0;
  ProtectionKind kind = ProtectionKind::on_cycle;
};

struct DCycle {
  CycleId id{};
  // links[i] joins ring[i] and ring[(i + 1) % n].
  std::vector<VertexId> ring;
  std::vector<LinkId> links;
  std::vector<SlotBlock> blocks;  // reservation on links[i]
  std::size_t capacity_slots = 0;
  std::vector<CycleProtectionEntry> protected_links;

  bool contains_link(LinkId l) const;
  std::optional<std::size_t> position(VertexId v) const;
  /// How the cycle relates to `l`; nullopt when it cannot protect it.
  std::optional<ProtectionKind> relation(const Link& l) const;
  /// Routes that carry traffic when `l` fails: one arc for an on-cycle link,
  /// two for a straddler.
  std::vector<std::vector<LinkId>> backup_arcs(const Link& l) const;
  /// Largest demand this cycle can restore for a failure of `l`.
  std::size_t allowance(ProtectionKind kind) const;
  std::size_t reserved_slots() const { return capacity_slots * links.size(); }
  bool protects(LinkId l) const;
};

/// Availability of the backup route the cycle offers `l` for `demand` slots.
/// A straddler whose demand fits one arc gets the parallel combination of the
/// arcs; a larger demand is split over both arcs and needs both up.
double cycle_backup_availability(const DCycle& c, const NetworkGraph& g, LinkId l,
                                 std::size_t demand);

class DCycleSet {
 public:
  const std::vector<DCycle>& cycles() const { return cycles_; }
  bool empty() const { return cycles_.empty(); }
  const DCycle* find(CycleId id) const;
  DCycle* find(CycleId id);

  /// Takes ownership of a cycle whose blocks are already reserved in the
  /// graph; assigns and returns its id.
  CycleId add(DCycle c);
  void replace(DCycle c);

  /// Slots held by all cycles.
  std::size_t reserved_slots() const;
  /// Removes every protection entry belonging to `wp`.
  void release_protections(ConnectionId wp);
  /// Releases and removes cycles that protect nothing. Returns the count.
  std::size_t dismantle_unused(NetworkGraph& g);

  /// Throws Error describing the first broken invariant.
  void verify(const NetworkGraph& g) const;

 private:
  std::vector<DCycle> cycles_;  // ordered by id
  std::uint32_t next_id_ = 0;
};

/// The link with the smallest availability among `links`, skipping
/// `exclude`; ties go to the lower link id.
std::optional<LinkId> min_availability_link(std::span<const LinkId> links,
                                            std::span<const double> availability,
                                            std::span<const LinkId> exclude = {});

struct CycleUse {
  CycleId cycle{};
  ProtectionKind kind = ProtectionKind::on_cycle;
  double a_bp = 0.0;
};

/// An existing cycle able to protect `l` for `demand` slots: l on it or
/// straddling it, enough capacity, and l not already protected by it.
/// Straddling use wins over on-cycle, then higher backup availability.
std::optional<CycleUse> check_cycles(const DCycleSet& cs, const NetworkGraph& g, LinkId l,
                                     std::size_t demand);

/// A cycle to build or reshape for protecting `l`.
struct CyclePlan {
  enum class Kind { extend, new_straddling, new_on_cycle };
  Kind kind = Kind::new_on_cycle;
  std::optional<CycleId> extends;
  std::vector<VertexId> ring;
  std::vector<LinkId> links;
  std::size_t capacity_slots = 0;
  ProtectionKind protection = ProtectionKind::on_cycle;
};

/// Tries, in order: extending an existing cycle through an alternate path
/// p1 around `l`; a new cycle from p1 and a second path p2 disjoint from it
/// (l straddles); a new cycle l + p1 when l has spare slots (l on-cycle).
std::optional<CyclePlan> find_cycle_for(const NetworkGraph& g, LinkId l, std::size_t demand,
                                        const DCycleSet& cs, std::size_t k);

/// Reserves slots for `plan` and records the cycle in `cs`.
CycleUse apply_plan(NetworkGraph& g, DCycleSet& cs, const CyclePlan& plan, LinkId l,
                    std::size_t demand);

struct CycleProtection {
  CycleId cycle{};
  LinkId link{};
  ProtectionKind kind = ProtectionKind::on_cycle;
  double a_bp = 0.0;
};

struct DcycResult {
  std::vector<CycleProtection> protections;
  double a_pp = 0.0;
};

/// Protects the least available working links one at a time until the path
/// availability reaches a_th. If some link cannot be protected, every change
/// this call made to `g` and `cs` is undone and nullopt returned.
std::optional<DcycResult> dcyc(NetworkGraph& g, const LightpathRequest& lr, const WorkingPath& wp,
                               double a_pp_max, double a_th, DCycleSet& cs);

}  // namespace avrsa

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "avrsa/spectrum.hpp"
#include "avrsa/types.hpp"

namespace avrsa {

inline constexpr std::size_t kDefaultSlotCount = 320;
inline constexpr double kDefaultMttfHours = 8760.0;

class DuplicateLinkError : public TopologyError {
 public:
  using TopologyError::TopologyError;
};

class DisconnectedGraphError : public TopologyError {
 public:
  using TopologyError::TopologyError;
};

class UnknownLinkError : public TopologyError {
 public:
  using TopologyError::TopologyError;
};

/// An undirected fibre link. Availability is always derived from
/// (mttf_h, mttr_h); set it through NetworkGraph::set_reliability.
struct Link {
  LinkId id{};
  VertexId u{};
  VertexId v{};
  double length_km = 0.0;
  SpectrumBitmap bitmap;
  double availability = 1.0;
  double mttf_h = kDefaultMttfHours;
  double mttr_h = 0.0;
  // Set when the topology source pinned this link's availability; policies
  // leave such links alone.
  bool availability_pinned = false;

  VertexId other(VertexId x) const { return x == u ? v : u; }
  bool touches(VertexId x) const { return x == u || x == v; }
};

/// Graph of the optical network: vertices, links, and per-link spectrum and
/// availability state. Value type; copies are independent.
class NetworkGraph {
 public:
  NetworkGraph() = default;
  explicit NetworkGraph(std::size_t slot_count) : slot_count_(slot_count) {}

  VertexId add_vertex(std::string name);
  /// Throws DuplicateLinkError for a repeated pair, TopologyError for a loop.
  LinkId add_link(VertexId u, VertexId v, double length_km);

  void set_reliability(LinkId id, double mttf_h, double mttr_h);
  /// Sets availability directly; mttr is derived from the link's mttf.
  void set_availability(LinkId id, double availability);

  std::size_t slot_count() const { return slot_count_; }
  std::size_t vertex_count() const { return names_.size(); }
  /// Number of links currently present (removed links excluded).
  std::size_t link_count() const { return present_count_; }
  /// Size of the link id space, including removed ids.
  std::size_t link_capacity() const { return links_.size(); }

  const std::string& name(VertexId v) const;
  std::optional<VertexId> find_vertex(std::string_view name) const;
  std::optional<LinkId> find_link(VertexId a, VertexId b) const;
  std::vector<VertexId> vertices() const;
  std::vector<LinkId> link_ids() const;

  bool has_link(LinkId id) const;
  const Link& link(LinkId id) const;
  Link& link(LinkId id);
  /// Present links incident to v, ordered by the far vertex id.
  std::span<const LinkId> incident(VertexId v) const;
  std::size_t degree(VertexId v) const { return incident(v).size(); }

  void remove_link(LinkId id);
  bool is_connected() const;

 private:
  std::size_t slot_count_ = kDefaultSlotCount;
  std::vector<std::string> names_;
  std::vector<Link> links_;
  std::vector<bool> present_;
  std::vector<std::vector<LinkId>> adjacency_;
  std::size_t present_count_ = 0;
};

/// How link availabilities are assigned when a topology does not pin them.
/// MTTF is held fixed and MTTR varies, so a drawn availability A gives
/// MTTR = MTTF (1 - A) / A.
struct AvailabilityPolicy {
  enum class Kind { uniform, jitter };
  Kind kind = Kind::uniform;
  double target = 1.0;
  double mttf_h = kDefaultMttfHours;

  static AvailabilityPolicy uniform(double a) { return {Kind::uniform, a}; }
  static AvailabilityPolicy jitter(double a) { return {Kind::jitter, a}; }

  /// Half-width of the jitter interval: half the gap from `target` to the
  /// next nine, i.e. 0.45 (1 - target).
  double half_width() const { return 0.45 * (1.0 - target); }
};

/// Applies `policy` to every link without a pinned availability. Draws come
/// from a generator seeded with `seed`, in link id order.
void assign_availability(NetworkGraph& g, const AvailabilityPolicy& policy, std::uint64_t seed);

/// The 14-node, 22-link NSFNET with all slots free.
NetworkGraph build_nsfnet(std::size_t slot_count, const AvailabilityPolicy& policy,
                          std::uint64_t seed = 0);

/// Parses the line-based topology format:
///   node <name>
///   link <u> <v> <length_km> [availability]
/// with '#' starting a comment. Throws ParseError, DuplicateLinkError or
/// DisconnectedGraphError.
NetworkGraph load_topology(std::string_view text, std::size_t slot_count = kDefaultSlotCount);
NetworkGraph load_topology_file(const std::string& path, std::size_t slot_count = kDefaultSlotCount);

/// Serializes to the format read by load_topology, pinning every availability.
std::string format_topology(const NetworkGraph& g);

/// A copy of `g` without `links`. Throws UnknownLinkError for a link not in g.
NetworkGraph remove_links(const NetworkGraph& g, std::span<const LinkId> links);

}  // namespace avrsa

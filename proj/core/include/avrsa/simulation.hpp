#pragma once

#include <cstdint>
#include <map>
#include <queue>
#include <vector>

#include "avrsa/metrics.hpp"
#include "avrsa/provisioning.hpp"
#include "avrsa/topology.hpp"

namespace avrsa {

enum class LoadBasis { per_node, network };

struct Scenario {
  double load_erlang = 15.0;
  LoadBasis load_basis = LoadBasis::per_node;
  double mean_holding_s = 1.0;
  double b_max_gbps = 100.0;
  double slot_ghz = 12.5;
  double guard_ghz = 10.0;
  std::size_t k = 5;
  double a_th = 0.999;
  ProtectionMode mode = ProtectionMode::dsbpss;
  double avg_availability = 0.99;
  bool jitter = true;  // false: every link gets exactly avg_availability
  std::size_t n_requests = 100000;
  std::uint64_t seed = 1;
  // Re-verifies registries, cycles and slot accounting after every event.
  bool check_invariants = false;

  /// Total arrival rate; a per-node load is multiplied by the vertex count.
  double arrival_rate(std::size_t vertex_count) const;
  double warm_up_s() const { return 3.0 * mean_holding_s; }
  AvailabilityPolicy availability_policy() const;
};

/// Independent random streams derived from one scenario seed.
enum class Stream : std::uint64_t { traffic = 0, availability = 1 };
std::uint64_t stream_seed(std::uint64_t seed, Stream s);

/// Poisson arrivals with exponential holding times, (s, d) uniform over
/// ordered distinct vertex pairs, and integer rates uniform in [1, B] Gbps.
/// Fully determined by the scenario seed.
std::vector<LightpathRequest> generate_arrivals(const Scenario& sc, std::size_t vertex_count);

/// Discrete-event engine owning all mutable state of one run.
class Simulator {
 public:
  /// `g` must already carry the run's link availabilities.
  Simulator(NetworkGraph g, const Scenario& sc);

  /// Processes events until `n` more arrivals have been handled or the
  /// arrival stream ends. Departures due before the last handled arrival are
  /// processed too.
  void advance_arrivals(std::size_t n);
  /// Processes every remaining event.
  void run_to_end();
  /// Processes the remaining departures, dropping arrivals not yet handled.
  void drain();

  std::size_t arrivals_handled() const { return next_arrival_; }
  bool finished() const { return events_.empty(); }
  const NetworkGraph& graph() const { return g_; }
  const ProtectionState& protection() const { return ps_; }
  std::vector<Connection> live_connections() const;
  const MetricsReport& report() const { return report_; }

  /// True iff no slot is busy and no protection state remains.
  bool resources_free() const;
  /// Throws Error when busy slots differ from the sum of working and
  /// protection reservations, or a registry invariant is broken.
  void verify() const;

 private:
  struct Event {
    double time;
    std::uint64_t seq;
    bool arrival;
    std::uint64_t index;  // request index or connection id
    bool operator>(const Event& o) const {
      return time != o.time ? time > o.time : seq > o.seq;
    }
  };

  void push(double time, bool arrival, std::uint64_t index);
  void step();
  void advance_clock(double t);
  void on_arrival(std::size_t i);
  void on_departure(ConnectionId id);

  NetworkGraph g_;
  Scenario sc_;
  std::vector<LightpathRequest> requests_;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> events_;
  std::uint64_t seq_ = 0;
  std::size_t next_arrival_ = 0;
  ProtectionState ps_;
  std::map<ConnectionId, Connection> live_;
  MetricsReport report_;
  double now_ = 0.0;
  double window_begin_ = 0.0;
  double window_end_ = 0.0;
  std::size_t working_slots_ = 0;  // sum over live paths of hops x block length
};

/// Builds the run's graph from `topology` (availabilities drawn from the
/// scenario's availability stream for unpinned links), runs every event,
/// and checks that all resources are back to free.
MetricsReport run(const Scenario& sc, const NetworkGraph& topology);

}  // namespace avrsa

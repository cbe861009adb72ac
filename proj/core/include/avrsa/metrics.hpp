#pragma once

#include <cstdint>
#include <optional>

namespace avrsa {

/// Counters for the measured part of one run (arrivals after warm-up).
struct MetricsReport {
  std::uint64_t blocked = 0;
  std::uint64_t arrived = 0;
  std::uint64_t slots_blocked = 0;
  std::uint64_t slots_requested = 0;
  double slot_time_used = 0.0;        // slot-seconds, working and protection
  double slot_time_capacity = 0.0;    // all slots of all links over the window
  double protection_slot_time = 0.0;  // shared slots counted once
  std::uint64_t protected_count = 0;
  std::uint64_t needing_protection = 0;

  MetricsReport& operator+=(const MetricsReport& o);
  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

/// blocked / arrived. Throws std::domain_error when nothing arrived.
double blocking_probability(const MetricsReport& r);
/// slots_blocked / slots_requested. Throws std::domain_error on zero demand.
double bandwidth_blocking_probability(const MetricsReport& r);
/// Time-averaged busy fraction of all slots; 0 for an empty window.
double spectrum_utilization(const MetricsReport& r);
/// Slot-seconds held for protection.
double capacity_used_for_protection(const MetricsReport& r);
/// Protection slot-seconds as a fraction of the window's slot capacity.
double protection_capacity_share(const MetricsReport& r);
/// protected_count / needing_protection; nullopt when nothing needed it.
std::optional<double> restorability(const MetricsReport& r);

}  // namespace avrsa

#include "avrsa/metrics.hpp"

#include <stdexcept>

namespace avrsa {

MetricsReport& MetricsReport::operator+=(const MetricsReport& o) {
  blocked += o.blocked;
  arrived += o.arrived;
  slots_blocked += o.slots_blocked;
  slots_requested += o.slots_requested;
  slot_time_used += o.slot_time_used;
  slot_time_capacity += o.slot_time_capacity;
  protection_slot_time += o.protection_slot_time;
  protected_count += o.protected_count;
  needing_protection += o.needing_protection;
  return *this;
}

double blocking_probability(const MetricsReport& r) {
  if (r.arrived == 0) throw std::domain_error("blocking probability: no arrivals");
  return static_cast<double>(r.blocked) / static_cast<double>(r.arrived);
}

double bandwidth_blocking_probability(const MetricsReport& r) {
  if (r.slots_requested == 0) throw std::domain_error("bandwidth blocking: no demand");
  return static_cast<double>(r.slots_blocked) / static_cast<double>(r.slots_requested);
}

double spectrum_utilization(const MetricsReport& r) {
  if (r.slot_time_capacity <= 0.0) return 0.0;
  return r.slot_time_used / r.slot_time_capacity;
}

double capacity_used_for_protection(const MetricsReport& r) { return r.protection_slot_time; }

double protection_capacity_share(const MetricsReport& r) {
  if (r.slot_time_capacity <= 0.0) return 0.0;
  return r.protection_slot_time / r.slot_time_capacity;
}

std::optional<double> restorability(const MetricsReport& r) {
  if (r.needing_protection == 0) return std::nullopt;
  return static_cast<double>(r.protected_count) / static_cast<double>(r.needing_protection);
}

}  // namespace avrsa

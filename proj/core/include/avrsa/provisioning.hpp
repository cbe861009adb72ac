#pragma once

#include <string_view>
#include <variant>
#include <vector>

#include "avrsa/availability.hpp"
#include "avrsa/dcycle.hpp"
#include "avrsa/dsbpss.hpp"
#include "avrsa/routing.hpp"

namespace avrsa {

enum class ProtectionMode { none, dsbpss, dcycles };

std::string_view to_string(ProtectionMode m);
/// Accepts "none", "dsbpss" and "dcycles". Throws std::invalid_argument.
ProtectionMode parse_mode(std::string_view text);

/// Protection bookkeeping shared by every connection of one run.
struct ProtectionState {
  BackupRegistry backups;
  DCycleSet cycles;

  std::size_t reserved_slots() const { return backups.reserved_slots() + cycles.reserved_slots(); }
  bool empty() const { return backups.empty() && cycles.empty(); }
  void verify(const NetworkGraph& g) const;
};

struct Connection {
  WorkingPath working;
  AvailabilityReport report;
  std::vector<BackupPath> backups;               // DSBPSS mode
  std::vector<CycleProtection> cycle_protections;  // D-cycles mode
};

struct Blocked {};

using ProvisionResult = std::variant<Connection, Blocked>;

/// Routes `lr` on the most available candidate path, assigns first-fit
/// working slots, and protects the path with `mode` when its availability is
/// below a_th. The working path stays up whether or not protection reaches
/// the threshold. Throws std::invalid_argument unless 0 < a_th <= 1.
ProvisionResult rsacs_with_protection(NetworkGraph& g, const LightpathRequest& lr, ConnectionId id,
                                      double a_th, ProtectionMode mode, ProtectionState& ps);

/// Tears down the working path and any protection it holds; cycles left
/// protecting nothing are dismantled.
void release_connection(NetworkGraph& g, const Connection& c, ProtectionState& ps);

}  // namespace avrsa

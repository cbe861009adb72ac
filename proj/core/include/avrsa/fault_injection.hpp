#pragma once

#include <span>
#include <vector>

#include "avrsa/provisioning.hpp"

namespace avrsa {

/// Outcome of failing one link while every other link stays up.
struct LinkFailureOutcome {
  LinkId link{};
  std::size_t affected = 0;    // live working paths crossing the link
  std::size_t restored = 0;    // of those, with a reserved recovery route
  std::size_t unrestored = 0;
  std::size_t conflicts = 0;   // backup slots claimed by two affected paths
  std::size_t violations = 0;  // threshold-protected paths left without recovery
};

struct RestorationReport {
  std::vector<LinkFailureOutcome> per_link;  // link id order
  std::size_t total_conflicts = 0;
  std::size_t total_violations = 0;
};

/// Fails each link of `g` in turn and checks the reservations held for the
/// `live` connections. A DSBPSS path counts as restored when one of its
/// backups avoids the failed link and its block is still busy on every
/// backup link; a threshold-protected path must always be restored. A link
/// protected by a D-cycle counts as restored when the cycle still relates to
/// the link and the demand routed onto the cycle by this failure fits its
/// capacity; a violation is a protected link that is not restored.
RestorationReport inject_single_failures(const NetworkGraph& g, const ProtectionState& ps,
                                         std::span<const Connection> live, ProtectionMode mode);

}  // namespace avrsa

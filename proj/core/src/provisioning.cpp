#include "avrsa/provisioning.hpp"

#include <stdexcept>
#include <string>

namespace avrsa {

std::string_view to_string(ProtectionMode m) {
  switch (m) {
    case ProtectionMode::none:
      return "none";
    case ProtectionMode::dsbpss:
      return "dsbpss";
    case ProtectionMode::dcycles:
      return "dcycles";
  }
  return "?";
}

ProtectionMode parse_mode(std::string_view text) {
  if (text == "none") return ProtectionMode::none;
  if (text == "dsbpss") return ProtectionMode::dsbpss;
  if (text == "dcycles") return ProtectionMode::dcycles;
  throw std::invalid_argument("unknown protection mode '" + std::string(text) + "'");
}

void ProtectionState::verify(const NetworkGraph& g) const {
  backups.verify(g);
  cycles.verify(g);
}

ProvisionResult rsacs_with_protection(NetworkGraph& g, const LightpathRequest& lr, ConnectionId id,
                                      double a_th, ProtectionMode mode, ProtectionState& ps) {
  if (!(a_th > 0.0 && a_th <= 1.0)) throw std::invalid_argument("a_th must lie in (0, 1]");

  const auto all_paths = candidate_paths(g, lr);
  if (all_paths.empty()) return Blocked{};
  const CandidatePath& best = select_best(all_paths);

  Connection c;
  c.working.id = id;
  c.working.vertices = best.vertices;
  c.working.links = best.links;
  c.working.block = first_fit(best.bitmap, lr.slots_needed);
  c.working.availability = best.availability;
  allocate(g, c.working.links, c.working.block);

  c.report.a_p_max = best.availability;
  c.report.a_pp_max = best.availability;
  c.report.a_th = a_th;
  if (best.availability >= a_th) return c;

  c.report.protection_needed = true;
  switch (mode) {
    case ProtectionMode::none:
      break;
    case ProtectionMode::dsbpss: {
      DsbpssResult r = dsbpss(g, lr, c.working, ps.backups, best.availability, a_th);
      if (!r.backups.empty()) {
        c.backups = std::move(r.backups);
        c.report.a_pp_max = r.a_pp;
      }
      break;
    }
    case ProtectionMode::dcycles: {
      if (auto r = dcyc(g, lr, c.working, best.availability, a_th, ps.cycles)) {
        c.cycle_protections = std::move(r->protections);
        c.report.a_pp_max = r->a_pp;
      }
      break;
    }
  }
  c.report.protected_ = c.report.a_pp_max >= a_th;
  return c;
}

void release_connection(NetworkGraph& g, const Connection& c, ProtectionState& ps) {
  release(g, c.working.links, c.working.block);
  if (ps.backups.contains(c.working.id)) release_backups(g, c.working.id, ps.backups);
  if (!c.cycle_protections.empty()) {
    ps.cycles.release_protections(c.working.id);
    ps.cycles.dismantle_unused(g);
  }
}

}  // namespace avrsa

#include "avrsa/routing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace avrsa {

std::vector<CandidatePath> candidate_paths(const NetworkGraph& g, const LightpathRequest& lr) {
  std::vector<CandidatePath> found;
  if (lr.s == lr.d || lr.k == 0 || lr.slots_needed == 0) return found;
  if (index(lr.s) >= g.vertex_count() || index(lr.d) >= g.vertex_count()) {
    throw TopologyError("request endpoint is not a vertex");
  }
  if (lr.slots_needed > g.slot_count()) return found;

  std::vector<CandidatePath> frontier(1);
  frontier[0].vertices.push_back(lr.s);
  frontier[0].bitmap = SpectrumBitmap(g.slot_count());

  while (!frontier.empty()) {
    std::vector<CandidatePath> next;
    for (const auto& partial : frontier) {
      const VertexId u = partial.vertices.back();
      for (LinkId id : g.incident(u)) {
        const Link& link = g.link(id);
        const VertexId v = link.other(u);
        if (std::find(partial.vertices.begin(), partial.vertices.end(), v) !=
            partial.vertices.end()) {
          continue;
        }
        SpectrumBitmap bits = intersect(partial.bitmap, link.bitmap);
        if (!is_feasible(bits, lr.slots_needed)) continue;

        CandidatePath ext;
        ext.vertices.reserve(partial.vertices.size() + 1);
        ext.vertices = partial.vertices;
        ext.vertices.push_back(v);
        ext.links.reserve(partial.links.size() + 1);
        ext.links = partial.links;
        ext.links.push_back(id);
        ext.bitmap = std::move(bits);
        ext.availability = partial.availability * link.availability;

        if (v == lr.d) {
          found.push_back(std::move(ext));
          if (found.size() == lr.k) return found;
        } else {
          next.push_back(std::move(ext));
        }
      }
    }
    frontier = std::move(next);
  }
  return found;
}

namespace {

bool availability_tied(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

bool better(const CandidatePath& a, const CandidatePath& b) {
  if (!availability_tied(a.availability, b.availability)) return a.availability > b.availability;
  if (a.hops() != b.hops()) return a.hops() < b.hops();
  return std::lexicographical_compare(
      a.vertices.begin(), a.vertices.end(), b.vertices.begin(), b.vertices.end(),
      [](VertexId x, VertexId y) { return index(x) < index(y); });
}

}  // namespace

std::size_t best_index(const std::vector<CandidatePath>& paths) {
  if (paths.empty()) throw std::invalid_argument("select_best: no candidate paths");
  std::size_t best = 0;
  for (std::size_t i = 1; i < paths.size(); ++i) {
    if (better(paths[i], paths[best])) best = i;
  }
  return best;
}

const CandidatePath& select_best(const std::vector<CandidatePath>& paths) {
  return paths[best_index(paths)];
}

}  // namespace avrsa

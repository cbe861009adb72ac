#pragma once

#include <cstddef>
#include <vector>

#include "avrsa/spectrum.hpp"
#include "avrsa/topology.hpp"
#include "avrsa/types.hpp"

namespace avrsa {

/// A request for `slots_needed` contiguous, continuous slots from s to d.
/// slots_needed already includes the guard band.
struct LightpathRequest {
  VertexId s{};
  VertexId d{};
  std::size_t slots_needed = 1;
  std::size_t k = 5;  // candidate path budget
  double arrival_s = 0.0;
  double holding_s = 0.0;
};

/// A loop-free route with its end-to-end free-slot map and availability.
struct CandidatePath {
  std::vector<VertexId> vertices;
  std::vector<LinkId> links;
  SpectrumBitmap bitmap;
  double availability = 1.0;

  std::size_t hops() const { return links.size(); }
};

/// A provisioned working path and the block it occupies on every link.
struct WorkingPath {
  ConnectionId id{};
  std::vector<VertexId> vertices;
  std::vector<LinkId> links;
  SlotBlock block;
  double availability = 1.0;
};

/// Breadth-first enumeration of loop-free s-d paths whose running bitmap
/// intersection still holds `slots_needed` contiguous free slots. Paths come
/// out in non-decreasing hop order and the search stops once `k` are found.
/// Returns an empty list when nothing fits or s == d.
std::vector<CandidatePath> candidate_paths(const NetworkGraph& g, const LightpathRequest& lr);

/// Highest availability; ties go to fewer hops, then the lexicographically
/// smaller vertex sequence. Throws std::invalid_argument on an empty list.
const CandidatePath& select_best(const std::vector<CandidatePath>& paths);

/// Index form of select_best.
std::size_t best_index(const std::vector<CandidatePath>& paths);

}  // namespace avrsa

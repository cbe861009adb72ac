#pragma once

#include <initializer_list>
#include <string>
#include <tuple>

#include "avrsa/topology.hpp"

namespace avrsa::testing {

struct Edge {
  const char* u;
  const char* v;
  double availability = 1.0;
};

// Vertices are created in first-seen order; every link is 100 km.
inline NetworkGraph graph_of(std::initializer_list<Edge> edges, std::size_t slots = 16) {
  NetworkGraph g(slots);
  auto vertex = [&](const char* name) {
    if (auto v = g.find_vertex(name)) return *v;
    return g.add_vertex(name);
  };
  for (const auto& e : edges) {
    const LinkId id = g.add_link(vertex(e.u), vertex(e.v), 100.0);
    g.set_availability(id, e.availability);
  }
  return g;
}

inline VertexId vx(const NetworkGraph& g, const char* name) { return *g.find_vertex(name); }

inline LinkId lk(const NetworkGraph& g, const char* a, const char* b) {
  return *g.find_link(vx(g, a), vx(g, b));
}

}  // namespace avrsa::testing

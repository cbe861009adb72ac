#include "avrsa/topology.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <random>
#include <sstream>

#include "avrsa/availability.hpp"

namespace avrsa {

VertexId NetworkGraph::add_vertex(std::string name) {
  if (find_vertex(name)) throw TopologyError("duplicate node '" + name + "'");
  names_.push_back(std::move(name));
  adjacency_.emplace_back();
  return vertex_id(names_.size() - 1);
}

LinkId NetworkGraph::add_link(VertexId u, VertexId v, double length_km) {
  if (index(u) >= names_.size() || index(v) >= names_.size()) {
    throw TopologyError("link endpoint is not a vertex");
  }
  if (u == v) throw TopologyError("self-loop on '" + names_[index(u)] + "'");
  if (find_link(u, v)) {
    throw DuplicateLinkError("duplicate link " + names_[index(u)] + " " + names_[index(v)]);
  }
  if (!(length_km > 0.0)) throw TopologyError("link length must be positive");

  const LinkId id = link_id(links_.size());
  Link l;
  l.id = id;
  l.u = u;
  l.v = v;
  l.length_km = length_km;
  l.bitmap = SpectrumBitmap(slot_count_);
  links_.push_back(std::move(l));
  present_.push_back(true);
  ++present_count_;

  for (VertexId end : {u, v}) {
    auto& adj = adjacency_[index(end)];
    adj.push_back(id);
    std::sort(adj.begin(), adj.end(), [&](LinkId a, LinkId b) {
      return index(links_[index(a)].other(end)) < index(links_[index(b)].other(end));
    });
  }
  return id;
}

void NetworkGraph::set_reliability(LinkId id, double mttf_h, double mttr_h) {
  Link& l = link(id);
  l.mttf_h = mttf_h;
  l.mttr_h = mttr_h;
  l.availability = link_availability(mttf_h, mttr_h);
}

void NetworkGraph::set_availability(LinkId id, double availability) {
  if (!(availability > 0.0) || availability > 1.0) {
    throw TopologyError("availability must lie in (0, 1]");
  }
  const double mttf = link(id).mttf_h;
  set_reliability(id, mttf, mttf * (1.0 - availability) / availability);
}

const std::string& NetworkGraph::name(VertexId v) const {
  if (index(v) >= names_.size()) throw TopologyError("unknown vertex id");
  return names_[index(v)];
}

std::optional<VertexId> NetworkGraph::find_vertex(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return vertex_id(i);
  }
  return std::nullopt;
}

std::optional<LinkId> NetworkGraph::find_link(VertexId a, VertexId b) const {
  if (index(a) >= adjacency_.size()) return std::nullopt;
  for (auto id : adjacency_[index(a)]) {
    if (links_[index(id)].other(a) == b) return id;
  }
  return std::nullopt;
}

std::vector<VertexId> NetworkGraph::vertices() const {
  std::vector<VertexId> out;
  out.reserve(names_.size());
  for (std::size_t i = 0; i < names_.size(); ++i) out.push_back(vertex_id(i));
  return out;
}

std::vector<LinkId> NetworkGraph::link_ids() const {
  std::vector<LinkId> out;
  out.reserve(present_count_);
  for (std::size_t i = 0; i < links_.size(); ++i) {
    if (present_[i]) out.push_back(link_id(i));
  }
  return out;
}

bool NetworkGraph::has_link(LinkId id) const {
  return index(id) < links_.size() && present_[index(id)];
}

const Link& NetworkGraph::link(LinkId id) const {
  if (!has_link(id)) throw UnknownLinkError("unknown link " + std::to_string(index(id)));
  return links_[index(id)];
}

Link& NetworkGraph::link(LinkId id) {
  if (!has_link(id)) throw UnknownLinkError("unknown link " + std::to_string(index(id)));
  return links_[index(id)];
}

std::span<const LinkId> NetworkGraph::incident(VertexId v) const {
  if (index(v) >= adjacency_.size()) throw TopologyError("unknown vertex id");
  return adjacency_[index(v)];
}

void NetworkGraph::remove_link(LinkId id) {
  const Link& l = link(id);
  for (VertexId end : {l.u, l.v}) {
    auto& adj = adjacency_[index(end)];
    adj.erase(std::remove(adj.begin(), adj.end(), id), adj.end());
  }
  present_[index(id)] = false;
  --present_count_;
}

bool NetworkGraph::is_connected() const {
  if (names_.empty()) return true;
  std::vector<bool> seen(names_.size(), false);
  std::vector<VertexId> stack{VertexId{0}};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    VertexId x = stack.back();
    stack.pop_back();
    for (auto id : adjacency_[index(x)]) {
      VertexId y = links_[index(id)].other(x);
      if (!seen[index(y)]) {
        seen[index(y)] = true;
        ++reached;
        stack.push_back(y);
      }
    }
  }
  return reached == names_.size();
}

void assign_availability(NetworkGraph& g, const AvailabilityPolicy& policy, std::uint64_t seed) {
  if (!(policy.target > 0.0) || policy.target > 1.0) {
    throw TopologyError("target availability must lie in (0, 1]");
  }
  std::mt19937_64 rng(seed);
  const double lo = policy.target - policy.half_width();
  const double hi = std::min(policy.target + policy.half_width(), 1.0);
  std::uniform_real_distribution<double> draw(lo, hi);
  for (auto id : g.link_ids()) {
    Link& l = g.link(id);
    if (l.availability_pinned) continue;
    l.mttf_h = policy.mttf_h;
    double a = policy.target;
    if (policy.kind == AvailabilityPolicy::Kind::jitter && hi > lo) a = draw(rng);
    g.set_availability(id, a);
  }
}

namespace {

struct NsfnetEdge {
  int u;
  int v;
  double km;
};

// Nodes are numbered 1..14. The 7-10 link joins the two degree-2 nodes of the
// classic 21-link layout, giving 22 links and mean nodal degree 44/14.
constexpr NsfnetEdge kNsfnetEdges[] = {
    {1, 2, 1100},  {1, 3, 1600},  {1, 8, 2800},  {2, 3, 600},   {2, 4, 1000}, {3, 6, 2000},
    {4, 5, 600},   {4, 11, 2400}, {5, 6, 1100},  {5, 7, 800},   {6, 10, 1200}, {6, 14, 2000},
    {7, 8, 700},   {7, 10, 1300}, {8, 9, 700},   {9, 10, 900},  {9, 12, 500}, {9, 13, 500},
    {11, 12, 800}, {11, 13, 800}, {12, 14, 300}, {13, 14, 300},
};

}  // namespace

NetworkGraph build_nsfnet(std::size_t slot_count, const AvailabilityPolicy& policy,
                          std::uint64_t seed) {
  if (slot_count == 0) throw TopologyError("slot count must be positive");
  NetworkGraph g(slot_count);
  for (int i = 1; i <= 14; ++i) g.add_vertex(std::to_string(i));
  for (const auto& e : kNsfnetEdges) {
    g.add_link(vertex_id(e.u - 1), vertex_id(e.v - 1), e.km);
  }
  assign_availability(g, policy, seed);
  return g;
}

namespace {

double parse_number(std::string_view tok, std::size_t line, const char* what) {
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(line, std::string("bad ") + what + " '" + std::string(tok) + "'");
  }
  return x;
}

}  // namespace

NetworkGraph load_topology(std::string_view text, std::size_t slot_count) {
  NetworkGraph g(slot_count);
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream fields(raw);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    if (tok[0] == "node") {
      if (tok.size() != 2) throw ParseError(line_no, "expected 'node <name>'");
      if (g.find_vertex(tok[1])) throw ParseError(line_no, "duplicate node '" + tok[1] + "'");
      g.add_vertex(tok[1]);
    } else if (tok[0] == "link") {
      if (tok.size() != 4 && tok.size() != 5) {
        throw ParseError(line_no, "expected 'link <u> <v> <length_km> [availability]'");
      }
      auto u = g.find_vertex(tok[1]);
      auto v = g.find_vertex(tok[2]);
      if (!u) throw ParseError(line_no, "unknown node '" + tok[1] + "'");
      if (!v) throw ParseError(line_no, "unknown node '" + tok[2] + "'");
      const double km = parse_number(tok[3], line_no, "length");
      if (!(km > 0.0)) throw ParseError(line_no, "link length must be positive");
      if (*u == *v) throw ParseError(line_no, "self-loop on '" + tok[1] + "'");
      if (g.find_link(*u, *v)) {
        throw DuplicateLinkError("line " + std::to_string(line_no) + ": duplicate link " +
                                 tok[1] + " " + tok[2]);
      }
      LinkId id = g.add_link(*u, *v, km);
      if (tok.size() == 5) {
        const double a = parse_number(tok[4], line_no, "availability");
        if (!(a > 0.0) || a > 1.0) throw ParseError(line_no, "availability must lie in (0, 1]");
        g.set_availability(id, a);
        g.link(id).availability_pinned = true;
      }
    } else {
      throw ParseError(line_no, "unknown directive '" + tok[0] + "'");
    }
  }
  if (!g.is_connected()) throw DisconnectedGraphError("topology is not connected");
  return g;
}

NetworkGraph load_topology_file(const std::string& path, std::size_t slot_count) {
  std::ifstream in(path);
  if (!in) throw TopologyError("cannot open topology file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_topology(buf.str(), slot_count);
}

std::string format_topology(const NetworkGraph& g) {
  std::ostringstream out;
  out.precision(17);
  for (auto v : g.vertices()) out << "node " << g.name(v) << "\n";
  for (auto id : g.link_ids()) {
    const Link& l = g.link(id);
    out << "link " << g.name(l.u) << " " << g.name(l.v) << " " << l.length_km << " "
        << l.availability << "\n";
  }
  return out.str();
}

NetworkGraph remove_links(const NetworkGraph& g, std::span<const LinkId> links) {
  for (auto id : links) {
    if (!g.has_link(id)) throw UnknownLinkError("unknown link " + std::to_string(index(id)));
  }
  NetworkGraph out = g;
  for (auto id : links) {
    if (out.has_link(id)) out.remove_link(id);
  }
  return out;
}

}  // namespace avrsa

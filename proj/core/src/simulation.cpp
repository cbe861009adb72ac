#include "avrsa/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace avrsa {

double Scenario::arrival_rate(std::size_t vertex_count) const {
  const double mu = 1.0 / mean_holding_s;
  const double rho =
      load_basis == LoadBasis::per_node ? load_erlang * static_cast<double>(vertex_count) : load_erlang;
  return rho * mu;
}

AvailabilityPolicy Scenario::availability_policy() const {
  return jitter ? AvailabilityPolicy::jitter(avg_availability)
                : AvailabilityPolicy::uniform(avg_availability);
}

std::uint64_t stream_seed(std::uint64_t seed, Stream s) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(s)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

std::vector<LightpathRequest> generate_arrivals(const Scenario& sc, std::size_t vertex_count) {
  if (vertex_count < 2) throw std::invalid_argument("need at least two vertices for traffic");
  if (!(sc.mean_holding_s > 0.0) || !(sc.load_erlang > 0.0)) {
    throw std::invalid_argument("load and holding time must be positive");
  }
  if (sc.b_max_gbps < 1.0) throw std::invalid_argument("maximum rate must be at least 1 Gbps");

  std::mt19937_64 rng(stream_seed(sc.seed, Stream::traffic));
  std::exponential_distribution<double> gap(sc.arrival_rate(vertex_count));
  std::exponential_distribution<double> hold(1.0 / sc.mean_holding_s);
  std::uniform_int_distribution<std::uint32_t> src(0, static_cast<std::uint32_t>(vertex_count - 1));
  std::uniform_int_distribution<std::uint32_t> dst(0, static_cast<std::uint32_t>(vertex_count - 2));
  std::uniform_int_distribution<int> rate(1, static_cast<int>(std::floor(sc.b_max_gbps)));

  std::vector<LightpathRequest> out;
  out.reserve(sc.n_requests);
  double t = 0.0;
  for (std::size_t i = 0; i < sc.n_requests; ++i) {
    t += gap(rng);
    LightpathRequest lr;
    const std::uint32_t s = src(rng);
    std::uint32_t d = dst(rng);
    if (d >= s) ++d;
    lr.s = VertexId{s};
    lr.d = VertexId{d};
    lr.slots_needed = demand_to_slots(rate(rng), sc.slot_ghz, sc.guard_ghz);
    lr.k = sc.k;
    lr.arrival_s = t;
    lr.holding_s = hold(rng);
    out.push_back(lr);
  }
  return out;
}

Simulator::Simulator(NetworkGraph g, const Scenario& sc)
    : g_(std::move(g)), sc_(sc), requests_(generate_arrivals(sc, g_.vertex_count())) {
  window_begin_ = sc_.warm_up_s();
  window_end_ = requests_.empty() ? 0.0 : requests_.back().arrival_s;
  report_.slot_time_capacity = static_cast<double>(g_.link_count() * g_.slot_count()) *
                               std::max(0.0, window_end_ - window_begin_);
  if (!requests_.empty()) push(requests_.front().arrival_s, true, 0);
}

void Simulator::push(double time, bool arrival, std::uint64_t index) {
  events_.push(Event{time, seq_++, arrival, index});
}

void Simulator::advance_clock(double t) {
  const double lo = std::max(now_, window_begin_);
  const double hi = std::min(t, window_end_);
  if (hi > lo) {
    const double protection = static_cast<double>(ps_.reserved_slots());
    report_.slot_time_used += (static_cast<double>(working_slots_) + protection) * (hi - lo);
    report_.protection_slot_time += protection * (hi - lo);
  }
  now_ = t;
}

void Simulator::step() {
  const Event e = events_.top();
  events_.pop();
  advance_clock(e.time);
  if (e.arrival) {
    on_arrival(static_cast<std::size_t>(e.index));
  } else {
    on_departure(ConnectionId{e.index});
  }
  if (sc_.check_invariants) verify();
}

void Simulator::on_arrival(std::size_t i) {
  const LightpathRequest& lr = requests_[i];
  next_arrival_ = i + 1;
  if (next_arrival_ < requests_.size()) push(requests_[next_arrival_].arrival_s, true, next_arrival_);

  const bool measured = lr.arrival_s >= window_begin_;
  if (measured) {
    ++report_.arrived;
    report_.slots_requested += lr.slots_needed;
  }
  const ConnectionId id{static_cast<std::uint64_t>(i)};
  ProvisionResult r = rsacs_with_protection(g_, lr, id, sc_.a_th, sc_.mode, ps_);
  if (std::holds_alternative<Blocked>(r)) {
    if (measured) {
      ++report_.blocked;
      report_.slots_blocked += lr.slots_needed;
    }
    return;
  }
  Connection& c = std::get<Connection>(r);
  if (measured && c.report.protection_needed) {
    ++report_.needing_protection;
    if (c.report.protected_) ++report_.protected_count;
  }
  working_slots_ += c.working.links.size() * c.working.block.len;
  push(lr.arrival_s + lr.holding_s, false, value(id));
  live_.emplace(id, std::move(c));
}

void Simulator::on_departure(ConnectionId id) {
  auto it = live_.find(id);
  if (it == live_.end()) throw Error("departure of unknown connection " + std::to_string(value(id)));
  release_connection(g_, it->second, ps_);
  working_slots_ -= it->second.working.links.size() * it->second.working.block.len;
  live_.erase(it);
}

void Simulator::advance_arrivals(std::size_t n) {
  const std::size_t target = std::min(requests_.size(), next_arrival_ + n);
  while (next_arrival_ < target && !events_.empty()) step();
}

void Simulator::run_to_end() {
  while (!events_.empty()) step();
}

void Simulator::drain() {
  std::priority_queue<Event, std::vector<Event>, std::greater<>> departures;
  while (!events_.empty()) {
    if (!events_.top().arrival) departures.push(events_.top());
    events_.pop();
  }
  events_ = std::move(departures);
  run_to_end();
}

std::vector<Connection> Simulator::live_connections() const {
  std::vector<Connection> out;
  out.reserve(live_.size());
  for (const auto& [id, c] : live_) out.push_back(c);
  return out;
}

bool Simulator::resources_free() const {
  if (!live_.empty() || !ps_.empty()) return false;
  for (LinkId id : g_.link_ids()) {
    if (g_.link(id).bitmap.count_busy() != 0) return false;
  }
  return true;
}

void Simulator::verify() const {
  ps_.verify(g_);
  std::size_t busy = 0;
  for (LinkId id : g_.link_ids()) busy += g_.link(id).bitmap.count_busy();
  const std::size_t expected = working_slots_ + ps_.reserved_slots();
  if (busy != expected) {
    throw Error("slot accounting: " + std::to_string(busy) + " busy, " + std::to_string(expected) +
                " reserved");
  }
}

MetricsReport run(const Scenario& sc, const NetworkGraph& topology) {
  NetworkGraph g = topology;
  assign_availability(g, sc.availability_policy(), stream_seed(sc.seed, Stream::availability));
  Simulator sim(std::move(g), sc);
  sim.run_to_end();
  if (!sim.resources_free()) throw Error("resources still held after the last departure");
  return sim.report();
}

}  // namespace avrsa

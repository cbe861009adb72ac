#include "avrsa/availability.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace avrsa {

int structure_series(std::span<const std::uint8_t> x) {
  if (x.empty()) throw std::invalid_argument("structure_series: empty state vector");
  int up = 1;
  for (auto xi : x) {
    if (xi > 1) throw std::invalid_argument("state indicators must be 0 or 1");
    up *= xi;
  }
  return up;
}

double link_availability(double mttf_h, double mttr_h) {
  if (!(mttf_h > 0.0) || mttr_h < 0.0) {
    throw std::invalid_argument("link_availability: need mttf > 0 and mttr >= 0");
  }
  return mttf_h / (mttf_h + mttr_h);
}

double series_availability(std::span<const double> links) {
  double a = 1.0;
  for (double x : links) a *= x;
  return a;
}

double parallel_availability(std::span<const double> branches) {
  if (branches.empty()) throw std::invalid_argument("parallel_availability: no branches");
  double down = 1.0;
  for (double x : branches) down *= 1.0 - x;
  return 1.0 - down;
}

double series_parallel_availability(std::span<const ProtectedLink> protected_links,
                                    std::span<const double> unprotected) {
  double a = series_availability(unprotected);
  for (const auto& p : protected_links) a *= 1.0 - (1.0 - p.link) * (1.0 - p.backup);
  return a;
}

double ava_dsbpss_update(double a_pp, double a_bp) {
  return 1.0 - (1.0 - a_pp) * (1.0 - a_bp);
}

DcycUpdate ava_dcyc_update(double a_pp, double a_l, double a_bp) {
  if (a_l == 0.0) throw std::domain_error("ava_dcyc_update: link availability is zero");
  const double a_pl = 1.0 - (1.0 - a_l) * (1.0 - a_bp);
  return {a_pp * a_pl / a_l, a_pl};
}

ReliabilityBlock ReliabilityBlock::component(std::size_t idx) {
  ReliabilityBlock b;
  b.kind_ = Kind::component;
  b.index_ = idx;
  return b;
}

ReliabilityBlock ReliabilityBlock::series(std::vector<ReliabilityBlock> parts) {
  ReliabilityBlock b;
  b.kind_ = Kind::series;
  b.parts_ = std::move(parts);
  return b;
}

ReliabilityBlock ReliabilityBlock::parallel(std::vector<ReliabilityBlock> parts) {
  if (parts.empty()) throw std::invalid_argument("parallel block needs at least one branch");
  ReliabilityBlock b;
  b.kind_ = Kind::parallel;
  b.parts_ = std::move(parts);
  return b;
}

bool ReliabilityBlock::works(std::span<const std::uint8_t> state) const {
  switch (kind_) {
    case Kind::component:
      return state[index_] != 0;
    case Kind::series:
      for (const auto& p : parts_) {
        if (!p.works(state)) return false;
      }
      return true;
    case Kind::parallel:
      for (const auto& p : parts_) {
        if (p.works(state)) return true;
      }
      return false;
  }
  return false;
}

MonteCarloEstimate monte_carlo_availability(const ReliabilitySystem& system,
                                            std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("monte_carlo_availability: zero samples");
  std::mt19937_64 rng(seed);
  // Component i is up when a raw 64-bit draw falls below A_i * 2^64.
  const std::size_t n_comp = system.availability.size();
  std::vector<std::uint64_t> below(n_comp);
  std::vector<std::uint8_t> always(n_comp);
  for (std::size_t i = 0; i < n_comp; ++i) {
    const double a = system.availability[i];
    always[i] = a >= 1.0;
    below[i] = a <= 0.0 || a >= 1.0 ? 0 : static_cast<std::uint64_t>(std::ldexp(a, 64));
  }
  StateVector state(n_comp);
  std::uint64_t up = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (std::size_t i = 0; i < n_comp; ++i) {
      state[i] = always[i] || rng() < below[i] ? 1 : 0;
    }
    if (system.structure.works(state)) ++up;
  }
  const double n = static_cast<double>(samples);
  const double p = static_cast<double>(up) / n;
  return {p, std::sqrt(p * (1.0 - p) / n)};
}

}  // namespace avrsa

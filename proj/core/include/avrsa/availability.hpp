#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace avrsa {

/// Up/down indicator per link of a path; 1 means working.
using StateVector = std::vector<std::uint8_t>;

/// Series structure function: 1 iff every component works.
int structure_series(std::span<const std::uint8_t> x);

/// Steady-state availability of a repairable link, MTTF / (MTTF + MTTR).
double link_availability(double mttf_h, double mttr_h);

/// Product of the availabilities. An empty list yields 1.
double series_availability(std::span<const double> links);

/// 1 - prod(1 - A_i) over independent branches. Throws on an empty list.
double parallel_availability(std::span<const double> branches);

/// A working-path link together with the availability of its protection route.
struct ProtectedLink {
  double link;
  double backup;
};

/// prod over protected of [1 - (1 - A_e)(1 - A'_e)] times prod over the rest.
double series_parallel_availability(std::span<const ProtectedLink> protected_links,
                                    std::span<const double> unprotected);

/// Path availability after adding one more independent backup path.
double ava_dsbpss_update(double a_pp, double a_bp);

struct DcycUpdate {
  double a_pp;  // updated path availability
  double a_pl;  // availability of the protected link
};

/// Replaces link factor a_l in a_pp by the protected-link availability
/// 1 - (1 - a_l)(1 - a_bp). Throws std::domain_error when a_l == 0.
DcycUpdate ava_dcyc_update(double a_pp, double a_l, double a_bp);

/// Summary of one provisioning decision.
struct AvailabilityReport {
  double a_p_max = 0.0;   // best working path, unprotected
  double a_pp_max = 0.0;  // after protection, equal to a_p_max when none added
  double a_th = 0.0;
  bool protection_needed = false;
  bool protected_ = false;  // protection needed and threshold reached
};

/// Series/parallel structure over a set of independent components. Leaves
/// refer to components by index, so a component may appear in several
/// branches (the analytic formulas do not cover that case; the Monte-Carlo
/// estimator does).
class ReliabilityBlock {
 public:
  enum class Kind { component, series, parallel };

  static ReliabilityBlock component(std::size_t idx);
  static ReliabilityBlock series(std::vector<ReliabilityBlock> parts);
  static ReliabilityBlock parallel(std::vector<ReliabilityBlock> parts);

  Kind kind() const { return kind_; }
  std::size_t component_index() const { return index_; }
  const std::vector<ReliabilityBlock>& parts() const { return parts_; }

  /// Structure function for the given component states.
  bool works(std::span<const std::uint8_t> state) const;

 private:
  Kind kind_ = Kind::component;
  std::size_t index_ = 0;
  std::vector<ReliabilityBlock> parts_;
};

struct ReliabilitySystem {
  std::vector<double> availability;  // per component
  ReliabilityBlock structure;
};

struct MonteCarloEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
};

/// Samples independent component states with P(up) = A_i, evaluates the
/// structure function, and returns the mean with its standard error.
MonteCarloEstimate monte_carlo_availability(const ReliabilitySystem& system,
                                            std::uint64_t samples, std::uint64_t seed);

}  // namespace avrsa

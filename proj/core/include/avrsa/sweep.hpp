#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "avrsa/simulation.hpp"

namespace avrsa {

/// One output row: the cell's coordinates and the five metrics.
struct ResultRow {
  std::string mode;
  double load_erlang = 0.0;
  double avg_avail = 0.0;
  double a_th = 0.0;
  std::uint64_t seed = 0;
  double bp = 0.0;
  double bbp = 0.0;
  double utilization = 0.0;
  double protection_capacity = 0.0;
  std::optional<double> restorability;
  double runtime_s = 0.0;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

ResultRow make_row(const Scenario& sc, const MetricsReport& r, double runtime_s);

/// A cell that threw instead of producing a row.
struct CellError {
  std::string mode;
  double load_erlang = 0.0;
  double avg_avail = 0.0;
  double a_th = 0.0;
  std::uint64_t seed = 0;
  std::string message;
};

struct SweepSpec {
  Scenario base;
  std::vector<ProtectionMode> modes{ProtectionMode::dsbpss};
  std::vector<double> loads{15.0};
  std::vector<double> avg_availability{0.99};
  std::vector<double> a_th{0.999};
  std::size_t repetitions = 1;
  std::uint64_t seed_base = 1;  // repetition r uses seed_base + r
  std::size_t workers = 0;      // 0: one per hardware thread
  bool timing = false;          // otherwise runtime_s is written as 0

  std::size_t cell_count() const;
  /// Scenarios in output order: modes, loads, availabilities, thresholds,
  /// then repetitions. Throws std::invalid_argument for an empty grid.
  std::vector<Scenario> cells() const;
};

struct SweepResult {
  std::vector<ResultRow> rows;  // grid order, error cells skipped
  std::vector<CellError> errors;
};

/// Runs every cell, several at a time. Row order depends only on the grid.
SweepResult run_sweep(const SweepSpec& spec, const NetworkGraph& topology);

inline constexpr std::string_view kCsvHeader =
    "mode,load_erlang,avg_avail,a_th,seed,bp,bbp,utilization,protection_capacity,"
    "restorability,runtime_s";

/// Shortest decimal form that reads back to the same double.
std::string format_number(double x);

/// Header plus one line per row; an absent restorability is an empty field.
std::string to_csv(const std::vector<ResultRow>& rows);
/// Inverse of to_csv. Throws ParseError on a malformed line.
std::vector<ResultRow> parse_csv(std::string_view text);
/// {"rows": [...], "errors": [...]}, absent restorability as null.
std::string to_json(const SweepResult& result);

/// Writes `content` to `path`. Throws Error naming the path on failure.
void write_text_file(const std::string& path, std::string_view content);

}  // namespace avrsa

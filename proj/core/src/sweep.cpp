#include "avrsa/sweep.hpp"

#include <atomic>
#include <chrono>
#include <stdexcept>
#include <thread>

namespace avrsa {

ResultRow make_row(const Scenario& sc, const MetricsReport& r, double runtime_s) {
  ResultRow row;
  row.mode = std::string(to_string(sc.mode));
  row.load_erlang = sc.load_erlang;
  row.avg_avail = sc.avg_availability;
  row.a_th = sc.a_th;
  row.seed = sc.seed;
  row.bp = blocking_probability(r);
  row.bbp = bandwidth_blocking_probability(r);
  row.utilization = spectrum_utilization(r);
  row.protection_capacity = protection_capacity_share(r);
  row.restorability = restorability(r);
  row.runtime_s = runtime_s;
  return row;
}

std::size_t SweepSpec::cell_count() const {
  return modes.size() * loads.size() * avg_availability.size() * a_th.size() * repetitions;
}

std::vector<Scenario> SweepSpec::cells() const {
  if (cell_count() == 0) throw std::invalid_argument("sweep grid is empty");
  std::vector<Scenario> out;
  out.reserve(cell_count());
  for (ProtectionMode m : modes) {
    for (double load : loads) {
      for (double avail : avg_availability) {
        for (double th : a_th) {
          for (std::size_t r = 0; r < repetitions; ++r) {
            Scenario sc = base;
            sc.mode = m;
            sc.load_erlang = load;
            sc.avg_availability = avail;
            sc.a_th = th;
            sc.seed = seed_base + r;
            out.push_back(sc);
          }
        }
      }
    }
  }
  return out;
}

SweepResult run_sweep(const SweepSpec& spec, const NetworkGraph& topology) {
  const std::vector<Scenario> cells = spec.cells();
  struct Outcome {
    std::optional<ResultRow> row;
    std::string error;
  };
  std::vector<Outcome> outcomes(cells.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        const auto t0 = std::chrono::steady_clock::now();
        const MetricsReport r = run(cells[i], topology);
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        outcomes[i].row = make_row(cells[i], r, spec.timing ? dt.count() : 0.0);
      } catch (const std::exception& e) {
        outcomes[i].error = e.what();
      }
    }
  };

  std::size_t n = spec.workers ? spec.workers : std::thread::hardware_concurrency();
  n = std::clamp<std::size_t>(n, 1, cells.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  SweepResult result;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (outcomes[i].row) {
      result.rows.push_back(std::move(*outcomes[i].row));
    } else {
      const Scenario& sc = cells[i];
      result.errors.push_back({std::string(to_string(sc.mode)), sc.load_erlang,
                               sc.avg_availability, sc.a_th, sc.seed, outcomes[i].error});
    }
  }
  return result;
}

}  // namespace avrsa

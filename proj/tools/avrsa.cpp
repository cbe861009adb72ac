// avrsa: run single scenarios or parameter sweeps and write CSV or JSON.
//
//   avrsa run --mode dsbpss --load 15 --ath 0.999 --avg-availability 0.99
//   avrsa sweep --modes dsbpss dcycles --loads 15 20 25 --reps 5 --out bp.csv
//
// Exit status: 0 success, 1 bad usage or fatal error, 2 when some cells failed.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "avrsa/sweep.hpp"
#include "avrsa/topology.hpp"

namespace {

struct Common {
  std::string topology;
  std::string load_basis = "per-node";
  double holding_s = 1.0;
  double b_max = 100.0;
  double slot_ghz = 12.5;
  double guard_ghz = 10.0;
  std::size_t k = 5;
  std::size_t requests = 100000;
  std::size_t slots = avrsa::kDefaultSlotCount;
  bool no_jitter = false;
  bool check = false;
  bool timing = false;
  std::size_t workers = 0;
  std::string out = "-";
  std::string format = "csv";
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--topology", c.topology, "Topology file; built-in NSFNET when omitted");
  app->add_option("--load-basis", c.load_basis, "Offered load per node or for the whole network")
      ->check(CLI::IsMember({"per-node", "network"}));
  app->add_option("--holding", c.holding_s, "Mean holding time in seconds")
      ->check(CLI::PositiveNumber);
  app->add_option("--b-max", c.b_max, "Maximum request rate in Gbps")->check(CLI::Range(1.0, 1e6));
  app->add_option("--slot-ghz", c.slot_ghz, "Slot width")->check(CLI::PositiveNumber);
  app->add_option("--guard-ghz", c.guard_ghz, "Guard band per allocation")
      ->check(CLI::NonNegativeNumber);
  app->add_option("--k", c.k, "Candidate path budget")->check(CLI::PositiveNumber);
  app->add_option("--requests", c.requests, "Requests per run")->check(CLI::PositiveNumber);
  app->add_option("--slots", c.slots, "Slots per link")->check(CLI::PositiveNumber);
  app->add_flag("--no-jitter", c.no_jitter, "Give every link exactly the average availability");
  app->add_flag("--check-invariants", c.check, "Verify protection state after every event");
  app->add_flag("--timing", c.timing, "Record wall-clock runtime per cell");
  app->add_option("--workers", c.workers, "Parallel runs; 0 uses every hardware thread");
  app->add_option("--out", c.out, "Output path, '-' for stdout");
  app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

avrsa::Scenario base_scenario(const Common& c) {
  avrsa::Scenario sc;
  sc.load_basis = c.load_basis == "network" ? avrsa::LoadBasis::network : avrsa::LoadBasis::per_node;
  sc.mean_holding_s = c.holding_s;
  sc.b_max_gbps = c.b_max;
  sc.slot_ghz = c.slot_ghz;
  sc.guard_ghz = c.guard_ghz;
  sc.k = c.k;
  sc.n_requests = c.requests;
  sc.jitter = !c.no_jitter;
  sc.check_invariants = c.check;
  return sc;
}

int execute(const Common& c, avrsa::SweepSpec spec) {
  spec.base = base_scenario(c);
  spec.workers = c.workers;
  spec.timing = c.timing;

  const avrsa::NetworkGraph topology =
      c.topology.empty()
          ? avrsa::build_nsfnet(c.slots, avrsa::AvailabilityPolicy::uniform(1.0))
          : avrsa::load_topology_file(c.topology, c.slots);

  const avrsa::SweepResult result = avrsa::run_sweep(spec, topology);
  const std::string text = c.format == "json" ? avrsa::to_json(result) : avrsa::to_csv(result.rows);
  if (c.out == "-") {
    std::cout << text;
  } else {
    avrsa::write_text_file(c.out, text);
  }
  for (const auto& e : result.errors) {
    std::cerr << "cell failed: mode=" << e.mode << " load=" << e.load_erlang
              << " avail=" << e.avg_avail << " a_th=" << e.a_th << " seed=" << e.seed << ": "
              << e.message << '\n';
  }
  return result.errors.empty() ? 0 : 2;
}

std::vector<avrsa::ProtectionMode> parse_modes(const std::vector<std::string>& names) {
  std::vector<avrsa::ProtectionMode> out;
  for (const auto& n : names) out.push_back(avrsa::parse_mode(n));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Availability-aware RSA simulator with DSBPSS and D-cycle protection"};
  app.set_config("--config", "", "Read options from a key = value file");
  app.require_subcommand(1);

  Common run_common;
  std::string mode = "dsbpss";
  double load = 15.0;
  double ath = 0.999;
  double avg = 0.99;
  std::uint64_t seed = 1;
  CLI::App* run_cmd = app.add_subcommand("run", "Simulate one scenario");
  add_common(run_cmd, run_common);
  run_cmd->add_option("--mode", mode, "none, dsbpss or dcycles")
      ->check(CLI::IsMember({"none", "dsbpss", "dcycles"}));
  run_cmd->add_option("--load", load, "Offered load in Erlang")->check(CLI::PositiveNumber);
  run_cmd->add_option("--ath", ath, "Availability threshold")->check(CLI::Range(0.0, 1.0));
  run_cmd->add_option("--avg-availability", avg, "Average link availability")
      ->check(CLI::Range(0.0, 1.0));
  run_cmd->add_option("--seed", seed, "Scenario seed");

  Common sweep_common;
  std::vector<std::string> modes{"dsbpss", "dcycles"};
  std::vector<double> loads{15, 20, 25};
  std::vector<double> avgs{0.9, 0.99, 0.999, 0.9999, 0.99999, 0.999999};
  std::vector<double> aths{0.9, 0.99, 0.999, 0.9999, 0.99999, 0.999999};
  std::size_t reps = 1;
  std::uint64_t seed_base = 1;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Simulate a grid of scenarios");
  add_common(sweep_cmd, sweep_common);
  sweep_cmd->add_option("--modes", modes, "Protection modes")
      ->check(CLI::IsMember({"none", "dsbpss", "dcycles"}));
  sweep_cmd->add_option("--loads", loads, "Offered loads in Erlang")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--avg-availability", avgs, "Average link availabilities")
      ->check(CLI::Range(0.0, 1.0));
  sweep_cmd->add_option("--ath", aths, "Availability thresholds")->check(CLI::Range(0.0, 1.0));
  sweep_cmd->add_option("--reps", reps, "Repetitions per cell")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--seed", seed_base, "Seed of the first repetition");

  CLI11_PARSE(app, argc, argv);

  try {
    avrsa::SweepSpec spec;
    if (*run_cmd) {
      spec.modes = {avrsa::parse_mode(mode)};
      spec.loads = {load};
      spec.avg_availability = {avg};
      spec.a_th = {ath};
      spec.repetitions = 1;
      spec.seed_base = seed;
      return execute(run_common, spec);
    }
    spec.modes = parse_modes(modes);
    spec.loads = loads;
    spec.avg_availability = avgs;
    spec.a_th = aths;
    spec.repetitions = reps;
    spec.seed_base = seed_base;
    return execute(sweep_common, spec);
  } catch (const std::exception& e) {
    std::cerr << "avrsa: " << e.what() << '\n';
    return 1;
  }
}

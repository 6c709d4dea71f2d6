// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ulsched/ulsched.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInvalidConfig = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitNumeric = 4;

struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> algo;
  std::optional<std::string> alphabet;
  std::string out;
  std::string format = "csv";
  bool timing = false;
};

ulsched::Scenario load_with_overrides(const CommonOptions& opts) {
  ulsched::Scenario scenario = ulsched::load_scenario(opts.config);
  if (opts.seed) scenario.seed = *opts.seed;
  if (opts.algo) scenario.algorithm = ulsched::parse_algorithm(*opts.algo);
  if (opts.alphabet) scenario.alphabet = ulsched::parse_alphabet(*opts.alphabet);
  scenario.timing = opts.timing;
  return scenario;
}

void emit_rows(const CommonOptions& opts, const std::vector<ulsched::ResultRow>& rows,
               const ulsched::Scenario& scenario) {
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!opts.out.empty()) {
    file.open(opts.out, std::ios::trunc);
    if (!file) throw std::invalid_argument("cannot open output file: " + opts.out);
    out = &file;
  }
  if (opts.format == "csv") {
    ulsched::write_csv(*out, rows, scenario);
  } else if (opts.format == "json") {
    ulsched::write_json(*out, rows, scenario);
  } else {
    throw std::invalid_argument("unknown format: " + opts.format);
  }
}

int run_schedule(const CommonOptions& opts) {
  const ulsched::Scenario scenario = load_with_overrides(opts);
  const auto rows = ulsched::run_experiment(scenario);
  emit_rows(opts, rows, scenario);
  return kExitOk;
}

int run_sweep(const CommonOptions& opts, std::optional<double> snr_min,
              std::optional<double> snr_max, std::optional<double> snr_step) {
  ulsched::Scenario scenario = load_with_overrides(opts);
  if (snr_min || snr_max || snr_step) {
    if (!(snr_min && snr_max && snr_step)) {
      throw std::invalid_argument("sweep: give all of --snr-min/--snr-max/--snr-step or none");
    }
    if (!(*snr_step > 0.0)) throw std::invalid_argument("sweep: --snr-step must be positive");
    scenario.snr_db.clear();
    for (double v = *snr_min; v <= *snr_max + 1e-9; v += *snr_step) scenario.snr_db.push_back(v);
    if (scenario.snr_db.empty()) throw std::invalid_argument("sweep: empty SNR grid");
  }
  const auto rows = ulsched::run_experiment(scenario);
  emit_rows(opts, rows, scenario);
  return kExitOk;
}

int run_antenna_select(const std::string& matrix_path, int cardinality, double snr_db,
                       const std::string& algo, const std::string& out_path) {
  std::ifstream in(matrix_path);
  if (!in) throw std::invalid_argument("cannot open matrix file: " + matrix_path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("matrix parse error: " + std::string(e.what()));
  }

  ulsched::AntennaSelectionInstance instance;
  try {
    instance.channel = ulsched::detail::parse_matrix(j.contains("matrix") ? j.at("matrix") : j);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("matrix schema error: " + std::string(e.what()));
  }
  instance.cardinality = cardinality;
  instance.snr = std::pow(10.0, snr_db / 10.0);

  ulsched::AntennaSelectionResult result;
  if (algo == "exact") {
    result = ulsched::antenna_exact(instance);
  } else if (algo == "greedy") {
    result = ulsched::antenna_greedy(instance);
  } else {
    throw std::invalid_argument("antenna-select supports --algo greedy or exact");
  }

  nlohmann::json out;
  out["algorithm"] = algo;
  out["cardinality"] = cardinality;
  out["snr_db"] = snr_db;
  out["columns"] = result.columns;
  out["value_bits"] = result.value;
  if (out_path.empty()) {
    std::cout << out.dump(2) << '\n';
  } else {
    std::ofstream file(out_path, std::ios::trunc);
    if (!file) throw std::invalid_argument("cannot open output file: " + out_path);
    file << out.dump(2) << '\n';
  }
  return kExitOk;
}

int run_enumerate(const CommonOptions& opts) {
  const ulsched::Scenario scenario = load_with_overrides(opts);
  const auto allocations = ulsched::enumerate_allocations(scenario.rbs);
  const ulsched::GroundSet ground = ulsched::build_ground_set(
      scenario.users, scenario.codebook, scenario.rbs, ulsched::detail::scenario_profiles(scenario));
  const ulsched::KnapsackSystem knapsacks = ulsched::detail::scenario_knapsacks(scenario, ground);
  const auto report = knapsacks.assumptions_hold();

  std::cout << "users:                " << scenario.users << '\n'
            << "rbs:                  " << scenario.rbs << '\n'
            << "codebook size:        " << scenario.codebook.size() << '\n'
            << "valid allocations:    " << allocations.size() << '\n'
            << "ground set size:      " << ground.size() << '\n'
            << "per-user elements:    " << (scenario.users > 0 ? ground.user_elements(0).size() : 0)
            << '\n'
            << "control rows:         " << knapsacks.num_control_rows() << '\n'
            << "interference rows:    " << knapsacks.num_interference_rows() << '\n'
            << "column sparsity:      " << knapsacks.column_sparsity() << '\n'
            << "structured form:      " << (report.ok ? "yes" : report.diagnostic) << '\n';
  return kExitOk;
}

// Scaled-down property drill on the scenario's dimensions: rank-function
// checks for every evaluator, corner-point cross-check, greedy-vs-exact
// ratio and the upper bound, each on seeded random channels.
int run_verify(const CommonOptions& opts, int trials) {
  ulsched::Scenario scenario = load_with_overrides(opts);
  const int users = std::min(scenario.users, 3);
  const int rbs = std::min(scenario.rbs, 2);
  std::vector<ulsched::CMatrix> words;
  for (int w = 0; w < std::min(scenario.codebook.size(), 2); ++w) {
    words.push_back(scenario.codebook.matrix(w));
  }
  const ulsched::Codebook codebook{std::move(words)};

  bool all_ok = true;
  const auto report = [&all_ok](const std::string& name, bool ok) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << '\n';
    all_ok = all_ok && ok;
  };

  bool rank_ok = true;
  bool corner_ok = true;
  bool ratio_ok = true;
  bool bound_ok = true;
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<ulsched::UserProfile> profiles(static_cast<std::size_t>(users));
    for (int u = 0; u < users; ++u) {
      profiles[static_cast<std::size_t>(u)].tx_antennas = codebook.tx_antennas();
      profiles[static_cast<std::size_t>(u)].constellation_size =
          scenario.constellation_size[static_cast<std::size_t>(u)];
    }
    const ulsched::GroundSet ground = ulsched::build_ground_set(users, codebook, rbs, profiles);
    const ulsched::ChannelSet channels = ulsched::generate_channels(
        ulsched::detail::mix_seed(scenario.seed, 1000 + static_cast<std::uint64_t>(trial)), users,
        rbs, scenario.rx_antennas, codebook.tx_antennas(), 1.0);

    std::mt19937_64 rng(ulsched::detail::mix_seed(scenario.seed, 2000 + trial));
    std::uniform_real_distribution<double> weight_dist(0.25, 2.0);
    std::uniform_real_distribution<double> queue_dist(0.2, 2.5);
    std::vector<double> weights(static_cast<std::size_t>(users));
    for (double& w : weights) w = weight_dist(rng);
    std::vector<double> queues(static_cast<std::size_t>(ground.size()));
    for (double& q : queues) q = queue_dist(rng);

    const ulsched::RankFunction f(ulsched::RankKind::gaussian, ground, channels);
    const ulsched::RankFunction g(ulsched::RankKind::finite_alphabet, ground, channels);
    const ulsched::CappedRankFunction fp(f, queues);
    const ulsched::CappedRankFunction gp(g, queues);
    const ulsched::WeightedRateUtility utility(ground, weights, fp);

    // Random sub-universe of at most 6 elements.
    std::vector<ulsched::ElementIndex> universe(static_cast<std::size_t>(ground.size()));
    for (int i = 0; i < ground.size(); ++i) universe[static_cast<std::size_t>(i)] = i;
    std::shuffle(universe.begin(), universe.end(), rng);
    universe.resize(std::min<std::size_t>(universe.size(), 6));
    std::sort(universe.begin(), universe.end());
    const int n = static_cast<int>(universe.size());

    const auto on_masks = [&](const auto& fn) {
      return [&, fn](std::uint32_t mask) {
        return fn(ulsched::masked_subset(universe, mask));
      };
    };
    rank_ok = rank_ok &&
        ulsched::verify_submodular(on_masks([&](ulsched::IndexView s) { return f.value(s); }), n).ok &&
        ulsched::verify_submodular(on_masks([&](ulsched::IndexView s) { return g.value(s); }), n).ok &&
        ulsched::verify_submodular(on_masks([&](ulsched::IndexView s) { return fp.value(s); }), n).ok &&
        ulsched::verify_submodular(on_masks([&](ulsched::IndexView s) { return gp.value(s); }), n).ok &&
        ulsched::verify_submodular(on_masks([&](ulsched::IndexView s) { return utility.value(s); }), n).ok;

    const std::size_t take = std::min<std::size_t>(universe.size(), 4);
    const ulsched::IndexSet subset(universe.begin(), universe.begin() + take);
    corner_ok = corner_ok &&
                std::abs(utility.value(subset) -
                         ulsched::max_weighted_sum_over_corners(subset, utility)) <= 1e-9 &&
                ulsched::verify_rate_region_membership(subset, utility.corner_rates(subset), fp);

    const ulsched::KnapsackSystem none;
    const auto greedy = ulsched::greedy_schedule(utility, none);
    const auto exact = ulsched::exact_schedule(utility, none);
    ratio_ok = ratio_ok &&
               greedy.objective + 1e-9 >= exact.objective / static_cast<double>(users);
    bound_ok = bound_ok &&
               ulsched::data_dependent_upper_bound(utility, none, greedy.trace) >=
                   exact.objective - 1e-9;
  }
  report("rank functions monotone submodular and normalized", rank_ok);
  report("corner point matches exhaustive corner maximization", corner_ok);
  report("greedy within 1/K of exact", ratio_ok);
  report("data-dependent bound covers the exact optimum", bound_ok);
  return all_ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MU-MIMO uplink scheduling experiments"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::optional<double> snr_min;
  std::optional<double> snr_max;
  std::optional<double> snr_step;
  std::string matrix_path;
  int cardinality = 1;
  double antenna_snr_db = 0.0;
  std::string antenna_algo = "greedy";
  std::string antenna_out;
  int verify_trials = 10;

  const auto add_common = [&](CLI::App* cmd, bool with_output) {
    cmd->add_option("--config", opts.config, "scenario file (JSON)")->required();
    cmd->add_option("--seed", opts.seed, "override the scenario seed");
    cmd->add_option("--algo", opts.algo, "greedy|lazy|pruned|exact");
    cmd->add_option("--alphabet", opts.alphabet, "gaussian|finite");
    if (with_output) {
      cmd->add_option("--out", opts.out, "output path (default: stdout)");
      cmd->add_option("--format", opts.format, "csv|json")->capture_default_str();
      cmd->add_flag("--timing", opts.timing,
                    "emit measured runtimes (output no longer byte-reproducible)");
    }
  };

  CLI::App* schedule = app.add_subcommand("schedule", "run one scenario and emit result rows");
  add_common(schedule, true);

  CLI::App* sweep = app.add_subcommand("sweep", "run a scenario over an SNR grid");
  add_common(sweep, true);
  sweep->add_option("--snr-min", snr_min, "override grid start (dB)");
  sweep->add_option("--snr-max", snr_max, "override grid end (dB)");
  sweep->add_option("--snr-step", snr_step, "override grid step (dB)");

  CLI::App* antenna = app.add_subcommand("antenna-select", "cardinality-constrained column selection");
  antenna->add_option("--matrix", matrix_path, "matrix file (JSON)")->required();
  antenna->add_option("--cardinality,-C", cardinality, "columns to select")->required();
  antenna->add_option("--snr-db", antenna_snr_db, "SNR in dB absorbed into the matrix")
      ->capture_default_str();
  antenna->add_option("--algo", antenna_algo, "greedy|exact")->capture_default_str();
  antenna->add_option("--out", antenna_out, "output path (default: stdout)");

  CLI::App* verify = app.add_subcommand("verify", "run the oracle property drill on a scenario");
  add_common(verify, false);
  verify->add_option("--trials", verify_trials, "seeded trials")->capture_default_str();

  CLI::App* enumerate = app.add_subcommand("enumerate", "print ground-set statistics");
  add_common(enumerate, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (schedule->parsed()) return run_schedule(opts);
    if (sweep->parsed()) return run_sweep(opts, snr_min, snr_max, snr_step);
    if (antenna->parsed()) {
      return run_antenna_select(matrix_path, cardinality, antenna_snr_db, antenna_algo, antenna_out);
    }
    if (verify->parsed()) return run_verify(opts, verify_trials);
    if (enumerate->parsed()) return run_enumerate(opts);
  } catch (const ulsched::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const ulsched::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid config: " << e.what() << '\n';
    return kExitInvalidConfig;
  }
  return kExitOk;
}

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

#ifndef ULSCHED_SIM_HPP_
#define ULSCHED_SIM_HPP_

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ulsched/antenna_selection.hpp"
#include "ulsched/constraints.hpp"
#include "ulsched/ground_set.hpp"
#include "ulsched/oracle.hpp"
#include "ulsched/rank_functions.hpp"
#include "ulsched/scheduler.hpp"
#include "ulsched/utility.hpp"

namespace ulsched {

enum class SchedulerAlgorithm { greedy, lazy, pruned, exact };

inline const char* algorithm_name(SchedulerAlgorithm a) {
  switch (a) {
    case SchedulerAlgorithm::greedy: return "greedy";
    case SchedulerAlgorithm::lazy: return "lazy";
    case SchedulerAlgorithm::pruned: return "pruned";
    case SchedulerAlgorithm::exact: return "exact";
  }
  return "unknown";
}

inline SchedulerAlgorithm parse_algorithm(const std::string& name) {
  if (name == "greedy") return SchedulerAlgorithm::greedy;
  if (name == "lazy") return SchedulerAlgorithm::lazy;
  if (name == "pruned") return SchedulerAlgorithm::pruned;
  if (name == "exact") return SchedulerAlgorithm::exact;
  throw std::invalid_argument("unknown algorithm: " + name);
}

inline RankKind parse_alphabet(const std::string& name) {
  if (name == "gaussian") return RankKind::gaussian;
  if (name == "finite") return RankKind::finite_alphabet;
  throw std::invalid_argument("unknown alphabet: " + name);
}

// Control region over whole users with a scheduling-count budget.
struct ControlRegionSpec {
  std::vector<int> users;
  int capacity = 1;
};

// Interference cap: all elements of the listed users share one fractional
// row with a uniform coefficient.
struct InterferenceSpec {
  std::vector<int> users;
  double coefficient = 1.0;
};

struct Scenario {
  int users = 1;
  int rbs = 1;
  int rx_antennas = 1;
  int tx_antennas = 1;
  Codebook codebook;
  std::vector<double> total_power;       // per user
  std::vector<double> queue_bits;        // per user; ignored when uncapped
  bool uncapped_queues = true;
  std::vector<int> constellation_size;   // per user
  std::vector<ControlRegionSpec> control;
  std::vector<InterferenceSpec> interference;
  std::vector<double> snr_db{0.0};
  int intervals = 1;
  std::uint64_t seed = 1;
  SchedulerAlgorithm algorithm = SchedulerAlgorithm::greedy;
  RankKind alphabet = RankKind::gaussian;
  double pf_tau = 100.0;
  bool timing = false;  // measured runtimes make outputs differ between runs
};

// One emitted record per (SNR point, scheduling interval).
struct ResultRow {
  double snr_db = 0.0;
  int interval = 0;
  std::string algorithm;
  double objective = 0.0;
  double spectral_efficiency = 0.0;  // bits per RB, sum of served rates / N
  double upper_bound = 0.0;
  double ratio = 0.0;                // objective / upper_bound
  std::int64_t h_evaluations = 0;
  double runtime_ms = 0.0;
  std::uint64_t seed = 0;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 1));
}

}  // namespace detail

// I.i.d. circularly-symmetric complex Gaussian channels, zero mean, variance
// snr_linear per entry against identity noise. The draw order (user, RB, row,
// column) and the generator are fixed, so equal seeds give equal channels.
inline ChannelSet generate_channels(std::uint64_t seed, int num_users, int num_rbs,
                                    int rx_antennas, int tx_antennas, double snr_linear) {
  if (!(snr_linear > 0.0)) throw std::invalid_argument("generate_channels: SNR must be positive");
  ChannelSet channels(num_users, num_rbs, rx_antennas, tx_antennas);
  std::mt19937_64 rng(detail::splitmix64(seed));
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  const double scale = std::sqrt(snr_linear);
  for (int u = 0; u < num_users; ++u) {
    for (int n = 0; n < num_rbs; ++n) {
      CMatrix& h = channels.at(u, n);
      for (Eigen::Index r = 0; r < h.rows(); ++r) {
        for (Eigen::Index c = 0; c < h.cols(); ++c) {
          h(r, c) = scale * Complex(gauss(rng), gauss(rng));
        }
      }
    }
  }
  return channels;
}

// Exponentially averaged throughput driving inverse-throughput weights:
//   T_k <- (1 - 1/tau) T_k + (1/tau) r_k,   weight_k = 1 / max(T_k, 1e-6).
class PfTracker {
 public:
  static constexpr double kThroughputFloor = 1e-6;

  PfTracker(int num_users, double tau)
      : tau_(tau), average_(static_cast<std::size_t>(num_users), kThroughputFloor) {
    if (!(tau > 1.0)) throw std::invalid_argument("PfTracker: tau must exceed 1");
  }

  std::vector<double> update(const std::vector<double>& served_rates) {
    if (served_rates.size() != average_.size()) {
      throw std::invalid_argument("PfTracker: rate vector size mismatch");
    }
    std::vector<double> weights(average_.size());
    for (std::size_t k = 0; k < average_.size(); ++k) {
      average_[k] = (1.0 - 1.0 / tau_) * average_[k] + served_rates[k] / tau_;
      weights[k] = 1.0 / std::max(average_[k], kThroughputFloor);
    }
    return weights;
  }

  const std::vector<double>& average_throughput() const { return average_; }

 private:
  double tau_;
  std::vector<double> average_;
};

inline std::vector<double> update_pf_weights(PfTracker& tracker,
                                             const std::vector<double>& served_rates) {
  return tracker.update(served_rates);
}

namespace detail {

inline void validate_scenario(const Scenario& s) {
  if (s.users < 1 || s.rbs < 1 || s.rx_antennas < 1 || s.tx_antennas < 1) {
    throw std::invalid_argument("scenario: nonpositive dimension");
  }
  if (s.codebook.tx_antennas() != s.tx_antennas) {
    throw std::invalid_argument("scenario: codebook rows != tx antennas");
  }
  if (static_cast<int>(s.total_power.size()) != s.users ||
      static_cast<int>(s.constellation_size.size()) != s.users) {
    throw std::invalid_argument("scenario: per-user vectors sized wrong");
  }
  if (!s.uncapped_queues && static_cast<int>(s.queue_bits.size()) != s.users) {
    throw std::invalid_argument("scenario: queue vector sized wrong");
  }
  if (s.snr_db.empty()) throw std::invalid_argument("scenario: empty SNR grid");
  if (s.intervals < 1) throw std::invalid_argument("scenario: intervals must be positive");
  if (!(s.pf_tau > 1.0)) throw std::invalid_argument("scenario: pf_tau must exceed 1");
  for (const ControlRegionSpec& r : s.control) {
    if (r.capacity < 0) throw std::invalid_argument("scenario: negative control capacity");
    for (int u : r.users) {
      if (u < 0 || u >= s.users) throw std::invalid_argument("scenario: control user out of range");
    }
  }
  for (const InterferenceSpec& r : s.interference) {
    if (!(r.coefficient > 0.0) || r.coefficient > 1.0) {
      throw std::invalid_argument("scenario: interference coefficient outside (0,1]");
    }
    for (int u : r.users) {
      if (u < 0 || u >= s.users) {
        throw std::invalid_argument("scenario: interference user out of range");
      }
    }
  }
}

inline std::vector<UserProfile> scenario_profiles(const Scenario& s) {
  std::vector<UserProfile> profiles(static_cast<std::size_t>(s.users));
  for (int u = 0; u < s.users; ++u) {
    UserProfile& p = profiles[static_cast<std::size_t>(u)];
    p.weight = 1.0;
    p.total_power = s.total_power[static_cast<std::size_t>(u)];
    p.queue_bits = s.uncapped_queues ? 0.0 : s.queue_bits[static_cast<std::size_t>(u)];
    p.constellation_size = s.constellation_size[static_cast<std::size_t>(u)];
    p.tx_antennas = s.tx_antennas;
  }
  return profiles;
}

inline KnapsackSystem scenario_knapsacks(const Scenario& s, const GroundSet& ground) {
  std::vector<ControlRow> control;
  for (const ControlRegionSpec& spec : s.control) {
    ControlRow row;
    row.capacity = spec.capacity;
    for (int u : spec.users) {
      const auto& elems = ground.user_elements(u);
      row.support.insert(row.support.end(), elems.begin(), elems.end());
    }
    std::sort(row.support.begin(), row.support.end());
    control.push_back(std::move(row));
  }
  std::vector<InterferenceRow> interference;
  for (const InterferenceSpec& spec : s.interference) {
    InterferenceRow row;
    for (int u : spec.users) {
      for (ElementIndex e : ground.user_elements(u)) {
        row.entries.emplace_back(e, spec.coefficient);
      }
    }
    std::sort(row.entries.begin(), row.entries.end());
    interference.push_back(std::move(row));
  }
  return KnapsackSystem(ground.size(), std::move(control), std::move(interference));
}

}  // namespace detail

// Runs the configured algorithm over the SNR grid and scheduling intervals.
// Channels are redrawn each interval from (seed, interval) only, so the SNR
// axis rescales one common set of fading states. Weights start uniform and
// follow the proportional-fair update between intervals.
inline std::vector<ResultRow> run_experiment(const Scenario& scenario) {
  detail::validate_scenario(scenario);
  const GroundSet ground =
      build_ground_set(scenario.users, scenario.codebook, scenario.rbs,
                       detail::scenario_profiles(scenario));
  const KnapsackSystem knapsacks = detail::scenario_knapsacks(scenario, ground);

  std::vector<ResultRow> rows;
  rows.reserve(scenario.snr_db.size() * static_cast<std::size_t>(scenario.intervals));
  for (double snr_db : scenario.snr_db) {
    const double snr_linear = std::pow(10.0, snr_db / 10.0);
    PfTracker pf(scenario.users, scenario.pf_tau);
    std::vector<double> weights(static_cast<std::size_t>(scenario.users), 1.0);
    for (int interval = 1; interval <= scenario.intervals; ++interval) {
      const ChannelSet channels = generate_channels(
          detail::mix_seed(scenario.seed, static_cast<std::uint64_t>(interval)), scenario.users,
          scenario.rbs, scenario.rx_antennas, scenario.tx_antennas, snr_linear);

      const RankFunction gaussian(RankKind::gaussian, ground, channels);
      std::optional<RankFunction> finite;
      if (scenario.alphabet == RankKind::finite_alphabet) {
        finite.emplace(RankKind::finite_alphabet, ground, channels);
      }
      const RankFunction& base = finite ? *finite : gaussian;

      std::vector<double> queues;
      if (scenario.uncapped_queues) {
        queues.assign(static_cast<std::size_t>(ground.size()),
                      uncapped_queue_sentinel(ground, channels));
      } else {
        queues = ground.element_queues();
      }
      const CappedRankFunction capped(base, std::move(queues));
      const WeightedRateUtility utility(ground, weights, capped);

      const auto start = std::chrono::steady_clock::now();
      ScheduleOutcome outcome;
      switch (scenario.algorithm) {
        case SchedulerAlgorithm::greedy: outcome = greedy_schedule(utility, knapsacks); break;
        case SchedulerAlgorithm::lazy: outcome = lazy_greedy_schedule(utility, knapsacks); break;
        case SchedulerAlgorithm::pruned: outcome = pruned_greedy_schedule(utility, knapsacks); break;
        case SchedulerAlgorithm::exact: outcome = exact_schedule(utility, knapsacks); break;
      }
      outcome.upper_bound = data_dependent_upper_bound(utility, knapsacks, outcome.trace);
      const auto stop = std::chrono::steady_clock::now();

      ResultRow row;
      row.snr_db = snr_db;
      row.interval = interval;
      row.algorithm = algorithm_name(scenario.algorithm);
      row.objective = outcome.objective;
      row.spectral_efficiency = outcome.rates.total() / static_cast<double>(scenario.rbs);
      row.upper_bound = *outcome.upper_bound;
      row.ratio = row.upper_bound > 0.0 ? row.objective / row.upper_bound : 1.0;
      row.h_evaluations = outcome.evaluations;
      row.runtime_ms =
          scenario.timing
              ? std::chrono::duration<double, std::milli>(stop - start).count()
              : 0.0;
      row.seed = scenario.seed;
      rows.push_back(std::move(row));

      std::vector<double> served(static_cast<std::size_t>(scenario.users), 0.0);
      for (std::size_t i = 0; i < outcome.rates.elements.size(); ++i) {
        served[static_cast<std::size_t>(ground.element(outcome.rates.elements[i]).user)] +=
            outcome.rates.rates[i];
      }
      weights = pf.update(served);
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Scenario file parsing (JSON) and result emission.
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<double> per_user_doubles(const nlohmann::json& j, int users,
                                            const char* field, double fallback) {
  if (!j.contains(field)) return std::vector<double>(static_cast<std::size_t>(users), fallback);
  const auto& v = j.at(field);
  if (v.is_number()) return std::vector<double>(static_cast<std::size_t>(users), v.get<double>());
  auto out = v.get<std::vector<double>>();
  if (static_cast<int>(out.size()) != users) {
    throw std::invalid_argument(std::string("scenario: ") + field + " must list every user");
  }
  return out;
}

inline std::vector<int> per_user_ints(const nlohmann::json& j, int users, const char* field,
                                      int fallback) {
  if (!j.contains(field)) return std::vector<int>(static_cast<std::size_t>(users), fallback);
  const auto& v = j.at(field);
  if (v.is_number_integer()) return std::vector<int>(static_cast<std::size_t>(users), v.get<int>());
  auto out = v.get<std::vector<int>>();
  if (static_cast<int>(out.size()) != users) {
    throw std::invalid_argument(std::string("scenario: ") + field + " must list every user");
  }
  return out;
}

// Complex matrix from {"rows": r, "cols": c, "entries": [[re, im], ...]}
// listing entries row-major.
inline CMatrix parse_matrix(const nlohmann::json& j) {
  const int rows = j.at("rows").get<int>();
  const int cols = j.at("cols").get<int>();
  const auto& entries = j.at("entries");
  if (rows < 1 || cols < 1 || static_cast<int>(entries.size()) != rows * cols) {
    throw std::invalid_argument("matrix: entry count != rows * cols");
  }
  CMatrix m(rows, cols);
  for (int i = 0; i < rows * cols; ++i) {
    const auto& e = entries.at(static_cast<std::size_t>(i));
    double re = 0.0;
    double im = 0.0;
    if (e.is_array()) {
      re = e.at(0).get<double>();
      im = e.size() > 1 ? e.at(1).get<double>() : 0.0;
    } else {
      re = e.get<double>();
    }
    m(i / cols, i % cols) = Complex(re, im);
  }
  return m;
}

}  // namespace detail

inline Scenario scenario_from_json(const nlohmann::json& j) {
  Scenario s;
  s.users = j.at("users").get<int>();
  s.rbs = j.at("rbs").get<int>();
  s.rx_antennas = j.value("rx_antennas", 1);
  s.tx_antennas = j.value("tx_antennas", 1);

  if (!j.contains("codebook") || (j.at("codebook").is_string() &&
                                  j.at("codebook").get<std::string>() == "antenna-selection")) {
    s.codebook = Codebook::antenna_selection(s.tx_antennas);
  } else if (j.at("codebook").is_array()) {
    std::vector<CMatrix> ws;
    for (const auto& m : j.at("codebook")) ws.push_back(detail::parse_matrix(m));
    s.codebook = Codebook(std::move(ws));
  } else {
    throw std::invalid_argument("scenario: codebook must be \"antenna-selection\" or a matrix list");
  }

  s.total_power = detail::per_user_doubles(j, s.users, "power", 1.0);
  s.constellation_size = detail::per_user_ints(j, s.users, "constellation_size", 4);
  if (j.contains("queue") && !(j.at("queue").is_string() &&
                               j.at("queue").get<std::string>() == "uncapped")) {
    s.uncapped_queues = false;
    s.queue_bits = detail::per_user_doubles(j, s.users, "queue", 0.0);
  }

  if (j.contains("constraints")) {
    const auto& c = j.at("constraints");
    if (c.contains("max_scheduled_users")) {
      ControlRegionSpec all;
      all.capacity = c.at("max_scheduled_users").get<int>();
      for (int u = 0; u < s.users; ++u) all.users.push_back(u);
      s.control.push_back(std::move(all));
    }
    if (c.contains("control")) {
      for (const auto& r : c.at("control")) {
        ControlRegionSpec spec;
        spec.users = r.at("users").get<std::vector<int>>();
        spec.capacity = r.at("capacity").get<int>();
        s.control.push_back(std::move(spec));
      }
    }
    if (c.contains("interference")) {
      for (const auto& r : c.at("interference")) {
        InterferenceSpec spec;
        spec.users = r.at("users").get<std::vector<int>>();
        spec.coefficient = r.at("coefficient").get<double>();
        s.interference.push_back(std::move(spec));
      }
    }
  }

  if (j.contains("snr_db")) {
    const auto& g = j.at("snr_db");
    if (g.is_array()) {
      s.snr_db = g.get<std::vector<double>>();
    } else if (g.is_object()) {
      const double from = g.at("from").get<double>();
      const double to = g.at("to").get<double>();
      const double step = g.at("step").get<double>();
      if (!(step > 0.0)) throw std::invalid_argument("scenario: snr_db.step must be positive");
      s.snr_db.clear();
      for (double v = from; v <= to + 1e-9; v += step) s.snr_db.push_back(v);
    } else {
      s.snr_db = {g.get<double>()};
    }
  }

  s.intervals = j.value("intervals", 1);
  s.seed = j.value("seed", std::uint64_t{1});
  s.algorithm = parse_algorithm(j.value("algorithm", std::string("greedy")));
  s.alphabet = parse_alphabet(j.value("alphabet", std::string("gaussian")));
  s.pf_tau = j.value("pf_tau", 100.0);
  detail::validate_scenario(s);
  return s;
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open scenario file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("scenario parse error: " + std::string(e.what()));
  }
  try {
    return scenario_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("scenario schema error: " + std::string(e.what()));
  }
}

namespace detail {

inline std::string format_sig9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace detail

// CSV with '#' metadata lines, then the mandatory header row, then one line
// per result row with floats at 9 significant digits.
inline void write_csv(std::ostream& out, const std::vector<ResultRow>& rows,
                      const Scenario& scenario) {
  out << "# channel model: iid circularly-symmetric complex Gaussian, unit noise covariance\n";
  out << "# spectral_efficiency: sum of served rates divided by the RB count (weights divided out)\n";
  out << "# algorithm=" << algorithm_name(scenario.algorithm)
      << " alphabet=" << (scenario.alphabet == RankKind::gaussian ? "gaussian" : "finite")
      << " seed=" << scenario.seed << " intervals=" << scenario.intervals << "\n";
  out << "snr_db,interval,algorithm,objective,spectral_efficiency,upper_bound,ratio,"
         "h_evaluations,runtime_ms,seed\n";
  for (const ResultRow& r : rows) {
    out << detail::format_sig9(r.snr_db) << ',' << r.interval << ',' << r.algorithm << ','
        << detail::format_sig9(r.objective) << ',' << detail::format_sig9(r.spectral_efficiency)
        << ',' << detail::format_sig9(r.upper_bound) << ',' << detail::format_sig9(r.ratio) << ','
        << r.h_evaluations << ',' << detail::format_sig9(r.runtime_ms) << ',' << r.seed << '\n';
  }
}

inline void write_json(std::ostream& out, const std::vector<ResultRow>& rows,
                       const Scenario& scenario) {
  nlohmann::json j;
  j["metadata"] = {
      {"channel_model", "iid circularly-symmetric complex Gaussian, unit noise covariance"},
      {"spectral_efficiency", "sum of served rates divided by the RB count"},
      {"algorithm", algorithm_name(scenario.algorithm)},
      {"alphabet", scenario.alphabet == RankKind::gaussian ? "gaussian" : "finite"},
      {"seed", scenario.seed},
      {"intervals", scenario.intervals},
  };
  j["rows"] = nlohmann::json::array();
  for (const ResultRow& r : rows) {
    j["rows"].push_back({{"snr_db", r.snr_db},
                         {"interval", r.interval},
                         {"algorithm", r.algorithm},
                         {"objective", r.objective},
                         {"spectral_efficiency", r.spectral_efficiency},
                         {"upper_bound", r.upper_bound},
                         {"ratio", r.ratio},
                         {"h_evaluations", r.h_evaluations},
                         {"runtime_ms", r.runtime_ms},
                         {"seed", r.seed}});
  }
  out << j.dump(2) << '\n';
}

}  // namespace ulsched

#endif  // ULSCHED_SIM_HPP_

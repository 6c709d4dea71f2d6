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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <vector>

#include "support/instances.hpp"
#include "ulsched/sim.hpp"

using namespace ulsched;

namespace {

Scenario small_scenario() {
  Scenario s;
  s.users = 3;
  s.rbs = 2;
  s.rx_antennas = 2;
  s.tx_antennas = 1;
  s.codebook = Codebook::antenna_selection(1);
  s.total_power.assign(3, 1.0);
  s.constellation_size.assign(3, 4);
  s.control.push_back({{0, 1, 2}, 2});
  s.snr_db = {0.0};
  s.intervals = 3;
  s.seed = 11;
  return s;
}

}  // namespace

TEST_CASE("channel generation is deterministic and dimensioned") {
  const ChannelSet a = generate_channels(42, 10, 20, 4, 2, 1.0);
  const ChannelSet b = generate_channels(42, 10, 20, 4, 2, 1.0);
  CHECK(a.num_users() == 10);
  CHECK(a.num_rbs() == 20);
  CHECK(a.rx_antennas() == 4);
  CHECK(a.tx_antennas() == 2);
  for (int u = 0; u < 10; ++u) {
    for (int n = 0; n < 20; ++n) {
      CHECK(a.at(u, n) == b.at(u, n));
    }
  }
  const ChannelSet c = generate_channels(43, 10, 20, 4, 2, 1.0);
  CHECK(a.at(0, 0) != c.at(0, 0));
}

TEST_CASE("doubling the SNR never shrinks a singleton rate") {
  std::vector<UserProfile> profiles(2);
  const GroundSet ground = build_ground_set(2, Codebook{}, 2, profiles);
  const ChannelSet lo = generate_channels(7, 2, 2, 2, 1, 1.0);
  const ChannelSet hi = generate_channels(7, 2, 2, 2, 1, 2.0);
  const RankFunction f_lo(RankKind::gaussian, ground, lo);
  const RankFunction f_hi(RankKind::gaussian, ground, hi);
  for (ElementIndex e = 0; e < ground.size(); ++e) {
    CHECK(f_hi.value(IndexSet{e}) >= f_lo.value(IndexSet{e}) - 1e-12);
  }
}

TEST_CASE("proportional-fair weights sink for the well-served") {
  PfTracker pf(2, 50.0);
  std::vector<double> weights;
  double previous_weight0 = 0.0;
  for (int t = 0; t < 10; ++t) {
    weights = pf.update({2.0, 0.0});
    if (t > 0) CHECK(weights[0] < previous_weight0);
    previous_weight0 = weights[0];
  }
  CHECK(weights[0] < weights[1]);

  // Symmetric service keeps the weights equal; zero service changes nothing.
  PfTracker even(3, 10.0);
  const auto w1 = even.update({1.0, 1.0, 1.0});
  CHECK(w1[0] == w1[1]);
  CHECK(w1[1] == w1[2]);
  PfTracker idle(2, 10.0);
  const auto wa = idle.update({0.0, 0.0});
  const auto wb = idle.update({0.0, 0.0});
  CHECK(wa[0] == wa[1]);
  CHECK(wb[0] == wb[1]);

  CHECK_THROWS_AS(PfTracker(2, 1.0), std::invalid_argument);
}

TEST_CASE("one interval and one SNR point produce exactly one row") {
  Scenario s = small_scenario();
  s.intervals = 1;
  const auto rows = run_experiment(s);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].interval == 1);
  CHECK(rows[0].snr_db == 0.0);
  CHECK(rows[0].algorithm == "greedy");
  CHECK(rows[0].objective <= rows[0].upper_bound + 1e-9);
  CHECK(rows[0].ratio > 0.0);
  CHECK(rows[0].ratio <= 1.0 + 1e-12);
}

TEST_CASE("emitted rows re-verify: bound dominates and selections are feasible") {
  Scenario s = small_scenario();
  s.snr_db = {0.0, 10.0};
  const auto rows = run_experiment(s);
  REQUIRE(rows.size() == 6);
  for (const auto& row : rows) {
    CHECK(row.objective <= row.upper_bound + 1e-9);
    CHECK(row.runtime_ms == 0.0);  // timing off by default
  }
}

TEST_CASE("identical scenarios write byte-identical CSV") {
  const Scenario s = small_scenario();
  std::ostringstream a;
  std::ostringstream b;
  write_csv(a, run_experiment(s), s);
  write_csv(b, run_experiment(s), s);
  CHECK(a.str() == b.str());
  CHECK(a.str().find("snr_db,interval,algorithm,objective,spectral_efficiency,upper_bound,"
                     "ratio,h_evaluations,runtime_ms,seed") != std::string::npos);
}

TEST_CASE("lazy rows equal eager rows across intervals") {
  Scenario s = small_scenario();
  s.intervals = 3;
  const auto eager_rows = run_experiment(s);
  s.algorithm = SchedulerAlgorithm::lazy;
  const auto lazy_rows = run_experiment(s);
  REQUIRE(eager_rows.size() == lazy_rows.size());
  for (std::size_t i = 0; i < eager_rows.size(); ++i) {
    CHECK(lazy_rows[i].objective == eager_rows[i].objective);
    CHECK(lazy_rows[i].spectral_efficiency == eager_rows[i].spectral_efficiency);
    CHECK(lazy_rows[i].h_evaluations <= eager_rows[i].h_evaluations);
  }
}

TEST_CASE("pruned rows keep half the eager objective at shared weights") {
  // One interval per point: both runs then schedule under the same uniform
  // weights, which is what the half guarantee speaks to.
  Scenario s = small_scenario();
  s.rbs = 4;
  s.intervals = 1;
  s.snr_db = {0.0, 10.0};
  const auto eager_rows = run_experiment(s);
  s.algorithm = SchedulerAlgorithm::pruned;
  const auto pruned_rows = run_experiment(s);
  REQUIRE(eager_rows.size() == pruned_rows.size());
  for (std::size_t i = 0; i < eager_rows.size(); ++i) {
    CHECK(pruned_rows[i].objective >= 0.5 * eager_rows[i].objective - 1e-9);
    CHECK(pruned_rows[i].h_evaluations <= eager_rows[i].h_evaluations);
  }
}

TEST_CASE("exact runs saturate their own bound on tiny scenarios") {
  Scenario s = small_scenario();
  s.users = 2;
  s.rbs = 1;
  s.total_power.assign(2, 1.0);
  s.constellation_size.assign(2, 4);
  s.control.clear();
  s.control.push_back({{0, 1}, 2});
  s.intervals = 1;
  s.algorithm = SchedulerAlgorithm::exact;
  const auto rows = run_experiment(s);
  REQUIRE(rows.size() == 1);
  // Both users selectable and every marginal exhausted: bound == objective.
  CHECK_THAT(rows[0].ratio, Catch::Matchers::WithinAbs(1.0, 1e-9));
}

TEST_CASE("scenario json round trip") {
  const nlohmann::json j = {
      {"users", 2},
      {"rbs", 3},
      {"rx_antennas", 2},
      {"tx_antennas", 2},
      {"codebook", "antenna-selection"},
      {"power", 2.0},
      {"queue", "uncapped"},
      {"constellation_size", 16},
      {"constraints",
       {{"max_scheduled_users", 1},
        {"interference", {{{"users", {0, 1}}, {"coefficient", 0.5}}}}}},
      {"snr_db", {{"from", 0.0}, {"to", 10.0}, {"step", 5.0}}},
      {"intervals", 2},
      {"seed", 17},
      {"algorithm", "lazy"},
      {"alphabet", "finite"},
      {"pf_tau", 25.0},
  };
  const Scenario s = scenario_from_json(j);
  CHECK(s.users == 2);
  CHECK(s.codebook.size() == 2);
  CHECK(s.total_power == std::vector<double>{2.0, 2.0});
  CHECK(s.uncapped_queues);
  CHECK(s.snr_db == std::vector<double>{0.0, 5.0, 10.0});
  CHECK(s.control.size() == 1);
  CHECK(s.control[0].capacity == 1);
  CHECK(s.interference.size() == 1);
  CHECK(s.algorithm == SchedulerAlgorithm::lazy);
  CHECK(s.alphabet == RankKind::finite_alphabet);
  CHECK(s.pf_tau == 25.0);

  nlohmann::json bad = j;
  bad["pf_tau"] = 0.5;
  CHECK_THROWS_AS(scenario_from_json(bad), std::invalid_argument);
}

TEST_CASE("finite-alphabet scheduling never reports more than gaussian") {
  Scenario s = small_scenario();
  s.constellation_size.assign(3, 2);  // tight caps so the bound bites
  s.snr_db = {0.0, 10.0};
  s.intervals = 1;  // shared uniform weights keep the comparison meaningful
  const auto gaussian_rows = run_experiment(s);
  s.alphabet = RankKind::finite_alphabet;
  const auto finite_rows = run_experiment(s);
  REQUIRE(gaussian_rows.size() == finite_rows.size());
  for (std::size_t i = 0; i < gaussian_rows.size(); ++i) {
    CHECK(finite_rows[i].objective <= gaussian_rows[i].objective + 1e-9);
  }
}

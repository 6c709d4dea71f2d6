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

#include <limits>
#include <vector>

#include "ulsched/allocation.hpp"
#include "ulsched/ground_set.hpp"

using namespace ulsched;

namespace {

std::vector<UserProfile> uniform_profiles(int users, int tx = 1) {
  std::vector<UserProfile> out(static_cast<std::size_t>(users));
  for (auto& p : out) p.tx_antennas = tx;
  return out;
}

}  // namespace

TEST_CASE("smallest ground set has one element") {
  const GroundSet g = build_ground_set(1, Codebook{}, 1, uniform_profiles(1));
  REQUIRE(g.size() == 1);
  CHECK(g.element(0).user == 0);
  CHECK(g.element(0).psd == 1.0);
}

TEST_CASE("cardinality is users x codebook x allocations") {
  const GroundSet g =
      build_ground_set(2, Codebook::antenna_selection(2), 3, uniform_profiles(2, 2));
  CHECK(g.size() == 2 * 2 * 7);

  const GroundSet big =
      build_ground_set(10, Codebook::antenna_selection(2), 20, uniform_profiles(10, 2));
  const auto allocations = enumerate_allocations(20);
  CHECK(big.size() == 10 * 2 * static_cast<int>(allocations.size()));
}

TEST_CASE("element order is user-major, then allocation, then precoder") {
  const GroundSet g =
      build_ground_set(2, Codebook::antenna_selection(2), 2, uniform_profiles(2, 2));
  const auto allocations = enumerate_allocations(2);
  const int words = 2;
  for (ElementIndex e = 0; e < g.size(); ++e) {
    const Element& el = g.element(e);
    const int per_user = static_cast<int>(allocations.size()) * words;
    CHECK(el.user == e / per_user);
    CHECK(el.precoder == e % words);
    CHECK(el.allocation == allocations[static_cast<std::size_t>((e % per_user) / words)]);
  }
}

TEST_CASE("two builds from identical inputs agree element by element") {
  const auto build = [] {
    std::vector<UserProfile> profiles = uniform_profiles(3, 2);
    profiles[1].total_power = 2.5;
    return build_ground_set(3, Codebook::antenna_selection(2), 4, profiles);
  };
  const GroundSet a = build();
  const GroundSet b = build();
  REQUIRE(a.size() == b.size());
  for (ElementIndex e = 0; e < a.size(); ++e) {
    CHECK(a.element(e).user == b.element(e).user);
    CHECK(a.element(e).allocation == b.element(e).allocation);
    CHECK(a.element(e).precoder == b.element(e).precoder);
    CHECK(a.element(e).psd == b.element(e).psd);
  }
}

TEST_CASE("psd is the user budget divided by the allocation size") {
  std::vector<UserProfile> profiles = uniform_profiles(1);
  profiles[0].total_power = 6.0;
  const GroundSet g = build_ground_set(1, Codebook{}, 3, profiles);
  for (ElementIndex e = 0; e < g.size(); ++e) {
    CHECK(g.element(e).psd == 6.0 / g.element(e).allocation.size());
  }
}

TEST_CASE("codebook and profile antenna counts must agree") {
  CHECK_THROWS_AS(build_ground_set(1, Codebook::antenna_selection(2), 1, uniform_profiles(1, 1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_ground_set(2, Codebook{}, 1, uniform_profiles(1)), std::invalid_argument);
  CHECK_THROWS_AS(build_ground_set(0, Codebook{}, 1, {}), std::invalid_argument);
}

TEST_CASE("per-user element lists partition the ground set") {
  const GroundSet g =
      build_ground_set(3, Codebook::antenna_selection(2), 2, uniform_profiles(3, 2));
  int total = 0;
  for (int u = 0; u < g.num_users(); ++u) {
    for (ElementIndex e : g.user_elements(u)) CHECK(g.element(e).user == u);
    total += static_cast<int>(g.user_elements(u).size());
  }
  CHECK(total == g.size());
}

TEST_CASE("channel sets reject non-finite entries at validation") {
  ChannelSet channels(1, 1, 1, 1);
  channels.at(0, 0)(0, 0) = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
  CHECK_THROWS_AS(channels.validate_finite(), NumericError);
}

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
#include <random>
#include <vector>

#include "ulsched/antenna_selection.hpp"
#include "ulsched/oracle.hpp"
#include "ulsched/scheduler.hpp"

using namespace ulsched;

namespace {
constexpr double kTol = 1e-9;

CMatrix random_matrix(std::uint64_t seed, int rows, int cols) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  CMatrix h(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) h(r, c) = Complex(gauss(rng), gauss(rng));
  }
  return h;
}

}  // namespace

TEST_CASE("slack cardinality takes every column") {
  const CMatrix h = random_matrix(5, 3, 3);
  AntennaSelectionInstance instance{h, 3, 3.0};  // scale sqrt(3/3) = 1
  const auto greedy = antenna_greedy(instance);
  CHECK(greedy.columns == std::vector<int>{0, 1, 2});
  const CMatrix acc = CMatrix::Identity(3, 3) + h * h.adjoint();
  CHECK_THAT(greedy.value, Catch::Matchers::WithinAbs(std::log2(acc.determinant().real()), 1e-8));
}

TEST_CASE("the stronger of two orthogonal columns wins at cardinality one") {
  CMatrix h(2, 2);
  h << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(2, 0);
  AntennaSelectionInstance instance{h, 1, 1.0};
  const auto greedy = antenna_greedy(instance);
  const auto exact = antenna_exact(instance);
  CHECK(greedy.columns == std::vector<int>{1});
  CHECK(exact.columns == std::vector<int>{1});
  CHECK_THAT(greedy.value, Catch::Matchers::WithinAbs(std::log2(5.0), kTol));
  CHECK_THAT(exact.value, Catch::Matchers::WithinAbs(std::log2(5.0), kTol));
}

TEST_CASE("a zero column never beats a live one") {
  CMatrix h = CMatrix::Zero(2, 2);
  h(0, 1) = Complex(0.8, -0.4);
  AntennaSelectionInstance instance{h, 1, 1.0};
  CHECK(antenna_greedy(instance).columns == std::vector<int>{1});
}

TEST_CASE("cardinality one reduces to the max-norm column") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const CMatrix h = random_matrix(seed, 3, 5);
    AntennaSelectionInstance instance{h, 1, 1.0};
    const auto exact = antenna_exact(instance);
    int best = 0;
    for (int c = 1; c < 5; ++c) {
      if (h.col(c).squaredNorm() > h.col(best).squaredNorm()) best = c;
    }
    CHECK(exact.columns == std::vector<int>{best});
    CHECK_THAT(exact.value,
               Catch::Matchers::WithinAbs(std::log2(1.0 + h.col(best).squaredNorm()), 1e-8));
  }
}

TEST_CASE("identity channels make any subset optimal at value C") {
  const CMatrix h = CMatrix::Identity(4, 4);
  for (int c = 1; c <= 4; ++c) {
    AntennaSelectionInstance instance{h, c, static_cast<double>(c)};  // scale 1
    const auto greedy = antenna_greedy(instance);
    const auto exact = antenna_exact(instance);
    CHECK_THAT(greedy.value, Catch::Matchers::WithinAbs(static_cast<double>(c), kTol));
    CHECK_THAT(exact.value, Catch::Matchers::WithinAbs(static_cast<double>(c), kTol));
    std::vector<int> first;
    for (int i = 0; i < c; ++i) first.push_back(i);
    CHECK(greedy.columns == first);  // index tie-break
    CHECK(exact.columns == first);   // lexicographic tie-break
  }
}

TEST_CASE("both determinant routes agree") {
  for (std::uint64_t seed = 20; seed <= 30; ++seed) {
    const CMatrix h = random_matrix(seed, 4, 6);
    std::mt19937_64 rng(seed * 31);
    std::vector<int> subset;
    for (int c = 0; c < 6; ++c) {
      if (std::bernoulli_distribution(0.5)(rng)) subset.push_back(c);
    }
    if (subset.empty()) subset.push_back(0);
    // Route 1: I_rx + H_S H_S^H.
    CMatrix acc = CMatrix::Identity(4, 4);
    for (int c : subset) acc += h.col(c) * h.col(c).adjoint();
    // Route 2: principal minor of I_cols + H^H H.
    const CMatrix gram = CMatrix::Identity(6, 6) + h.adjoint() * h;
    CMatrix minor(subset.size(), subset.size());
    for (std::size_t r = 0; r < subset.size(); ++r) {
      for (std::size_t c = 0; c < subset.size(); ++c) {
        minor(r, c) = gram(subset[r], subset[c]);
      }
    }
    CHECK_THAT(log2_det_hermitian(acc),
               Catch::Matchers::WithinAbs(log2_det_hermitian(minor), kTol));
  }
}

TEST_CASE("greedy keeps half the exact value on random instances") {
  for (std::uint64_t seed = 40; seed <= 60; ++seed) {
    const int cols = 4 + static_cast<int>(seed % 5);
    const CMatrix h = random_matrix(seed, 4, cols);
    for (int c = 1; c <= cols; ++c) {
      AntennaSelectionInstance instance{h, c, 2.0};
      const auto greedy = antenna_greedy(instance);
      const auto exact = antenna_exact(instance);
      CHECK(greedy.value >= 0.5 * exact.value - kTol);
      CHECK(greedy.value <= exact.value + kTol);
    }
  }
}

TEST_CASE("the ground-set encoding reproduces the dedicated greedy") {
  for (std::uint64_t seed = 70; seed <= 80; ++seed) {
    const int cols = 3 + static_cast<int>(seed % 4);
    const CMatrix h = random_matrix(seed, 3, cols);
    AntennaSelectionInstance instance{h, 2, 4.0};
    const auto direct = antenna_greedy(instance);

    const AntennaGroundEncoding enc = antenna_ground_encoding(instance);
    const RankFunction f(RankKind::gaussian, enc.ground, enc.channels);
    const CappedRankFunction capped(f, enc.element_queues);
    const WeightedRateUtility utility(enc.ground, enc.user_weights, capped);
    const auto scheduled = greedy_schedule(utility, enc.knapsacks);

    IndexSet expected;
    for (int c : direct.columns) expected.push_back(c);
    CHECK(scheduled.selected == expected);
    CHECK_THAT(scheduled.objective, Catch::Matchers::WithinAbs(direct.value, 1e-12));
  }
}

TEST_CASE("budget and argument validation") {
  const CMatrix h = random_matrix(1, 2, 21);
  CHECK_THROWS_AS(antenna_exact(AntennaSelectionInstance{h, 2, 1.0}), CapacityError);
  CHECK_THROWS_AS(antenna_greedy(AntennaSelectionInstance{h, 0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(antenna_greedy(AntennaSelectionInstance{h, 1, -1.0}), std::invalid_argument);
}

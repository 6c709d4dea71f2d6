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

#ifndef ULSCHED_ANTENNA_SELECTION_HPP_
#define ULSCHED_ANTENNA_SELECTION_HPP_

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ulsched/constraints.hpp"
#include "ulsched/errors.hpp"
#include "ulsched/ground_set.hpp"
#include "ulsched/linalg.hpp"
#include "ulsched/rank_functions.hpp"

namespace ulsched {

// Cardinality-constrained column selection maximizing log2 det(I + H_S H_S^H):
// pick at most `cardinality` transmit antennas (columns of `channel`). The SNR
// enters as the scale sqrt(snr / cardinality) absorbed into the matrix.
struct AntennaSelectionInstance {
  CMatrix channel;      // receive antennas x candidate columns
  int cardinality = 1;  // 1 <= C <= columns
  double snr = 1.0;     // linear

  CMatrix scaled() const {
    if (cardinality < 1 || cardinality > channel.cols()) {
      throw std::invalid_argument("AntennaSelectionInstance: cardinality out of range");
    }
    if (!(snr > 0.0)) throw std::invalid_argument("AntennaSelectionInstance: SNR must be positive");
    return std::sqrt(snr / static_cast<double>(cardinality)) * channel;
  }
};

struct AntennaSelectionResult {
  std::vector<int> columns;  // ascending
  double value = 0.0;        // log2 det(I + H_S H_S^H)
};

namespace detail {

inline double column_subset_value(const CMatrix& h, const std::vector<int>& columns,
                                  double tol = 1e-12) {
  CMatrix acc = CMatrix::Identity(h.rows(), h.rows());
  for (int c : columns) {
    acc.noalias() += h.col(c) * h.col(c).adjoint();
  }
  return log2_det_hermitian(acc, tol);
}

}  // namespace detail

// Incremental selection: add the column with the largest log-det gain until
// the cardinality is reached or no column offers a positive gain. Ties go to
// the lowest column index.
inline AntennaSelectionResult antenna_greedy(const AntennaSelectionInstance& instance) {
  const CMatrix h = instance.scaled();
  const int total = static_cast<int>(h.cols());
  AntennaSelectionResult result;
  std::vector<bool> taken(static_cast<std::size_t>(total), false);
  while (static_cast<int>(result.columns.size()) < instance.cardinality) {
    int best_c = -1;
    double best_v = 0.0;
    for (int c = 0; c < total; ++c) {
      if (taken[static_cast<std::size_t>(c)]) continue;
      std::vector<int> trial = result.columns;
      trial.insert(std::lower_bound(trial.begin(), trial.end(), c), c);
      const double v = detail::column_subset_value(h, trial);
      if (best_c < 0 || v > best_v) {
        best_c = c;
        best_v = v;
      }
    }
    if (best_c < 0 || !(best_v - result.value > 0.0)) break;
    taken[static_cast<std::size_t>(best_c)] = true;
    result.columns.insert(std::lower_bound(result.columns.begin(), result.columns.end(), best_c),
                          best_c);
    result.value = best_v;
  }
  return result;
}

// Exhaustive search over all cardinality-sized column subsets, computed on
// the equivalent form: the value of subset S is the log2 determinant of the
// principal submatrix of I + H^H H indexed by S. Ties go to the
// lexicographically smallest subset.
inline AntennaSelectionResult antenna_exact(const AntennaSelectionInstance& instance,
                                            int max_columns = 20) {
  const CMatrix h = instance.scaled();
  const int total = static_cast<int>(h.cols());
  if (total > max_columns) {
    throw CapacityError("antenna_exact: column count exceeds budget");
  }
  const CMatrix gram = CMatrix::Identity(total, total) + h.adjoint() * h;

  AntennaSelectionResult best;
  bool have_best = false;
  std::vector<int> pick(static_cast<std::size_t>(instance.cardinality));
  for (int i = 0; i < instance.cardinality; ++i) pick[static_cast<std::size_t>(i)] = i;
  for (;;) {
    CMatrix minor(instance.cardinality, instance.cardinality);
    for (int r = 0; r < instance.cardinality; ++r) {
      for (int c = 0; c < instance.cardinality; ++c) {
        minor(r, c) = gram(pick[static_cast<std::size_t>(r)], pick[static_cast<std::size_t>(c)]);
      }
    }
    const double v = log2_det_hermitian(minor);
    if (!have_best || v > best.value) {
      best.value = v;
      best.columns = pick;
      have_best = true;
    }
    // Next combination in lexicographic order.
    int i = instance.cardinality - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == total - instance.cardinality + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < instance.cardinality; ++j) {
      pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return best;
}

// The same problem expressed on the scheduling machinery: one single-antenna
// user per column on a single RB with a degenerate codebook, unit powers and
// a single control row capping the selection size.
struct AntennaGroundEncoding {
  GroundSet ground;
  ChannelSet channels;
  KnapsackSystem knapsacks;
  std::vector<double> user_weights;
  std::vector<double> element_queues;
};

inline AntennaGroundEncoding antenna_ground_encoding(const AntennaSelectionInstance& instance) {
  const CMatrix h = instance.scaled();
  const int cols = static_cast<int>(h.cols());
  const int rx = static_cast<int>(h.rows());
  AntennaGroundEncoding enc{
      GroundSet{},
      ChannelSet(cols, 1, rx, 1),
      KnapsackSystem{},
      std::vector<double>(static_cast<std::size_t>(cols), 1.0),
      {}};
  for (int c = 0; c < cols; ++c) enc.channels.at(c, 0) = h.col(c);
  std::vector<UserProfile> profiles(static_cast<std::size_t>(cols));
  enc.ground = build_ground_set(cols, Codebook{}, 1, std::move(profiles));
  ControlRow row;
  for (ElementIndex e = 0; e < enc.ground.size(); ++e) row.support.push_back(e);
  row.capacity = instance.cardinality;
  enc.knapsacks = KnapsackSystem(enc.ground.size(), {std::move(row)}, {});
  enc.element_queues.assign(static_cast<std::size_t>(enc.ground.size()),
                            uncapped_queue_sentinel(enc.ground, enc.channels));
  return enc;
}

}  // namespace ulsched

#endif  // ULSCHED_ANTENNA_SELECTION_HPP_

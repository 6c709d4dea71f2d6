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

#ifndef ULSCHED_ORACLE_HPP_
#define ULSCHED_ORACLE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ulsched/constraints.hpp"
#include "ulsched/errors.hpp"
#include "ulsched/scheduler.hpp"
#include "ulsched/utility.hpp"

namespace ulsched {

// Limits for the exponential-time verifiers; enforced before any loop runs.
struct OracleBudget {
  int max_ground_size = 20;  // exhaustive scheduling
  int max_subset_size = 8;   // rate-region membership / corner enumeration
};

// Exhaustive maximization over all feasible subsets, pruned by downward
// closure (no superset of an infeasible set is visited). Ties are resolved
// to the lexicographically smallest index set, which is the first maximum
// found by the depth-first preorder walk.
inline ScheduleOutcome exact_schedule(const WeightedRateUtility& utility,
                                      const KnapsackSystem& knapsacks,
                                      OracleBudget budget = {}) {
  const GroundSet& ground = utility.ground();
  if (ground.size() > budget.max_ground_size) {
    throw CapacityError("exact_schedule: ground set exceeds oracle budget");
  }
  if (ground.size() != knapsacks.ground_size() && knapsacks.ground_size() != 0) {
    throw std::invalid_argument("exact_schedule: constraint system size mismatch");
  }
  const PartitionMatroid matroid(ground);
  auto used = matroid.make_state();
  auto load = knapsacks.make_state();

  ScheduleOutcome out;
  IndexSet current;
  IndexSet best_set;
  double best_v = 0.0;
  ++out.evaluations;  // the empty set

  const std::function<void(ElementIndex)> walk = [&](ElementIndex first) {
    for (ElementIndex e = first; e < ground.size(); ++e) {
      if (!matroid.can_add(used, e) || !knapsacks.can_add(load, e)) continue;
      current.push_back(e);
      matroid.add(used, e);
      knapsacks.add(load, e);
      const double v = utility.value(current);
      ++out.evaluations;
      if (v > best_v) {
        best_v = v;
        best_set = current;
      }
      walk(e + 1);
      current.pop_back();
      used[static_cast<std::size_t>(ground.element(e).user)] = 0;
      // Rebuild the knapsack load without e; exact integer/float state beats
      // incremental subtraction at these sizes.
      load = knapsacks.make_state();
      for (ElementIndex kept : current) knapsacks.add(load, kept);
    }
  };
  walk(0);

  out.selected = std::move(best_set);
  out.objective = best_v;
  out.rates = utility.corner_rates(out.selected);
  out.trace.push_back({});
  IndexSet prefix;
  for (ElementIndex e : out.selected) {
    prefix = with_element(prefix, e);
    out.trace.push_back(prefix);
  }
  return out;
}

// Membership test for the queue-capped rate region: every subset inequality
// sum_{e in A} r_e <= rank'(A) plus the per-element box 0 <= r_e <= Q_e.
inline bool verify_rate_region_membership(IndexView subset, const RateTuple& rates,
                                          const CappedRankFunction& rank,
                                          OracleBudget budget = {}, double tol = 1e-9) {
  if (static_cast<int>(subset.size()) > budget.max_subset_size) {
    throw CapacityError("verify_rate_region_membership: subset exceeds oracle budget");
  }
  if (rates.elements.size() != subset.size() ||
      !std::equal(subset.begin(), subset.end(), rates.elements.begin())) {
    throw std::invalid_argument("verify_rate_region_membership: rate tuple does not match subset");
  }
  const int m = static_cast<int>(subset.size());
  for (int i = 0; i < m; ++i) {
    const double r = rates.rates[static_cast<std::size_t>(i)];
    if (r < -tol || r > rank.queue(subset[static_cast<std::size_t>(i)]) + tol) return false;
  }
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << m); ++mask) {
    double sum = 0.0;
    for (int i = 0; i < m; ++i) {
      if (mask & (std::uint32_t{1} << i)) sum += rates.rates[static_cast<std::size_t>(i)];
    }
    if (sum > rank.value(masked_subset(subset, mask)) + tol) return false;
  }
  return true;
}

struct SubmodularityWitness {
  std::string property;  // "normalization" | "monotonicity" | "submodularity"
  std::uint32_t set_a = 0;
  std::uint32_t set_b = 0;
  int element = -1;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct SubmodularityReport {
  bool ok = true;
  std::optional<SubmodularityWitness> witness;
};

// Exhaustive rank-function check of a set function given over bitmask
// subsets of {0..universe_size-1}: normalization at the empty set,
// monotonicity along every single-element extension, and the diminishing
// marginal inequality over every (A subseteq B, e not in B) triple.
inline SubmodularityReport verify_submodular(const std::function<double(std::uint32_t)>& fn,
                                             int universe_size, double tol = 1e-9) {
  if (universe_size < 0 || universe_size > 12) {
    throw std::invalid_argument("verify_submodular: universe size must be in [0, 12]");
  }
  const std::uint32_t full = std::uint32_t{1} << universe_size;
  std::vector<double> value(full);
  for (std::uint32_t s = 0; s < full; ++s) value[s] = fn(s);

  if (std::abs(value[0]) > tol) {
    return {false, SubmodularityWitness{"normalization", 0, 0, -1, value[0], 0.0}};
  }
  for (std::uint32_t b = 0; b < full; ++b) {
    for (int e = 0; e < universe_size; ++e) {
      const std::uint32_t bit = std::uint32_t{1} << e;
      if (b & bit) continue;
      if (value[b] > value[b | bit] + tol) {
        return {false, SubmodularityWitness{"monotonicity", b, b | bit, e, value[b], value[b | bit]}};
      }
    }
  }
  for (std::uint32_t b = 0; b < full; ++b) {
    for (int e = 0; e < universe_size; ++e) {
      const std::uint32_t bit = std::uint32_t{1} << e;
      if (b & bit) continue;
      const double upper_gain = value[b | bit] - value[b];
      // All A subseteq B via submask enumeration.
      std::uint32_t a = b;
      for (;;) {
        const double lower_gain = value[a | bit] - value[a];
        if (lower_gain < upper_gain - tol) {
          return {false,
                  SubmodularityWitness{"submodularity", a, b, e, lower_gain, upper_gain}};
        }
        if (a == 0) break;
        a = (a - 1) & b;
      }
    }
  }
  return {};
}

// Exhaustive corner-point maximization of the weighted sum rate over the
// queue-capped region: evaluates the greedy rate assignment for every
// insertion order of the subset and keeps the best weighted sum. Independent
// of the weight-sorted expansion it cross-checks.
inline double max_weighted_sum_over_corners(IndexView subset, const WeightedRateUtility& utility,
                                            OracleBudget budget = {}) {
  if (static_cast<int>(subset.size()) > budget.max_subset_size) {
    throw CapacityError("max_weighted_sum_over_corners: subset exceeds oracle budget");
  }
  IndexSet perm(subset.begin(), subset.end());
  std::sort(perm.begin(), perm.end());
  const CappedRankFunction& rank = utility.rank();
  double best = 0.0;
  bool first = true;
  do {
    IndexSet prefix;
    double prev = 0.0;
    double weighted = 0.0;
    for (ElementIndex e : perm) {
      prefix = with_element(prefix, e);
      const double cur = rank.value(prefix);
      weighted += utility.element_weight(e) * (cur - prev);
      prev = cur;
    }
    if (first || weighted > best) best = weighted;
    first = false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace ulsched

#endif  // ULSCHED_ORACLE_HPP_

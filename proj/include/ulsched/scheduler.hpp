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

#ifndef ULSCHED_SCHEDULER_HPP_
#define ULSCHED_SCHEDULER_HPP_

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ulsched/constraints.hpp"
#include "ulsched/ground_set.hpp"
#include "ulsched/index_set.hpp"
#include "ulsched/utility.hpp"

namespace ulsched {

struct ScheduleOutcome {
  IndexSet selected;             // ascending element indices
  RateTuple rates;
  double objective = 0.0;        // utility value of `selected`
  std::int64_t evaluations = 0;  // utility evaluations requested by the algorithm
  std::optional<double> upper_bound;
  std::vector<IndexSet> trace;   // selection prefixes, empty set first
};

namespace detail {

inline void finalize_outcome(ScheduleOutcome& out, const WeightedRateUtility& utility) {
  out.rates = utility.corner_rates(out.selected);
}

}  // namespace detail

// One pass of the greedy selection loop: at every step evaluate the utility
// of each feasible augmentation, take the best (ties to the lowest element
// index), stop as soon as the best marginal is nonpositive or no feasible
// element remains. At most one element per user can enter, so the loop runs
// at most K times.
inline ScheduleOutcome greedy_schedule(const WeightedRateUtility& utility,
                                       const KnapsackSystem& knapsacks) {
  const GroundSet& ground = utility.ground();
  if (ground.size() != knapsacks.ground_size() && knapsacks.ground_size() != 0) {
    throw std::invalid_argument("greedy_schedule: constraint system size mismatch");
  }
  const PartitionMatroid matroid(ground);
  auto used = matroid.make_state();
  auto load = knapsacks.make_state();
  std::vector<std::uint8_t> discarded(static_cast<std::size_t>(ground.size()), 0);

  ScheduleOutcome out;
  out.trace.push_back({});
  IndexSet selected;
  double current = 0.0;
  for (;;) {
    ElementIndex best_e = -1;
    double best_v = 0.0;
    for (ElementIndex e = 0; e < ground.size(); ++e) {
      if (discarded[static_cast<std::size_t>(e)]) continue;
      if (!matroid.can_add(used, e) || !knapsacks.can_add(load, e)) {
        discarded[static_cast<std::size_t>(e)] = 1;  // stays infeasible as S grows
        continue;
      }
      const double v = utility.value(with_element(selected, e));
      ++out.evaluations;
      if (best_e < 0 || v > best_v) {
        best_e = e;
        best_v = v;
      }
    }
    if (best_e < 0 || !(best_v - current > 0.0)) break;
    selected = with_element(selected, best_e);
    matroid.add(used, best_e);
    knapsacks.add(load, best_e);
    discarded[static_cast<std::size_t>(best_e)] = 1;
    current = best_v;
    out.trace.push_back(selected);
  }
  out.selected = std::move(selected);
  out.objective = current;
  detail::finalize_outcome(out, utility);
  return out;
}

// Same selection rule as greedy_schedule, driven by a priority queue of stale
// marginal gains. An entry popped with an up-to-date gain dominates every
// remaining stale bound (marginals only shrink as the selection grows), so it
// is selected without touching the rest. Produces the identical outcome under
// the shared index tie-break with at most as many utility evaluations.
inline ScheduleOutcome lazy_greedy_schedule(const WeightedRateUtility& utility,
                                            const KnapsackSystem& knapsacks) {
  const GroundSet& ground = utility.ground();
  if (ground.size() != knapsacks.ground_size() && knapsacks.ground_size() != 0) {
    throw std::invalid_argument("lazy_greedy_schedule: constraint system size mismatch");
  }
  const PartitionMatroid matroid(ground);
  auto used = matroid.make_state();
  auto load = knapsacks.make_state();

  struct Entry {
    double gain;    // priority: stale upper bound or fresh marginal
    double value;   // utility of (selected + element) when fresh
    ElementIndex element;
    int epoch;  // |selected| when the entry was computed; -1 = never
  };
  struct Worse {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.gain != b.gain) return a.gain < b.gain;
      return a.element > b.element;
    }
  };
  std::priority_queue<Entry, std::vector<Entry>, Worse> heap;
  for (ElementIndex e = 0; e < ground.size(); ++e) {
    heap.push({std::numeric_limits<double>::infinity(), 0.0, e, -1});
  }

  ScheduleOutcome out;
  out.trace.push_back({});
  IndexSet selected;
  double current = 0.0;
  while (!heap.empty()) {
    const Entry top = heap.top();
    heap.pop();
    if (!matroid.can_add(used, top.element) || !knapsacks.can_add(load, top.element)) {
      continue;  // infeasible now, infeasible forever
    }
    if (top.epoch == static_cast<int>(selected.size())) {
      if (!(top.gain > 0.0)) break;  // every remaining gain is at most this one
      selected = with_element(selected, top.element);
      matroid.add(used, top.element);
      knapsacks.add(load, top.element);
      current = top.value;  // the evaluated utility, matching the eager path
      out.trace.push_back(selected);
      continue;
    }
    const double v = utility.value(with_element(selected, top.element));
    ++out.evaluations;
    heap.push({v - current, v, top.element, static_cast<int>(selected.size())});
  }
  out.selected = std::move(selected);
  out.objective = current;
  detail::finalize_outcome(out, utility);
  return out;
}

namespace detail {

// For each two-chunk element, the indices of the single-chunk elements with
// the same user and precoder covering its two runs, when both exist.
inline std::vector<std::array<ElementIndex, 2>> two_chunk_pieces(const GroundSet& ground) {
  struct KeyHash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const noexcept {
      std::uint64_t h = k.first * 0x9e3779b97f4a7c15ull;
      h ^= k.second + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      return static_cast<std::size_t>(h);
    }
  };
  std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, ElementIndex, KeyHash> singles;
  const auto key = [](const Element& el, std::uint64_t mask) {
    const std::uint64_t tag =
        (static_cast<std::uint64_t>(el.user) << 20) | static_cast<std::uint64_t>(el.precoder);
    return std::make_pair(tag, mask);
  };
  for (ElementIndex e = 0; e < ground.size(); ++e) {
    const Element& el = ground.element(e);
    if (el.allocation.chunk_count() == 1) singles.emplace(key(el, el.allocation.mask), e);
  }
  std::vector<std::array<ElementIndex, 2>> pieces(static_cast<std::size_t>(ground.size()),
                                                  {ElementIndex{-1}, ElementIndex{-1}});
  for (ElementIndex e = 0; e < ground.size(); ++e) {
    const Element& el = ground.element(e);
    if (el.allocation.chunk_count() != 2) continue;
    const auto runs = el.allocation.chunks();
    const std::uint64_t lo_mask =
        ((std::uint64_t{1} << (runs[0].second - runs[0].first + 1)) - 1) << runs[0].first;
    const std::uint64_t hi_mask = el.allocation.mask ^ lo_mask;
    const auto lo = singles.find(key(el, lo_mask));
    const auto hi = singles.find(key(el, hi_mask));
    if (lo != singles.end() && hi != singles.end()) {
      pieces[static_cast<std::size_t>(e)] = {lo->second, hi->second};
    }
  }
  return pieces;
}

}  // namespace detail

// Greedy with the subadditivity shortcut: the utility of extending by a
// two-chunk element is at most twice the better of its two single-chunk
// pieces, so when both pieces were already evaluated this step the two-chunk
// candidate is skipped. The element taken each step is then within a factor
// 1/2 of the step-optimal marginal; evaluations never exceed the plain
// greedy count.
inline ScheduleOutcome pruned_greedy_schedule(const WeightedRateUtility& utility,
                                              const KnapsackSystem& knapsacks) {
  const GroundSet& ground = utility.ground();
  if (ground.size() != knapsacks.ground_size() && knapsacks.ground_size() != 0) {
    throw std::invalid_argument("pruned_greedy_schedule: constraint system size mismatch");
  }
  const PartitionMatroid matroid(ground);
  const auto pieces = detail::two_chunk_pieces(ground);
  auto used = matroid.make_state();
  auto load = knapsacks.make_state();
  std::vector<std::uint8_t> discarded(static_cast<std::size_t>(ground.size()), 0);
  std::vector<int> eval_epoch(static_cast<std::size_t>(ground.size()), -1);

  ScheduleOutcome out;
  out.trace.push_back({});
  IndexSet selected;
  double current = 0.0;
  int step = 0;
  for (;; ++step) {
    ElementIndex best_e = -1;
    double best_v = 0.0;
    const auto consider = [&](ElementIndex e, double v) {
      if (best_e < 0 || v > best_v || (v == best_v && e < best_e)) {
        best_e = e;
        best_v = v;
      }
    };
    // Single-chunk candidates first so the two-chunk pass can reuse them.
    for (int pass = 0; pass < 2; ++pass) {
      for (ElementIndex e = 0; e < ground.size(); ++e) {
        if (discarded[static_cast<std::size_t>(e)]) continue;
        const bool two_chunk = ground.element(e).allocation.chunk_count() == 2;
        if ((pass == 0) == two_chunk) continue;
        if (!matroid.can_add(used, e) || !knapsacks.can_add(load, e)) {
          discarded[static_cast<std::size_t>(e)] = 1;
          continue;
        }
        if (two_chunk) {
          const auto& [lo, hi] = pieces[static_cast<std::size_t>(e)];
          if (lo >= 0 && eval_epoch[static_cast<std::size_t>(lo)] == step &&
              eval_epoch[static_cast<std::size_t>(hi)] == step) {
            continue;  // bounded by 2 * max of the evaluated pieces
          }
        }
        const double v = utility.value(with_element(selected, e));
        ++out.evaluations;
        eval_epoch[static_cast<std::size_t>(e)] = step;
        consider(e, v);
      }
    }
    if (best_e < 0 || !(best_v - current > 0.0)) break;
    selected = with_element(selected, best_e);
    matroid.add(used, best_e);
    knapsacks.add(load, best_e);
    discarded[static_cast<std::size_t>(best_e)] = 1;
    current = best_v;
    out.trace.push_back(selected);
  }
  out.selected = std::move(selected);
  out.objective = current;
  detail::finalize_outcome(out, utility);
  return out;
}

// Instance-specific upper bound on the constrained optimum, evaluated from a
// trace of selection prefixes: for each prefix S, the optimum is at most
//   value(S) + sum of the largest positive marginals over E \ S,
// where the sum keeps at most one marginal per user, at most `capacity`
// marginals per control region when the control rows are user-aligned
// disjoint regions, and at most B marginals overall with B the cardinality
// of the largest feasible set (user count, further capped by the total
// control capacity when every element sits in a control row). Each prefix
// yields a valid bound by monotonicity and submodularity; the minimum over
// the trace is returned.
inline double data_dependent_upper_bound(const WeightedRateUtility& utility,
                                         const KnapsackSystem& knapsacks,
                                         const std::vector<IndexSet>& trace) {
  const GroundSet& ground = utility.ground();
  long long budget = ground.num_users();
  if (knapsacks.num_control_rows() > 0 && knapsacks.control_rows_cover_ground()) {
    budget = std::min(budget, knapsacks.total_control_capacity());
  }

  // Control regions usable for per-region capping: disjoint, user-aligned.
  std::vector<int> region_of_user;
  std::vector<int> region_capacity;
  if (knapsacks.num_control_rows() > 0 && knapsacks.assumptions_hold().ok &&
      ground.size() == knapsacks.ground_size()) {
    region_of_user.assign(static_cast<std::size_t>(ground.num_users()), -1);
    bool aligned = true;
    for (int r = 0; r < knapsacks.num_control_rows() && aligned; ++r) {
      for (ElementIndex e : knapsacks.control_row(r).support) {
        const int u = ground.element(e).user;
        int& reg = region_of_user[static_cast<std::size_t>(u)];
        if (reg == -1) {
          reg = r;
        } else if (reg != r) {
          aligned = false;  // a user's elements straddle regions
          break;
        }
      }
    }
    if (aligned) {
      region_capacity.resize(static_cast<std::size_t>(knapsacks.num_control_rows()));
      for (int r = 0; r < knapsacks.num_control_rows(); ++r) {
        region_capacity[static_cast<std::size_t>(r)] = knapsacks.control_row(r).capacity;
      }
    } else {
      region_of_user.clear();
    }
  }

  double best = std::numeric_limits<double>::infinity();
  const std::vector<IndexSet> root{IndexSet{}};
  for (const IndexSet& prefix : trace.empty() ? root : trace) {
    const double base = utility.value(prefix);
    std::vector<double> user_gain(static_cast<std::size_t>(ground.num_users()), 0.0);
    for (ElementIndex e = 0; e < ground.size(); ++e) {
      if (contains(prefix, e) || !knapsacks.singleton_feasible(e)) continue;
      const double gain = utility.value(with_element(prefix, e)) - base;
      double& slot = user_gain[static_cast<std::size_t>(ground.element(e).user)];
      if (gain > slot) slot = gain;
    }
    std::vector<double> gains;
    if (!region_of_user.empty()) {
      std::vector<std::vector<double>> per_region(region_capacity.size());
      for (int u = 0; u < ground.num_users(); ++u) {
        const double g = user_gain[static_cast<std::size_t>(u)];
        if (g <= 0.0) continue;
        const int r = region_of_user[static_cast<std::size_t>(u)];
        if (r >= 0) {
          per_region[static_cast<std::size_t>(r)].push_back(g);
        } else {
          gains.push_back(g);
        }
      }
      for (std::size_t r = 0; r < per_region.size(); ++r) {
        auto& v = per_region[r];
        std::sort(v.begin(), v.end(), std::greater<>());
        const std::size_t keep =
            std::min(v.size(), static_cast<std::size_t>(std::max(0, region_capacity[r])));
        gains.insert(gains.end(), v.begin(), v.begin() + static_cast<std::ptrdiff_t>(keep));
      }
    } else {
      for (double g : user_gain) {
        if (g > 0.0) gains.push_back(g);
      }
    }
    std::sort(gains.begin(), gains.end(), std::greater<>());
    double total = base;
    const std::size_t keep = std::min(gains.size(), static_cast<std::size_t>(std::max<long long>(0, budget)));
    for (std::size_t i = 0; i < keep; ++i) total += gains[i];
    if (total < best) best = total;
  }
  return best;
}

}  // namespace ulsched

#endif  // ULSCHED_SCHEDULER_HPP_

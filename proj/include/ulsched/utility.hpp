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

#ifndef ULSCHED_UTILITY_HPP_
#define ULSCHED_UTILITY_HPP_

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ulsched/ground_set.hpp"
#include "ulsched/index_set.hpp"
#include "ulsched/rank_functions.hpp"

namespace ulsched {

// Achievable rate assignment for a selected subset.
struct RateTuple {
  IndexSet elements;          // ascending element indices
  std::vector<double> rates;  // aligned with `elements`, bits per N RBs

  double total() const {
    double t = 0.0;
    for (double r : rates) t += r;
    return t;
  }
};

// Maximum weighted sum rate of a subset over the queue-capped rate region,
// evaluated as the weight-ordered prefix expansion
//   sum_k (a_k - a_{k+1}) * rank'(first k elements by non-increasing weight)
// with a_{|U|+1} = 0; the maximizing assignment is the matching corner point.
// Weight ties are broken by ascending element index, which fixes the rate
// tuple but not the value (equal-weight difference terms vanish).
class WeightedRateUtility {
 public:
  WeightedRateUtility(const GroundSet& ground, std::vector<double> user_weights,
                      const CappedRankFunction& rank)
      : ground_(&ground), rank_(&rank), user_weights_(std::move(user_weights)) {
    if (static_cast<int>(user_weights_.size()) != ground.num_users()) {
      throw std::invalid_argument("WeightedRateUtility: weight count != user count");
    }
    for (double w : user_weights_) {
      if (!(w >= 0.0)) throw std::invalid_argument("WeightedRateUtility: negative weight");
    }
  }

  const GroundSet& ground() const { return *ground_; }
  const CappedRankFunction& rank() const { return *rank_; }
  double element_weight(ElementIndex e) const {
    return user_weights_[static_cast<std::size_t>(ground_->element(e).user)];
  }
  const std::vector<double>& user_weights() const { return user_weights_; }

  // Permutation of `subset` by non-increasing weight, ties by ascending index.
  IndexSet weighted_order(IndexView subset) const {
    IndexSet order(subset.begin(), subset.end());
    std::stable_sort(order.begin(), order.end(), [this](ElementIndex a, ElementIndex b) {
      const double wa = element_weight(a);
      const double wb = element_weight(b);
      if (wa != wb) return wa > wb;
      return a < b;
    });
    return order;
  }

  double value(IndexView subset) const {
    if (subset.empty()) return 0.0;
    IndexSet key(subset.begin(), subset.end());
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    const IndexSet order = weighted_order(subset);
    double total = 0.0;
    IndexSet prefix;
    for (std::size_t k = 0; k < order.size(); ++k) {
      prefix = with_element(prefix, order[k]);
      const double wk = element_weight(order[k]);
      const double wnext = k + 1 < order.size() ? element_weight(order[k + 1]) : 0.0;
      if (wk != wnext) total += (wk - wnext) * rank_->value(prefix);
    }
    cache_.emplace(std::move(key), total);
    return total;
  }

  // The corner point achieving value(): successive rank' increments along the
  // weight order, reported in ascending element order.
  RateTuple corner_rates(IndexView subset) const {
    RateTuple out;
    out.elements.assign(subset.begin(), subset.end());
    out.rates.assign(subset.size(), 0.0);
    const IndexSet order = weighted_order(subset);
    IndexSet prefix;
    double prev = 0.0;
    for (ElementIndex e : order) {
      prefix = with_element(prefix, e);
      const double cur = rank_->value(prefix);
      const double rate = std::max(0.0, cur - prev);
      prev = cur;
      const auto it = std::lower_bound(out.elements.begin(), out.elements.end(), e);
      out.rates[static_cast<std::size_t>(it - out.elements.begin())] = rate;
    }
    return out;
  }

 private:
  const GroundSet* ground_;
  const CappedRankFunction* rank_;
  std::vector<double> user_weights_;
  mutable std::unordered_map<IndexSet, double, IndexSetHash> cache_;
};

inline double weighted_sum_rate(IndexView subset, const WeightedRateUtility& utility) {
  return utility.value(subset);
}

inline RateTuple corner_point_rates(IndexView subset, const WeightedRateUtility& utility) {
  return utility.corner_rates(subset);
}

}  // namespace ulsched

#endif  // ULSCHED_UTILITY_HPP_

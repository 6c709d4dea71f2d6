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

#ifndef ULSCHED_RANK_FUNCTIONS_HPP_
#define ULSCHED_RANK_FUNCTIONS_HPP_

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ulsched/errors.hpp"
#include "ulsched/ground_set.hpp"
#include "ulsched/index_set.hpp"
#include "ulsched/linalg.hpp"

namespace ulsched {

enum class RankKind { gaussian, finite_alphabet };

struct RankOptions {
  // Hard limit on subset sizes fed to the exhaustive minimizations. Exceeding
  // it raises CapacityError rather than degrading silently.
  int brute_force_cap = 16;
  double cholesky_tol = 1e-12;
};

// Normalized monotone submodular rate evaluator over ground-set subsets, in
// bits per N RBs:
//   gaussian         sum over RBs of log2 det(I + sum_e psd_e (H W)(H W)^H)
//   finite_alphabet  the same log-det per RB, tightened by the best split of
//                    the active elements into a log-det part and an
//                    alphabet-capped part (exhaustive over splits).
// Values are memoized per canonical subset, and per (RB, active set) for the
// finite-alphabet minimization. Caches are not synchronized: share the
// immutable inputs across workers, give each worker its own evaluator.
class RankFunction {
 public:
  RankFunction(RankKind kind, const GroundSet& ground, const ChannelSet& channels,
               RankOptions options = {})
      : kind_(kind), ground_(&ground), channels_(&channels), options_(options),
        rx_(channels.rx_antennas()) {
    channels.validate_finite();
    const int users = ground.num_users();
    const int rbs = ground.num_rbs();
    const int words = ground.codebook().size();
    if (users > channels.num_users() || rbs > channels.num_rbs() ||
        (users > 0 && ground.codebook().tx_antennas() != channels.tx_antennas())) {
      throw std::invalid_argument("RankFunction: ground set / channel set mismatch");
    }
    outer_.reserve(static_cast<std::size_t>(users) * words * rbs);
    for (int u = 0; u < users; ++u) {
      for (int w = 0; w < words; ++w) {
        for (int n = 0; n < rbs; ++n) {
          const CMatrix g = channels.at(u, n) * ground.codebook().matrix(w);
          outer_.push_back(g * g.adjoint());
        }
      }
    }
  }

  RankKind kind() const { return kind_; }
  const GroundSet& ground() const { return *ground_; }
  const RankOptions& options() const { return options_; }

  // Value on a canonical (ascending, duplicate-free) subset.
  double value(IndexView subset) const {
    if (subset.empty()) return 0.0;
    IndexSet key(subset.begin(), subset.end());
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    const double v = kind_ == RankKind::gaussian ? gaussian_value(subset) : finite_value(subset);
    cache_.emplace(std::move(key), v);
    return v;
  }

 private:
  const CMatrix& outer(int user, int precoder, int rb) const {
    const std::size_t words = static_cast<std::size_t>(ground_->codebook().size());
    const std::size_t rbs = static_cast<std::size_t>(ground_->num_rbs());
    return outer_[(static_cast<std::size_t>(user) * words + static_cast<std::size_t>(precoder)) * rbs +
                  static_cast<std::size_t>(rb)];
  }

  double gaussian_value(IndexView subset) const {
    double total = 0.0;
    CMatrix acc(rx_, rx_);
    for (int rb = 0; rb < ground_->num_rbs(); ++rb) {
      bool any = false;
      for (ElementIndex e : subset) {
        const Element& el = ground_->element(e);
        if (!el.allocation.contains(rb)) continue;
        if (!any) {
          acc = CMatrix::Identity(rx_, rx_);
          any = true;
        }
        acc.noalias() += el.psd * outer(el.user, el.precoder, rb);
      }
      if (any) total += log2_det_hermitian(acc, options_.cholesky_tol);
    }
    return total;
  }

  double finite_value(IndexView subset) const {
    if (static_cast<int>(subset.size()) > options_.brute_force_cap) {
      throw CapacityError("finite-alphabet rank: subset exceeds brute-force cap");
    }
    double total = 0.0;
    for (int rb = 0; rb < ground_->num_rbs(); ++rb) {
      IndexSet active;
      for (ElementIndex e : subset) {
        if (ground_->element(e).allocation.contains(rb)) active.push_back(e);
      }
      if (active.empty()) continue;
      total += rb_finite_min(rb, active);
    }
    return total;
  }

  // min over splits R of the active elements on one RB:
  //   log2 det(I + sum_{e not in R}) + sum_{e in R} tx * log2(S_e)
  double rb_finite_min(int rb, const IndexSet& active) const {
    IndexSet key;
    key.reserve(active.size() + 1);
    key.push_back(static_cast<ElementIndex>(rb));
    key.insert(key.end(), active.begin(), active.end());
    if (auto it = rb_cache_.find(key); it != rb_cache_.end()) return it->second;

    const int m = static_cast<int>(active.size());
    double best = 0.0;
    CMatrix acc(rx_, rx_);
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
      acc = CMatrix::Identity(rx_, rx_);
      double capped = 0.0;
      for (int i = 0; i < m; ++i) {
        const ElementIndex e = active[static_cast<std::size_t>(i)];
        if (mask & (std::uint32_t{1} << i)) {
          capped += ground_->alphabet_cap_of(e);
        } else {
          const Element& el = ground_->element(e);
          acc.noalias() += el.psd * outer(el.user, el.precoder, rb);
        }
      }
      const double v = log2_det_hermitian(acc, options_.cholesky_tol) + capped;
      if (mask == 0 || v < best) best = v;
    }
    rb_cache_.emplace(std::move(key), best);
    return best;
  }

  RankKind kind_;
  const GroundSet* ground_;
  const ChannelSet* channels_;
  RankOptions options_;
  int rx_;
  std::vector<CMatrix> outer_;  // (user, precoder, rb) -> (H W)(H W)^H
  mutable std::unordered_map<IndexSet, double, IndexSetHash> cache_;
  mutable std::unordered_map<IndexSet, double, IndexSetHash> rb_cache_;
};

// Rank function of the rate region intersected with per-element buffer boxes:
//   rank'(U) = sum_{e in U} Q_e + min_{R subseteq U} { rank(R) - sum_{e in R} Q_e }
// computed by exhaustive minimization over all 2^|U| subsets with memoization.
class CappedRankFunction {
 public:
  CappedRankFunction(const RankFunction& base, std::vector<double> element_queues)
      : base_(&base), queues_(std::move(element_queues)) {
    if (static_cast<int>(queues_.size()) != base.ground().size()) {
      throw std::invalid_argument("CappedRankFunction: queue vector size != ground set size");
    }
    for (double q : queues_) {
      if (!(q >= 0.0)) throw std::invalid_argument("CappedRankFunction: negative queue");
    }
  }

  // Queues taken from the ground set's user profiles.
  static CappedRankFunction from_profiles(const RankFunction& base) {
    return CappedRankFunction(base, base.ground().element_queues());
  }

  const RankFunction& base() const { return *base_; }
  double queue(ElementIndex e) const { return queues_[static_cast<std::size_t>(e)]; }

  double value(IndexView subset) const {
    if (subset.empty()) return 0.0;
    const int m = static_cast<int>(subset.size());
    if (m > base_->options().brute_force_cap) {
      throw CapacityError("queue-capped rank: subset exceeds brute-force cap");
    }
    IndexSet key(subset.begin(), subset.end());
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;

    double queue_sum = 0.0;
    for (ElementIndex e : subset) queue_sum += queue(e);
    double best = 0.0;  // mask 0: rank(empty) - 0
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << m); ++mask) {
      double mass = 0.0;
      for (int i = 0; i < m; ++i) {
        if (mask & (std::uint32_t{1} << i)) mass += queue(subset[static_cast<std::size_t>(i)]);
      }
      const double v = base_->value(masked_subset(subset, mask)) - mass;
      if (v < best) best = v;
    }
    const double result = queue_sum + best;
    cache_.emplace(std::move(key), result);
    return result;
  }

 private:
  const RankFunction* base_;
  std::vector<double> queues_;
  mutable std::unordered_map<IndexSet, double, IndexSetHash> cache_;
};

// A queue value that can never bind: at least twice an upper bound on the
// Gaussian rate of the whole ground set, derived from the cheap trace bound
// log2 det(I + A) <= rx * log2(1 + tr A). Strictly positive.
inline double uncapped_queue_sentinel(const GroundSet& ground, const ChannelSet& channels) {
  const int rbs = ground.num_rbs();
  const int words = ground.codebook().size();
  std::vector<double> fro(static_cast<std::size_t>(ground.num_users()) * words * rbs, 0.0);
  for (int u = 0; u < ground.num_users(); ++u) {
    for (int w = 0; w < words; ++w) {
      for (int n = 0; n < rbs; ++n) {
        const CMatrix g = channels.at(u, n) * ground.codebook().matrix(w);
        fro[(static_cast<std::size_t>(u) * words + w) * rbs + n] = g.squaredNorm();
      }
    }
  }
  std::vector<double> rb_trace(static_cast<std::size_t>(rbs), 0.0);
  for (ElementIndex e = 0; e < ground.size(); ++e) {
    const Element& el = ground.element(e);
    for (int n = 0; n < rbs; ++n) {
      if (!el.allocation.contains(n)) continue;
      rb_trace[static_cast<std::size_t>(n)] +=
          el.psd * fro[(static_cast<std::size_t>(el.user) * words + el.precoder) * rbs + n];
    }
  }
  double bound = 0.0;
  for (double t : rb_trace) bound += channels.rx_antennas() * std::log2(1.0 + t);
  return 2.0 * bound + 1.0;
}

}  // namespace ulsched

#endif  // ULSCHED_RANK_FUNCTIONS_HPP_

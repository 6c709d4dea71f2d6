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

#ifndef ULSCHED_CONSTRAINTS_HPP_
#define ULSCHED_CONSTRAINTS_HPP_

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ulsched/ground_set.hpp"
#include "ulsched/index_set.hpp"

namespace ulsched {

inline constexpr double kKnapsackTol = 1e-12;

// Independence system "at most one element per user". Blocks are the
// per-user element lists of the ground set.
class PartitionMatroid {
 public:
  explicit PartitionMatroid(const GroundSet& ground) : ground_(&ground) {}

  int num_users() const { return ground_->num_users(); }

  bool is_independent(IndexView subset) const {
    std::vector<std::uint8_t> used(static_cast<std::size_t>(num_users()), 0);
    for (ElementIndex e : subset) {
      std::uint8_t& u = used[static_cast<std::size_t>(ground_->element(e).user)];
      if (u) return false;
      u = 1;
    }
    return true;
  }

  // Incremental interface for greedy loops: one flag per user.
  std::vector<std::uint8_t> make_state() const {
    return std::vector<std::uint8_t>(static_cast<std::size_t>(num_users()), 0);
  }
  bool can_add(const std::vector<std::uint8_t>& used, ElementIndex e) const {
    return !used[static_cast<std::size_t>(ground_->element(e).user)];
  }
  void add(std::vector<std::uint8_t>& used, ElementIndex e) const {
    used[static_cast<std::size_t>(ground_->element(e).user)] = 1;
  }

 private:
  const GroundSet* ground_;
};

// One binary packing row in budget form: at most `capacity` of the listed
// elements may be selected. In the normalized all-ones right-hand-side
// convention this is the row with uniform coefficient 1/capacity on its
// support.
struct ControlRow {
  std::vector<ElementIndex> support;  // ascending element indices
  int capacity = 1;
};

// One fractional packing row with unit right-hand side; coefficients in (0,1].
struct InterferenceRow {
  std::vector<std::pair<ElementIndex, double>> entries;  // ascending index
};

// Sufficient matroid-form test for a knapsack row: all strictly positive
// coefficients are identical (exactly for 0/1 rows, within tolerance else).
inline bool is_matroid_row(std::span<const double> row, double tol = kKnapsackTol) {
  double level = -1.0;
  for (double c : row) {
    if (c <= 0.0) continue;
    if (level < 0.0) {
      level = c;
    } else if (std::abs(c - level) > tol) {
      return false;
    }
  }
  return true;
}

struct AssumptionReport {
  bool ok = true;
  std::string diagnostic;  // names the first violated condition
};

// The packing side of the feasibility test: control rows (binary, column
// sparsity tracked) plus interference rows (fractional). Immutable after
// construction; greedy loops use the incremental LoadState.
class KnapsackSystem {
 public:
  KnapsackSystem() = default;

  KnapsackSystem(int ground_size, std::vector<ControlRow> control,
                 std::vector<InterferenceRow> interference)
      : ground_size_(ground_size),
        control_(std::move(control)),
        interference_(std::move(interference)),
        element_control_(static_cast<std::size_t>(ground_size)),
        element_interference_(static_cast<std::size_t>(ground_size)) {
    if (ground_size < 0) throw std::invalid_argument("KnapsackSystem: negative ground size");
    for (std::size_t r = 0; r < control_.size(); ++r) {
      const ControlRow& row = control_[r];
      if (row.capacity < 0) throw std::invalid_argument("KnapsackSystem: negative capacity");
      ElementIndex prev = -1;
      for (ElementIndex e : row.support) {
        if (e < 0 || e >= ground_size) {
          throw std::invalid_argument("KnapsackSystem: control row index out of range");
        }
        if (e <= prev) throw std::invalid_argument("KnapsackSystem: control support not ascending");
        prev = e;
        element_control_[static_cast<std::size_t>(e)].push_back(static_cast<std::int32_t>(r));
      }
    }
    for (std::size_t r = 0; r < interference_.size(); ++r) {
      ElementIndex prev = -1;
      for (const auto& [e, c] : interference_[r].entries) {
        if (e < 0 || e >= ground_size) {
          throw std::invalid_argument("KnapsackSystem: interference row index out of range");
        }
        if (e <= prev) throw std::invalid_argument("KnapsackSystem: interference entries not ascending");
        if (!(c > 0.0) || c > 1.0 + kKnapsackTol) {
          throw std::invalid_argument("KnapsackSystem: interference coefficient outside (0,1]");
        }
        prev = e;
        element_interference_[static_cast<std::size_t>(e)].emplace_back(static_cast<std::int32_t>(r), c);
      }
    }
  }

  // Dense-matrix construction. Control rows must be exactly 0/1 valued; a
  // capacity of 1 per row reproduces the unit right-hand-side form, larger
  // capacities are the budget (scaled-coefficient) form. Interference rows
  // take values in [0,1].
  static KnapsackSystem from_dense(int ground_size,
                                   const std::vector<std::vector<double>>& control_rows,
                                   const std::vector<int>& control_capacities,
                                   const std::vector<std::vector<double>>& interference_rows) {
    if (!control_capacities.empty() && control_capacities.size() != control_rows.size()) {
      throw std::invalid_argument("KnapsackSystem: capacity count != control row count");
    }
    std::vector<ControlRow> control;
    for (std::size_t r = 0; r < control_rows.size(); ++r) {
      const auto& row = control_rows[r];
      if (static_cast<int>(row.size()) != ground_size) {
        throw std::invalid_argument("KnapsackSystem: control row / ground set dimension mismatch");
      }
      ControlRow cr;
      cr.capacity = control_capacities.empty() ? 1 : control_capacities[r];
      for (int e = 0; e < ground_size; ++e) {
        if (row[static_cast<std::size_t>(e)] == 1.0) {
          cr.support.push_back(static_cast<ElementIndex>(e));
        } else if (row[static_cast<std::size_t>(e)] != 0.0) {
          throw std::invalid_argument("KnapsackSystem: control row entry not binary");
        }
      }
      control.push_back(std::move(cr));
    }
    std::vector<InterferenceRow> interference;
    for (const auto& row : interference_rows) {
      if (static_cast<int>(row.size()) != ground_size) {
        throw std::invalid_argument("KnapsackSystem: interference row / ground set dimension mismatch");
      }
      InterferenceRow ir;
      for (int e = 0; e < ground_size; ++e) {
        const double c = row[static_cast<std::size_t>(e)];
        if (c < 0.0 || c > 1.0) {
          throw std::invalid_argument("KnapsackSystem: interference entry outside [0,1]");
        }
        if (c > 0.0) ir.entries.emplace_back(static_cast<ElementIndex>(e), c);
      }
      interference.push_back(std::move(ir));
    }
    return KnapsackSystem(ground_size, std::move(control), std::move(interference));
  }

  int ground_size() const { return ground_size_; }
  int num_control_rows() const { return static_cast<int>(control_.size()); }
  int num_interference_rows() const { return static_cast<int>(interference_.size()); }
  const ControlRow& control_row(int r) const { return control_[static_cast<std::size_t>(r)]; }
  const InterferenceRow& interference_row(int r) const {
    return interference_[static_cast<std::size_t>(r)];
  }

  // Max number of control rows any single element participates in.
  int column_sparsity() const {
    std::size_t delta = 0;
    for (const auto& rows : element_control_) delta = std::max(delta, rows.size());
    return static_cast<int>(delta);
  }

  bool feasible(IndexView subset) const {
    if (control_.empty() && interference_.empty()) return true;
    std::vector<int> counts(control_.size(), 0);
    std::vector<double> loads(interference_.size(), 0.0);
    for (ElementIndex e : subset) {
      if (e < 0 || e >= ground_size_) {
        throw std::invalid_argument("KnapsackSystem: element index out of range");
      }
      for (std::int32_t r : element_control_[static_cast<std::size_t>(e)]) {
        if (++counts[static_cast<std::size_t>(r)] > control_[static_cast<std::size_t>(r)].capacity) {
          return false;
        }
      }
      for (const auto& [r, c] : element_interference_[static_cast<std::size_t>(e)]) {
        if ((loads[static_cast<std::size_t>(r)] += c) > 1.0 + kKnapsackTol) return false;
      }
    }
    return true;
  }

  // Incremental row-sum state owned by one scheduler run.
  struct LoadState {
    std::vector<int> control_used;
    std::vector<double> interference_load;
  };
  LoadState make_state() const {
    return LoadState{std::vector<int>(control_.size(), 0),
                     std::vector<double>(interference_.size(), 0.0)};
  }
  bool can_add(const LoadState& state, ElementIndex e) const {
    if (control_.empty() && interference_.empty()) return true;
    for (std::int32_t r : element_control_[static_cast<std::size_t>(e)]) {
      if (state.control_used[static_cast<std::size_t>(r)] + 1 >
          control_[static_cast<std::size_t>(r)].capacity) {
        return false;
      }
    }
    for (const auto& [r, c] : element_interference_[static_cast<std::size_t>(e)]) {
      if (state.interference_load[static_cast<std::size_t>(r)] + c > 1.0 + kKnapsackTol) return false;
    }
    return true;
  }
  void add(LoadState& state, ElementIndex e) const {
    if (control_.empty() && interference_.empty()) return;
    for (std::int32_t r : element_control_[static_cast<std::size_t>(e)]) {
      ++state.control_used[static_cast<std::size_t>(r)];
    }
    for (const auto& [r, c] : element_interference_[static_cast<std::size_t>(e)]) {
      state.interference_load[static_cast<std::size_t>(r)] += c;
    }
  }
  bool singleton_feasible(ElementIndex e) const {
    if (control_.empty() && interference_.empty()) return true;
    for (std::int32_t r : element_control_[static_cast<std::size_t>(e)]) {
      if (control_[static_cast<std::size_t>(r)].capacity < 1) return false;
    }
    for (const auto& [r, c] : element_interference_[static_cast<std::size_t>(e)]) {
      (void)r;
      if (c > 1.0 + kKnapsackTol) return false;
    }
    return true;
  }

  // Structured-scenario check: control rows are cardinality constraints over
  // disjoint element sets covering the whole ground set, and every
  // interference row has uniform positive coefficients.
  AssumptionReport assumptions_hold() const {
    for (std::size_t e = 0; e < element_control_.size(); ++e) {
      if (element_control_[e].size() > 1) return {false, "control regions overlap"};
      if (element_control_[e].empty()) return {false, "control regions do not cover every element"};
    }
    for (const InterferenceRow& row : interference_) {
      double level = -1.0;
      for (const auto& [e, c] : row.entries) {
        (void)e;
        if (level < 0.0) {
          level = c;
        } else if (std::abs(c - level) > kKnapsackTol) {
          return {false, "interference row has non-uniform coefficients"};
        }
      }
    }
    return {true, ""};
  }

  bool control_rows_cover_ground() const {
    for (const auto& rows : element_control_) {
      if (rows.empty()) return false;
    }
    return ground_size_ > 0;
  }
  long long total_control_capacity() const {
    long long total = 0;
    for (const ControlRow& row : control_) total += row.capacity;
    return total;
  }

 private:
  int ground_size_ = 0;
  std::vector<ControlRow> control_;
  std::vector<InterferenceRow> interference_;
  std::vector<std::vector<std::int32_t>> element_control_;
  std::vector<std::vector<std::pair<std::int32_t, double>>> element_interference_;
};

inline bool knapsack_feasible(IndexView subset, const KnapsackSystem& system) {
  return system.feasible(subset);
}

inline AssumptionReport assumptions_hold(const KnapsackSystem& system, const GroundSet& ground) {
  if (system.ground_size() != ground.size()) {
    return {false, "constraint system / ground set dimension mismatch"};
  }
  return system.assumptions_hold();
}

}  // namespace ulsched

#endif  // ULSCHED_CONSTRAINTS_HPP_

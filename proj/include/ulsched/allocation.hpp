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

#ifndef ULSCHED_ALLOCATION_HPP_
#define ULSCHED_ALLOCATION_HPP_

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ulsched {

// RB occupancy pattern of one candidate assignment. A valid pattern is one
// contiguous run of RBs, or two runs separated by at least one empty RB.
struct AllocationVector {
  std::uint64_t mask = 0;  // bit n set -> RB n assigned
  int num_rbs = 0;         // pattern length N

  int size() const { return std::popcount(mask); }
  bool contains(int rb) const { return (mask >> rb) & std::uint64_t{1}; }
  int chunk_count() const {
    int chunks = 0;
    bool in_run = false;
    for (int n = 0; n < num_rbs; ++n) {
      const bool set = contains(n);
      if (set && !in_run) ++chunks;
      in_run = set;
    }
    return chunks;
  }
  // The runs as inclusive [first, last] RB ranges, in ascending order.
  std::vector<std::pair<int, int>> chunks() const {
    std::vector<std::pair<int, int>> out;
    int start = -1;
    for (int n = 0; n < num_rbs; ++n) {
      if (contains(n)) {
        if (start < 0) start = n;
      } else if (start >= 0) {
        out.emplace_back(start, n - 1);
        start = -1;
      }
    }
    if (start >= 0) out.emplace_back(start, num_rbs - 1);
    return out;
  }

  friend bool operator==(const AllocationVector&, const AllocationVector&) = default;
};

inline bool allocation_mask_valid(std::uint64_t mask, int num_rbs) {
  if (num_rbs < 1 || num_rbs > 63) return false;
  if (mask == 0 || (mask >> num_rbs) != 0) return false;
  const int chunks = AllocationVector{mask, num_rbs}.chunk_count();
  return chunks == 1 || chunks == 2;
}

// Every valid occupancy pattern of length `num_rbs`, ordered by first-chunk
// start, first-chunk end, second-chunk start, second-chunk end; the
// single-chunk pattern precedes the two-chunk patterns sharing its first
// chunk. The order is deterministic and duplicate-free.
inline std::vector<AllocationVector> enumerate_allocations(int num_rbs) {
  if (num_rbs < 1) throw std::invalid_argument("enumerate_allocations: RB count must be positive");
  if (num_rbs > 63) throw std::invalid_argument("enumerate_allocations: RB count exceeds 63");
  const auto run_mask = [](int first, int last) {
    return ((std::uint64_t{1} << (last - first + 1)) - 1) << first;
  };
  std::vector<AllocationVector> out;
  for (int s1 = 0; s1 < num_rbs; ++s1) {
    for (int e1 = s1; e1 < num_rbs; ++e1) {
      const std::uint64_t first = run_mask(s1, e1);
      out.push_back({first, num_rbs});
      for (int s2 = e1 + 2; s2 < num_rbs; ++s2) {
        for (int e2 = s2; e2 < num_rbs; ++e2) {
          out.push_back({first | run_mask(s2, e2), num_rbs});
        }
      }
    }
  }
  return out;
}

// Equal split of a user's power budget over its assigned RBs.
inline double element_psd(const AllocationVector& allocation, double total_power) {
  return total_power / static_cast<double>(allocation.size());
}

}  // namespace ulsched

#endif  // ULSCHED_ALLOCATION_HPP_

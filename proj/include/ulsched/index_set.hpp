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

#ifndef ULSCHED_INDEX_SET_HPP_
#define ULSCHED_INDEX_SET_HPP_

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

namespace ulsched {

using ElementIndex = std::int32_t;

// Canonical subset representation: ascending, duplicate-free element indices.
// All memoization keys and tie-breaking rules are defined on this form.
using IndexSet = std::vector<ElementIndex>;
using IndexView = std::span<const ElementIndex>;

inline IndexSet canonical(IndexSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline bool is_canonical(IndexView s) {
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] <= s[i - 1]) return false;
  }
  return true;
}

inline bool contains(IndexView s, ElementIndex e) {
  return std::binary_search(s.begin(), s.end(), e);
}

// Copy of `s` with `e` inserted at its sorted position (no-op if present).
inline IndexSet with_element(IndexView s, ElementIndex e) {
  IndexSet out(s.begin(), s.end());
  auto it = std::lower_bound(out.begin(), out.end(), e);
  if (it == out.end() || *it != e) out.insert(it, e);
  return out;
}

// Subset of `s` selected by bitmask; bit i picks s[i].
inline IndexSet masked_subset(IndexView s, std::uint32_t mask) {
  IndexSet out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (mask & (1u << i)) out.push_back(s[i]);
  }
  return out;
}

struct IndexSetHash {
  std::size_t operator()(const IndexSet& s) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (ElementIndex x : s) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(x));
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace ulsched

#endif  // ULSCHED_INDEX_SET_HPP_

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

#ifndef ULSCHED_GROUND_SET_HPP_
#define ULSCHED_GROUND_SET_HPP_

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ulsched/allocation.hpp"
#include "ulsched/errors.hpp"
#include "ulsched/index_set.hpp"
#include "ulsched/linalg.hpp"

namespace ulsched {

// Per-user scheduling inputs. Buffers that should never bind are represented
// by a large finite sentinel (see uncapped_queue_sentinel), not by infinity.
struct UserProfile {
  double weight = 1.0;         // nonnegative scheduling weight
  double queue_bits = 0.0;     // buffer backlog in bits
  double total_power = 1.0;    // positive power budget, split equally over RBs
  int constellation_size = 4;  // per-stream alphabet cardinality, >= 2
  int tx_antennas = 1;
};

// Finite set of precoding matrices; all share the same row count (transmit
// antennas), column counts (streams) may differ.
class Codebook {
 public:
  // Degenerate scalar codebook {[1]}.
  Codebook() : matrices_(1, CMatrix::Identity(1, 1)) {}

  explicit Codebook(std::vector<CMatrix> matrices) : matrices_(std::move(matrices)) {
    if (matrices_.empty()) throw std::invalid_argument("Codebook: no matrices");
    const Eigen::Index rows = matrices_.front().rows();
    for (const auto& w : matrices_) {
      if (w.rows() != rows || w.rows() < 1 || w.cols() < 1 || w.cols() > rows) {
        throw std::invalid_argument("Codebook: inconsistent matrix dimensions");
      }
    }
  }

  // Column selectors {[1;0;...], [0;1;...], ...}: one single-antenna beam
  // per transmit antenna.
  static Codebook antenna_selection(int tx_antennas) {
    std::vector<CMatrix> ws;
    ws.reserve(tx_antennas);
    for (int t = 0; t < tx_antennas; ++t) {
      CMatrix w = CMatrix::Zero(tx_antennas, 1);
      w(t, 0) = Complex(1.0, 0.0);
      ws.push_back(std::move(w));
    }
    return Codebook(std::move(ws));
  }

  int size() const { return static_cast<int>(matrices_.size()); }
  int tx_antennas() const { return static_cast<int>(matrices_.front().rows()); }
  const CMatrix& matrix(int i) const { return matrices_[static_cast<std::size_t>(i)]; }

 private:
  std::vector<CMatrix> matrices_;
};

// Per-user, per-RB channel matrices seen at the base station.
class ChannelSet {
 public:
  ChannelSet(int num_users, int num_rbs, int rx_antennas, int tx_antennas)
      : num_users_(num_users),
        num_rbs_(num_rbs),
        rx_(rx_antennas),
        tx_(tx_antennas),
        h_(static_cast<std::size_t>(num_users) * static_cast<std::size_t>(num_rbs),
           CMatrix::Zero(rx_antennas, tx_antennas)) {
    if (num_users < 0 || num_rbs < 1 || rx_antennas < 1 || tx_antennas < 1) {
      throw std::invalid_argument("ChannelSet: nonpositive dimension");
    }
  }

  int num_users() const { return num_users_; }
  int num_rbs() const { return num_rbs_; }
  int rx_antennas() const { return rx_; }
  int tx_antennas() const { return tx_; }

  CMatrix& at(int user, int rb) { return h_[index(user, rb)]; }
  const CMatrix& at(int user, int rb) const { return h_[index(user, rb)]; }

  void validate_finite() const {
    for (const auto& m : h_) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
          const Complex v = m(r, c);
          if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw NumericError("ChannelSet: non-finite channel entry");
          }
        }
      }
    }
  }

 private:
  std::size_t index(int user, int rb) const {
    return static_cast<std::size_t>(user) * static_cast<std::size_t>(num_rbs_) +
           static_cast<std::size_t>(rb);
  }

  int num_users_;
  int num_rbs_;
  int rx_;
  int tx_;
  std::vector<CMatrix> h_;
};

// One candidate assignment: a user, an RB occupancy pattern, a precoder
// index and the implied per-RB power.
struct Element {
  int user = 0;
  AllocationVector allocation;
  int precoder = 0;
  double psd = 0.0;
};

// The ordered universe the scheduler selects from. Element identity is the
// index in this order; every tie-break in the library uses it. Immutable
// after construction.
class GroundSet {
 public:
  GroundSet() = default;

  GroundSet(std::vector<Element> elements, std::vector<UserProfile> profiles,
            Codebook codebook, int num_rbs)
      : elements_(std::move(elements)),
        profiles_(std::move(profiles)),
        codebook_(std::move(codebook)),
        num_rbs_(num_rbs),
        user_elements_(profiles_.size()) {
    for (const UserProfile& p : profiles_) {
      if (p.weight < 0.0 || p.queue_bits < 0.0 || !(p.total_power > 0.0) ||
          p.constellation_size < 2 || p.tx_antennas < 1) {
        throw std::invalid_argument("GroundSet: invalid user profile");
      }
      if (p.tx_antennas != codebook_.tx_antennas()) {
        throw std::invalid_argument("GroundSet: profile/codebook antenna mismatch");
      }
    }
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      Element& e = elements_[i];
      if (e.user < 0 || e.user >= static_cast<int>(profiles_.size()) ||
          e.precoder < 0 || e.precoder >= codebook_.size() ||
          !allocation_mask_valid(e.allocation.mask, num_rbs_) ||
          e.allocation.num_rbs != num_rbs_) {
        throw std::invalid_argument("GroundSet: invalid element");
      }
      e.psd = element_psd(e.allocation, profiles_[e.user].total_power);
      user_elements_[e.user].push_back(static_cast<ElementIndex>(i));
    }
  }

  int size() const { return static_cast<int>(elements_.size()); }
  int num_users() const { return static_cast<int>(profiles_.size()); }
  int num_rbs() const { return num_rbs_; }

  const Element& element(ElementIndex e) const { return elements_[static_cast<std::size_t>(e)]; }
  const UserProfile& profile(int user) const { return profiles_[static_cast<std::size_t>(user)]; }
  const UserProfile& profile_of(ElementIndex e) const { return profile(element(e).user); }
  const std::vector<UserProfile>& profiles() const { return profiles_; }
  const Codebook& codebook() const { return codebook_; }
  const std::vector<ElementIndex>& user_elements(int user) const {
    return user_elements_[static_cast<std::size_t>(user)];
  }

  double queue_of(ElementIndex e) const { return profile_of(e).queue_bits; }
  // Rate ceiling contributed by the element's finite alphabet.
  double alphabet_cap_of(ElementIndex e) const {
    const UserProfile& p = profile_of(e);
    return p.tx_antennas * std::log2(static_cast<double>(p.constellation_size));
  }
  std::vector<double> element_queues() const {
    std::vector<double> q(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i) q[i] = queue_of(static_cast<ElementIndex>(i));
    return q;
  }

 private:
  std::vector<Element> elements_;
  std::vector<UserProfile> profiles_;
  Codebook codebook_;
  int num_rbs_ = 0;
  std::vector<std::vector<ElementIndex>> user_elements_;
};

// User-major, then allocation, then precoder: |E| = K * A(N) * |codebook|
// with A(N) the valid-allocation count for N RBs.
inline GroundSet build_ground_set(int num_users, const Codebook& codebook, int num_rbs,
                                  std::vector<UserProfile> profiles) {
  if (num_users < 1) throw std::invalid_argument("build_ground_set: need at least one user");
  if (static_cast<int>(profiles.size()) != num_users) {
    throw std::invalid_argument("build_ground_set: profile count != user count");
  }
  const std::vector<AllocationVector> allocations = enumerate_allocations(num_rbs);
  std::vector<Element> elements;
  elements.reserve(static_cast<std::size_t>(num_users) * allocations.size() *
                   static_cast<std::size_t>(codebook.size()));
  for (int u = 0; u < num_users; ++u) {
    for (const AllocationVector& a : allocations) {
      for (int w = 0; w < codebook.size(); ++w) {
        elements.push_back({u, a, w, element_psd(a, profiles[u].total_power)});
      }
    }
  }
  return GroundSet(std::move(elements), std::move(profiles), codebook, num_rbs);
}

}  // namespace ulsched

#endif  // ULSCHED_GROUND_SET_HPP_

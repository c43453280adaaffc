// Copyright 2026 The powidx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POWIDX_COALITION_HPP
#define POWIDX_COALITION_HPP

#include <bit>
#include <cstdint>
#include <vector>

#include "powidx/errors.hpp"

namespace powidx {

inline constexpr int kMaxVoters = 24;

// A subset of the voter set {1..n}, stored as a bit mask (bit i-1 = voter i).
class Coalition {
 public:
  Coalition() = default;
  Coalition(std::uint32_t bits, int n) : bits_(bits), n_(n) {
    if (n < 1 || n > kMaxVoters) throw InputError("voter count out of range 1..24");
    if (n < 32 && (bits >> n) != 0) throw InputError("coalition has members beyond voter count");
  }

  static Coalition empty(int n) { return Coalition(0, n); }
  static Coalition full(int n) {
    return Coalition(n == 32 ? ~0u : ((1u << n) - 1u), n);
  }
  // 1-based voter list, e.g. {1,3} for n=4.
  static Coalition of(const std::vector<int>& voters, int n) {
    std::uint32_t bits = 0;
    for (int v : voters) {
      if (v < 1 || v > n) throw InputError("voter index out of range");
      bits |= (1u << (v - 1));
    }
    return Coalition(bits, n);
  }

  std::uint32_t bits() const { return bits_; }
  int n() const { return n_; }
  int size() const { return std::popcount(bits_); }
  bool contains(int voter) const { return (bits_ >> (voter - 1)) & 1u; }
  Coalition with(int voter) const { return Coalition(bits_ | (1u << (voter - 1)), n_); }
  Coalition without(int voter) const { return Coalition(bits_ & ~(1u << (voter - 1)), n_); }
  Coalition complement() const { return Coalition(full(n_).bits() & ~bits_, n_); }

  std::vector<int> members() const {
    std::vector<int> out;
    for (int v = 1; v <= n_; ++v) {
      if (contains(v)) out.push_back(v);
    }
    return out;
  }

  bool operator==(const Coalition& other) const = default;

 private:
  std::uint32_t bits_ = 0;
  int n_ = 1;
};

}  // namespace powidx

#endif  // POWIDX_COALITION_HPP

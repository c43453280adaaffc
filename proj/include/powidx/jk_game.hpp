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

#ifndef POWIDX_JK_GAME_HPP
#define POWIDX_JK_GAME_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "powidx/binary_game.hpp"
#include "powidx/power_profile.hpp"

namespace powidx {

// Input profile: levels[v-1] in 1..j, level 1 being the highest approval.
struct Profile {
  std::vector<std::uint8_t> levels;
};

// Queue of reveal: order[t] is the voter (1-based) speaking at position t+1.
struct Queue {
  std::vector<int> order;
};

// Monotone map from j-level input profiles to k output levels, stored as a
// dense table over all j^n profiles. Output level 1 is the highest.
class JKGame {
 public:
  JKGame(int n, int j, int k, std::vector<std::uint8_t> table);

  static JKGame from_function(int n, int j, int k,
                              const std::function<int(const Profile&)>& fn);

  int n() const { return n_; }
  int j() const { return j_; }
  int k() const { return k_; }

  int eval(const Profile& s) const;
  int eval_index(std::size_t index) const { return table_[index]; }

  std::size_t profile_index(const Profile& s) const;
  std::size_t table_size() const { return table_.size(); }

 private:
  int n_, j_, k_;
  std::vector<std::uint8_t> table_;
};

// s is j-below t: every cumulative approval set of s is contained in t's;
// equivalently t's levels are componentwise <= s's.
bool leq_j(const Profile& s, const Profile& t);

bool is_jk_simple(const JKGame& game);

// The voter whose revealed vote first resolves the output across the
// boundary between levels h and h+1, walking the queue and tracking the
// best (later voters at level 1) and worst (later voters at level j)
// reachable outputs.
int pivot(const JKGame& game, const Queue& q, const Profile& s, int h);

// Pivot counts per queue: pairs (queue order, per-voter counts over all
// profiles and all boundaries h).
std::vector<std::pair<std::vector<int>, std::vector<long long>>> pivot_counts_by_queue(
    const JKGame& game);

// Exhaustive Shapley-Shubik index; capacity error when n! j^n (k-1) > 1e9.
PowerProfile ssi_jk(const JKGame& game);

struct JKSamplingSpec {
  long long samples = 1'000'000;
  std::uint64_t seed = 1;
};

// Sampling fallback for large games: uniform (queue, profile) pairs.
PowerProfile ssi_jk_sampled(const JKGame& game, const JKSamplingSpec& spec);

// Total one-step swing mass for voter i: sum over profiles and one-step
// downward shifts of the output drop, which telescopes to
// sum over others' profiles of g(i at level j) - g(i at level 1).
long long swings(const JKGame& game, int i);

PowerProfile bzi_jk(const JKGame& game);

// (2,2) image of a binary simple game; level/output 1 encode "yes"/win.
JKGame embed_binary(const BinaryGame& game);

}  // namespace powidx

#endif  // POWIDX_JK_GAME_HPP

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

#ifndef POWIDX_BINARY_GAME_HPP
#define POWIDX_BINARY_GAME_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "powidx/coalition.hpp"
#include "powidx/rational.hpp"

namespace powidx {

// Quota/weights pair. Weights need not be normalized.
struct WeightedRep {
  Rat quota;
  std::vector<Rat> weights;
};

class BinaryGame;

struct MeetBody {
  std::vector<BinaryGame> parts;
};
struct JoinBody {
  std::vector<BinaryGame> parts;
};
struct TableBody {
  std::vector<bool> winning;  // indexed by coalition bits, size 2^n
};

// A 0/1 valuation of coalitions. Construction does not force monotonicity;
// is_simple() checks it together with the boundary axioms.
class BinaryGame {
 public:
  static BinaryGame weighted(Rat quota, std::vector<Rat> weights);
  static BinaryGame from_table(int n, std::vector<bool> winning);
  static BinaryGame from_winning(int n, const std::vector<Coalition>& winning);
  static BinaryGame meet(std::vector<BinaryGame> parts);
  static BinaryGame join(std::vector<BinaryGame> parts);

  int n() const { return n_; }
  int eval(const Coalition& s) const;
  int eval_bits(std::uint32_t bits) const;

  const WeightedRep* weighted_rep() const { return std::get_if<WeightedRep>(&body_); }

  // Materialized 2^n table; cached after the first call.
  const std::vector<bool>& table() const;

 private:
  BinaryGame(int n, std::variant<WeightedRep, TableBody, MeetBody, JoinBody> body)
      : n_(n), body_(std::move(body)) {}

  int n_ = 0;
  std::variant<WeightedRep, TableBody, MeetBody, JoinBody> body_;
  mutable std::vector<bool> cached_table_;
};

struct CoalitionFamilies {
  std::vector<Coalition> winning;
  std::vector<Coalition> losing;
  std::vector<Coalition> minimal_winning;
  std::vector<Coalition> maximal_losing;
  // Present only when shift families were requested on a complete game.
  std::vector<Coalition> shift_minimal_winning;
  std::vector<Coalition> shift_maximal_losing;
  bool shift_families_present = false;
};

struct GameProperties {
  bool proper = false;
  bool strong = false;
  bool constant_sum = false;
  std::optional<Coalition> proper_witness;  // winning S with winning complement
  std::optional<Coalition> strong_witness;  // losing S with losing complement
};

enum class Desirability { i_succ, j_succ, equiv, incomparable };

int eval_binary(const BinaryGame& game, const Coalition& s);

bool is_simple(const BinaryGame& game);

// Winning/losing/minimal/maximal families. Shift families additionally
// require a complete game with voters already ordered 1 >= 2 >= ... >= n
// by desirability; pass with_shift_families=true to request them.
CoalitionFamilies classify_coalitions(const BinaryGame& game,
                                      bool with_shift_families = false);

GameProperties properties(const BinaryGame& game);

Desirability desirability(const BinaryGame& game, int i, int j);

bool is_complete(const BinaryGame& game);

std::set<int> null_voters(const BinaryGame& game);

// Representation interval of the normalized quota: every q' in
// (lo, hi] induces the same game. lo = max losing weight, hi = min
// winning weight.
std::pair<Rat, Rat> quota_interval(const WeightedRep& rep);

BinaryGame meet(const BinaryGame& g1, const BinaryGame& g2);
BinaryGame join(const BinaryGame& g1, const BinaryGame& g2);

}  // namespace powidx

#endif  // POWIDX_BINARY_GAME_HPP

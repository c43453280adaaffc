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

#include "powidx/binary_game.hpp"

#include <algorithm>
#include <bit>

namespace powidx {

namespace {

// Scales rational weights/quota to a common integer denominator so table
// construction can run on integer arithmetic.
struct ScaledWeights {
  BigInt quota;
  std::vector<BigInt> weights;
};

ScaledWeights scale_to_integers(const WeightedRep& rep) {
  BigInt lcm = boost::multiprecision::denominator(rep.quota);
  for (const Rat& w : rep.weights) {
    lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(w));
  }
  ScaledWeights out;
  out.quota = boost::multiprecision::numerator(rep.quota) *
              (lcm / boost::multiprecision::denominator(rep.quota));
  out.weights.reserve(rep.weights.size());
  for (const Rat& w : rep.weights) {
    out.weights.push_back(boost::multiprecision::numerator(w) *
                          (lcm / boost::multiprecision::denominator(w)));
  }
  return out;
}

}  // namespace

BinaryGame BinaryGame::weighted(Rat quota, std::vector<Rat> weights) {
  const int n = static_cast<int>(weights.size());
  if (n < 1 || n > kMaxVoters) throw InputError("voter count out of range 1..24");
  if (quota <= 0) throw InputError("quota must be positive");
  bool any_positive = false;
  for (const Rat& w : weights) {
    if (w < 0) throw InputError("weights must be nonnegative");
    if (w > 0) any_positive = true;
  }
  if (!any_positive) throw InputError("at least one weight must be positive");
  Rat total = sum(weights);
  if (total < quota) throw InputError("grand coalition must reach the quota");
  return BinaryGame(n, WeightedRep{std::move(quota), std::move(weights)});
}

BinaryGame BinaryGame::from_table(int n, std::vector<bool> winning) {
  if (n < 1 || n > kMaxVoters) throw InputError("voter count out of range 1..24");
  if (winning.size() != (std::size_t{1} << n)) {
    throw InputError("table must have 2^n entries");
  }
  return BinaryGame(n, TableBody{std::move(winning)});
}

BinaryGame BinaryGame::from_winning(int n, const std::vector<Coalition>& winning) {
  std::vector<bool> table(std::size_t{1} << n, false);
  for (const Coalition& s : winning) {
    if (s.n() != n) throw InputError("coalition width mismatch");
    table[s.bits()] = true;
  }
  return from_table(n, std::move(table));
}

BinaryGame BinaryGame::meet(std::vector<BinaryGame> parts) {
  if (parts.empty()) throw InputError("meet needs at least one game");
  const int n = parts.front().n();
  for (const BinaryGame& g : parts) {
    if (g.n() != n) throw InputError("meet parts must share the voter count");
  }
  return BinaryGame(n, MeetBody{std::move(parts)});
}

BinaryGame BinaryGame::join(std::vector<BinaryGame> parts) {
  if (parts.empty()) throw InputError("join needs at least one game");
  const int n = parts.front().n();
  for (const BinaryGame& g : parts) {
    if (g.n() != n) throw InputError("join parts must share the voter count");
  }
  return BinaryGame(n, JoinBody{std::move(parts)});
}

int BinaryGame::eval_bits(std::uint32_t bits) const {
  if (const auto* w = std::get_if<WeightedRep>(&body_)) {
    Rat total = 0;
    for (int i = 0; i < n_; ++i) {
      if ((bits >> i) & 1u) total += w->weights[i];
    }
    return total >= w->quota ? 1 : 0;
  }
  if (const auto* t = std::get_if<TableBody>(&body_)) {
    return t->winning[bits] ? 1 : 0;
  }
  if (const auto* m = std::get_if<MeetBody>(&body_)) {
    int v = 1;
    for (const BinaryGame& g : m->parts) v = std::min(v, g.eval_bits(bits));
    return v;
  }
  const auto& j = std::get<JoinBody>(body_);
  int v = 0;
  for (const BinaryGame& g : j.parts) v = std::max(v, g.eval_bits(bits));
  return v;
}

int BinaryGame::eval(const Coalition& s) const {
  if (s.n() != n_) throw InputError("coalition width mismatch");
  return eval_bits(s.bits());
}

const std::vector<bool>& BinaryGame::table() const {
  if (!cached_table_.empty()) return cached_table_;
  const std::size_t size = std::size_t{1} << n_;
  std::vector<bool> table(size);

  if (const auto* w = std::get_if<WeightedRep>(&body_)) {
    // Gray-code walk keeps the running weight to one add per step.
    ScaledWeights sw = scale_to_integers(*w);
    BigInt acc = 0;
    std::uint32_t prev_gray = 0;
    table[0] = acc >= sw.quota;
    for (std::size_t k = 1; k < size; ++k) {
      std::uint32_t gray = static_cast<std::uint32_t>(k ^ (k >> 1));
      std::uint32_t flipped = gray ^ prev_gray;
      int bit = std::countr_zero(flipped);
      if (gray & flipped) {
        acc += sw.weights[bit];
      } else {
        acc -= sw.weights[bit];
      }
      table[gray] = acc >= sw.quota;
      prev_gray = gray;
    }
  } else if (const auto* t = std::get_if<TableBody>(&body_)) {
    table = t->winning;
  } else {
    for (std::size_t bits = 0; bits < size; ++bits) {
      table[bits] = eval_bits(static_cast<std::uint32_t>(bits)) == 1;
    }
  }
  cached_table_ = std::move(table);
  return cached_table_;
}

int eval_binary(const BinaryGame& game, const Coalition& s) { return game.eval(s); }

bool is_simple(const BinaryGame& game) {
  const auto& table = game.table();
  const int n = game.n();
  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1u);
  if (table[0] || !table[full]) return false;
  for (std::uint32_t bits = 0; bits <= full; ++bits) {
    if (!table[bits]) continue;
    // Covering relation: removing any member must not create a win from a loss;
    // equivalently every superset of a winning coalition wins.
    for (int i = 0; i < n; ++i) {
      if (!((bits >> i) & 1u) && !table[bits | (1u << i)]) return false;
    }
  }
  return true;
}

namespace {

void require_simple(const BinaryGame& game, const char* op) {
  if (!is_simple(game)) {
    throw DomainError(std::string(op) + " requires a simple (monotone Boolean) game");
  }
}

// Direct right-shifts per the completeness ordering 1 >= 2 >= ... >= n:
// replace i in S by i+1 (when absent), or drop voter n.
std::vector<std::uint32_t> direct_right_shifts(std::uint32_t bits, int n) {
  std::vector<std::uint32_t> out;
  for (int i = 1; i < n; ++i) {
    std::uint32_t bi = 1u << (i - 1), bj = 1u << i;
    if ((bits & bi) && !(bits & bj)) out.push_back((bits & ~bi) | bj);
  }
  if (bits & (1u << (n - 1))) out.push_back(bits & ~(1u << (n - 1)));
  return out;
}

std::vector<std::uint32_t> direct_left_shifts(std::uint32_t bits, int n) {
  std::vector<std::uint32_t> out;
  for (int i = 2; i <= n; ++i) {
    std::uint32_t bi = 1u << (i - 1), bj = 1u << (i - 2);
    if ((bits & bi) && !(bits & bj)) out.push_back((bits & ~bi) | bj);
  }
  if (!(bits & (1u << (n - 1)))) out.push_back(bits | (1u << (n - 1)));
  return out;
}

}  // namespace

CoalitionFamilies classify_coalitions(const BinaryGame& game, bool with_shift_families) {
  require_simple(game, "classify_coalitions");
  const auto& table = game.table();
  const int n = game.n();
  const std::uint32_t full = (1u << n) - 1u;

  CoalitionFamilies out;
  for (std::uint32_t bits = 0; bits <= full; ++bits) {
    Coalition c(bits, n);
    if (table[bits]) {
      out.winning.push_back(c);
      bool minimal = true;
      for (int i = 0; i < n && minimal; ++i) {
        if ((bits >> i) & 1u) minimal = !table[bits & ~(1u << i)];
      }
      if (minimal) out.minimal_winning.push_back(c);
    } else {
      out.losing.push_back(c);
      bool maximal = true;
      for (int i = 0; i < n && maximal; ++i) {
        if (!((bits >> i) & 1u)) maximal = table[bits | (1u << i)];
      }
      if (maximal) out.maximal_losing.push_back(c);
    }
  }

  if (with_shift_families) {
    if (!is_complete(game)) {
      throw DomainError("shift families require a complete game");
    }
    for (int i = 1; i < n; ++i) {
      if (desirability(game, i + 1, i) == Desirability::i_succ) {
        throw DomainError("shift families require voters ordered by desirability (1 >= 2 >= ...)");
      }
    }
    for (const Coalition& c : out.minimal_winning) {
      bool all_shifts_lose = true;
      for (std::uint32_t t : direct_right_shifts(c.bits(), n)) {
        if (table[t]) {
          all_shifts_lose = false;
          break;
        }
      }
      // Losing direct shifts imply all iterated right-shifts lose too.
      if (all_shifts_lose) out.shift_minimal_winning.push_back(c);
    }
    for (const Coalition& c : out.maximal_losing) {
      bool all_shifts_win = true;
      for (std::uint32_t t : direct_left_shifts(c.bits(), n)) {
        if (!table[t]) {
          all_shifts_win = false;
          break;
        }
      }
      if (all_shifts_win) out.shift_maximal_losing.push_back(c);
    }
    out.shift_families_present = true;
  }
  return out;
}

GameProperties properties(const BinaryGame& game) {
  require_simple(game, "properties");
  const auto& table = game.table();
  const int n = game.n();
  const std::uint32_t full = (1u << n) - 1u;

  GameProperties out;
  out.proper = true;
  out.strong = true;
  for (std::uint32_t bits = 0; bits <= full; ++bits) {
    const std::uint32_t comp = full & ~bits;
    if (table[bits] && table[comp] && out.proper) {
      out.proper = false;
      out.proper_witness = Coalition(bits, n);
    }
    if (!table[bits] && !table[comp] && out.strong) {
      out.strong = false;
      out.strong_witness = Coalition(bits, n);
    }
    if (!out.proper && !out.strong) break;
  }
  out.constant_sum = out.proper && out.strong;
  return out;
}

Desirability desirability(const BinaryGame& game, int i, int j) {
  if (i == j) throw InputError("desirability needs two distinct voters");
  require_simple(game, "desirability");
  const auto& table = game.table();
  const int n = game.n();
  if (i < 1 || i > n || j < 1 || j > n) throw InputError("voter index out of range");

  const std::uint32_t bi = 1u << (i - 1), bj = 1u << (j - 1);
  const std::uint32_t full = (1u << n) - 1u;
  bool i_geq = true, j_geq = true;
  for (std::uint32_t bits = 0; bits <= full; ++bits) {
    if (bits & (bi | bj)) continue;
    const bool wi = table[bits | bi], wj = table[bits | bj];
    if (wj && !wi) i_geq = false;
    if (wi && !wj) j_geq = false;
    if (!i_geq && !j_geq) return Desirability::incomparable;
  }
  if (i_geq && j_geq) return Desirability::equiv;
  return i_geq ? Desirability::i_succ : Desirability::j_succ;
}

bool is_complete(const BinaryGame& game) {
  const int n = game.n();
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      if (desirability(game, i, j) == Desirability::incomparable) return false;
    }
  }
  return true;
}

std::set<int> null_voters(const BinaryGame& game) {
  require_simple(game, "null_voters");
  const auto& table = game.table();
  const int n = game.n();
  const std::uint32_t full = (1u << n) - 1u;
  std::set<int> out;
  for (int i = 1; i <= n; ++i) {
    const std::uint32_t bi = 1u << (i - 1);
    bool has_swing = false;
    for (std::uint32_t bits = 0; bits <= full && !has_swing; ++bits) {
      if (bits & bi) continue;
      has_swing = table[bits | bi] && !table[bits];
    }
    // For a monotone game, "in no minimal winning coalition" is
    // equivalent to having no swing.
    if (!has_swing) out.insert(i);
  }
  return out;
}

std::pair<Rat, Rat> quota_interval(const WeightedRep& rep) {
  bool all_zero = true;
  for (const Rat& w : rep.weights) {
    if (w != 0) all_zero = false;
    if (w < 0) throw InputError("weights must be nonnegative");
  }
  if (all_zero) throw DomainError("quota_interval: all-zero weights");

  const int n = static_cast<int>(rep.weights.size());
  std::vector<Rat> w = normalize_weights(rep.weights);
  Rat q = rep.quota / sum(rep.weights);

  const BinaryGame game = BinaryGame::weighted(q, w);
  const auto& table = game.table();
  const std::uint32_t full = (1u << n) - 1u;
  Rat lo = 0, hi = 1;
  bool lo_set = false, hi_set = false;
  for (std::uint32_t bits = 0; bits <= full; ++bits) {
    Rat ws = 0;
    for (int i = 0; i < n; ++i) {
      if ((bits >> i) & 1u) ws += w[i];
    }
    if (table[bits]) {
      if (!hi_set || ws < hi) hi = ws, hi_set = true;
    } else {
      if (!lo_set || ws > lo) lo = ws, lo_set = true;
    }
  }
  // A game with no losing coalition would have been rejected (empty set loses).
  return {lo, hi};
}

BinaryGame meet(const BinaryGame& g1, const BinaryGame& g2) {
  if (g1.n() != g2.n()) throw InputError("meet: voter counts differ");
  return BinaryGame::meet({g1, g2});
}

BinaryGame join(const BinaryGame& g1, const BinaryGame& g2) {
  if (g1.n() != g2.n()) throw InputError("join: voter counts differ");
  return BinaryGame::join({g1, g2});
}

}  // namespace powidx

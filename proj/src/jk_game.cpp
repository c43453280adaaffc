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

#include "powidx/jk_game.hpp"

#include <algorithm>
#include <numeric>

#include "powidx/philox.hpp"

namespace powidx {

namespace {

constexpr long long kSsiExhaustiveCap = 1'000'000'000LL;

long long checked_pow(long long base, int exp, long long cap) {
  long long v = 1;
  for (int i = 0; i < exp; ++i) {
    if (v > cap / base) return cap + 1;
    v *= base;
  }
  return v;
}

}  // namespace

JKGame::JKGame(int n, int j, int k, std::vector<std::uint8_t> table)
    : n_(n), j_(j), k_(k), table_(std::move(table)) {
  if (n < 1 || n > 20) throw InputError("jk game: n out of range");
  if (j < 2 || k < 2) throw InputError("jk game: j and k must be at least 2");
  const long long size = checked_pow(j, n, 1LL << 30);
  if (size > (1LL << 30)) throw CapacityError("jk game: j^n table too large");
  if (static_cast<long long>(table_.size()) != size) {
    throw InputError("jk game: table must have j^n entries");
  }
  for (std::uint8_t v : table_) {
    if (v < 1 || v > k) throw InputError("jk game: output outside 1..k");
  }
}

JKGame JKGame::from_function(int n, int j, int k,
                             const std::function<int(const Profile&)>& fn) {
  const long long size = checked_pow(j, n, 1LL << 30);
  if (size > (1LL << 30)) throw CapacityError("jk game: j^n table too large");
  std::vector<std::uint8_t> table(size);
  Profile s;
  s.levels.assign(n, 1);
  for (long long idx = 0; idx < size; ++idx) {
    table[idx] = static_cast<std::uint8_t>(fn(s));
    // mixed-radix increment, voter 1 least significant
    for (int v = 0; v < n; ++v) {
      if (s.levels[v] < j) {
        ++s.levels[v];
        break;
      }
      s.levels[v] = 1;
    }
  }
  return JKGame(n, j, k, std::move(table));
}

std::size_t JKGame::profile_index(const Profile& s) const {
  if (static_cast<int>(s.levels.size()) != n_) throw InputError("profile width mismatch");
  std::size_t idx = 0, mult = 1;
  for (int v = 0; v < n_; ++v) {
    const int lev = s.levels[v];
    if (lev < 1 || lev > j_) throw InputError("profile level outside 1..j");
    idx += static_cast<std::size_t>(lev - 1) * mult;
    mult *= j_;
  }
  return idx;
}

int JKGame::eval(const Profile& s) const { return table_[profile_index(s)]; }

bool leq_j(const Profile& s, const Profile& t) {
  if (s.levels.size() != t.levels.size()) throw InputError("profile shape mismatch");
  for (std::size_t v = 0; v < s.levels.size(); ++v) {
    if (t.levels[v] > s.levels[v]) return false;
  }
  return true;
}

bool is_jk_simple(const JKGame& game) {
  const int n = game.n(), j = game.j(), k = game.k();
  Profile s;
  s.levels.assign(n, j);
  if (game.eval(s) != k) return false;
  s.levels.assign(n, 1);
  if (game.eval(s) != 1) return false;

  // Covering pairs: raising one voter's approval by one step must not
  // worsen (numerically raise) the output.
  std::vector<std::size_t> pow(n);
  std::size_t mult = 1;
  for (int v = 0; v < n; ++v) {
    pow[v] = mult;
    mult *= j;
  }
  s.levels.assign(n, 1);
  const std::size_t size = game.table_size();
  std::size_t idx = 0;
  for (;;) {
    for (int v = 0; v < n; ++v) {
      if (s.levels[v] < j) {
        // s' = s with voter v one level less approving
        if (game.eval_index(idx) > game.eval_index(idx + pow[v])) return false;
      }
    }
    int v = 0;
    for (; v < n; ++v) {
      if (s.levels[v] < j) {
        ++s.levels[v];
        idx += pow[v];
        break;
      }
      s.levels[v] = 1;
      idx -= static_cast<std::size_t>(j - 1) * pow[v];
    }
    if (v == n) break;
  }
  (void)size;
  return true;
}

namespace {

// Walks the queue once, filling best[t] / worst[t] for t = 0..n where later
// voters are pinned to level 1 (best case) or level j (worst case).
struct RevealWalk {
  std::vector<int> best, worst;
};

RevealWalk reveal_walk(const JKGame& game, const std::vector<int>& order, const Profile& s,
                       const std::vector<std::size_t>& pow) {
  const int n = game.n(), j = game.j();
  RevealWalk w;
  w.best.resize(n + 1);
  w.worst.resize(n + 1);
  std::size_t best_idx = 0;  // all at level 1
  std::size_t worst_idx = 0;
  for (int v = 0; v < n; ++v) worst_idx += static_cast<std::size_t>(j - 1) * pow[v];
  w.best[0] = game.eval_index(best_idx);
  w.worst[0] = game.eval_index(worst_idx);
  for (int t = 1; t <= n; ++t) {
    const int voter = order[t - 1] - 1;
    const int lev = s.levels[voter];
    best_idx += static_cast<std::size_t>(lev - 1) * pow[voter];
    worst_idx -= static_cast<std::size_t>(j - lev) * pow[voter];
    w.best[t] = game.eval_index(best_idx);
    w.worst[t] = game.eval_index(worst_idx);
  }
  return w;
}

std::vector<std::size_t> radix_powers(int n, int j) {
  std::vector<std::size_t> pow(n);
  std::size_t mult = 1;
  for (int v = 0; v < n; ++v) {
    pow[v] = mult;
    mult *= j;
  }
  return pow;
}

void require_jk_simple(const JKGame& game, const char* op) {
  if (!is_jk_simple(game)) {
    throw DomainError(std::string(op) + " requires a (j,k) simple game");
  }
}

}  // namespace

int pivot(const JKGame& game, const Queue& q, const Profile& s, int h) {
  const int n = game.n();
  if (h < 1 || h > game.k() - 1) throw InputError("pivot: boundary h outside 1..k-1");
  if (static_cast<int>(q.order.size()) != n) throw InputError("pivot: queue width mismatch");
  require_jk_simple(game, "pivot");

  const auto pow = radix_powers(n, game.j());
  RevealWalk w = reveal_walk(game, q.order, s, pow);
  for (int t = 1; t <= n; ++t) {
    if (w.worst[t] <= h || w.best[t] >= h + 1) return q.order[t - 1];
  }
  // Unreachable for a simple game: best[n] == worst[n] resolves every boundary.
  throw DomainError("pivot: queue walk did not resolve");
}

std::vector<std::pair<std::vector<int>, std::vector<long long>>> pivot_counts_by_queue(
    const JKGame& game) {
  require_jk_simple(game, "pivot_counts_by_queue");
  const int n = game.n(), j = game.j(), k = game.k();
  const auto pow = radix_powers(n, j);

  std::vector<std::pair<std::vector<int>, std::vector<long long>>> out;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 1);
  do {
    std::vector<long long> counts(n, 0);
    Profile s;
    s.levels.assign(n, 1);
    const std::size_t size = game.table_size();
    for (std::size_t p = 0; p < size; ++p) {
      RevealWalk w = reveal_walk(game, order, s, pow);
      for (int t = 1; t <= n; ++t) {
        // Boundaries resolved exactly at step t, counted by range overlap.
        const int lo1 = std::max(1, w.worst[t]);
        const int hi1 = std::min(k - 1, w.worst[t - 1] - 1);
        const int lo2 = std::max(1, w.best[t - 1]);
        const int hi2 = std::min(k - 1, w.best[t] - 1);
        long long resolved = 0;
        if (hi1 >= lo1) resolved += hi1 - lo1 + 1;
        if (hi2 >= lo2) resolved += hi2 - lo2 + 1;
        counts[order[t - 1] - 1] += resolved;
      }
      for (int v = 0; v < n; ++v) {
        if (s.levels[v] < j) {
          ++s.levels[v];
          break;
        }
        s.levels[v] = 1;
      }
    }
    out.emplace_back(order, std::move(counts));
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

PowerProfile ssi_jk(const JKGame& game) {
  const int n = game.n(), j = game.j(), k = game.k();
  BigInt work = factorial(n);
  work *= checked_pow(j, n, 1LL << 62);
  work *= (k - 1);
  if (work > kSsiExhaustiveCap) {
    throw CapacityError("ssi_jk: n! j^n (k-1) exceeds 1e9; use ssi_jk_sampled");
  }

  const auto by_queue = pivot_counts_by_queue(game);
  std::vector<BigInt> totals(n, 0);
  for (const auto& [order, counts] : by_queue) {
    for (int v = 0; v < n; ++v) totals[v] += counts[v];
  }
  // Each of the k-1 boundaries contributes one pivot per (queue, profile),
  // so efficiency requires the k-1 factor in the normalization (for k = 2
  // this is the classical count).
  const BigInt denom = factorial(n) * BigInt(checked_pow(j, n, 1LL << 62)) * (k - 1);
  std::vector<Rat> values(n);
  for (int v = 0; v < n; ++v) values[v] = Rat(totals[v], denom);
  return PowerProfile::from_exact(std::move(values));
}

PowerProfile ssi_jk_sampled(const JKGame& game, const JKSamplingSpec& spec) {
  require_jk_simple(game, "ssi_jk_sampled");
  const int n = game.n(), j = game.j(), k = game.k();
  const auto pow = radix_powers(n, j);

  PhiloxStream rng(spec.seed, /*stream=*/0x6A6B5353);  // "jkSS"
  std::vector<double> mean(n, 0.0), m2(n, 0.0);
  std::vector<int> order(n);
  Profile s;
  s.levels.assign(n, 1);
  for (long long it = 0; it < spec.samples; ++it) {
    std::iota(order.begin(), order.end(), 1);
    for (int v = n - 1; v > 0; --v) {
      std::swap(order[v], order[rng.next_below(static_cast<std::uint32_t>(v + 1))]);
    }
    for (int v = 0; v < n; ++v) {
      s.levels[v] = static_cast<std::uint8_t>(1 + rng.next_below(static_cast<std::uint32_t>(j)));
    }
    RevealWalk w = reveal_walk(game, order, s, pow);
    for (int t = 1; t <= n; ++t) {
      const int lo1 = std::max(1, w.worst[t]);
      const int hi1 = std::min(k - 1, w.worst[t - 1] - 1);
      const int lo2 = std::max(1, w.best[t - 1]);
      const int hi2 = std::min(k - 1, w.best[t] - 1);
      long long resolved = 0;
      if (hi1 >= lo1) resolved += hi1 - lo1 + 1;
      if (hi2 >= lo2) resolved += hi2 - lo2 + 1;
      const int voter = order[t - 1] - 1;
      const double x = static_cast<double>(resolved);
      const double d = x - mean[voter];
      mean[voter] += d / static_cast<double>(it + 1);
      m2[voter] += d * (x - mean[voter]);
    }
  }

  PowerProfile out;
  out.method = Method::monte_carlo;
  out.seed = spec.seed;
  out.values.resize(n);
  double worst_err = 0.0;
  const double boundaries = static_cast<double>(k - 1);
  for (int v = 0; v < n; ++v) {
    out.values[v] = mean[v] / boundaries;
    const double var = m2[v] / std::max(1.0, static_cast<double>(spec.samples - 1));
    worst_err = std::max(
        worst_err, 3.0 * std::sqrt(var / static_cast<double>(spec.samples)) / boundaries);
  }
  out.error_bound = worst_err;
  return out;
}

long long swings(const JKGame& game, int i) {
  require_jk_simple(game, "swings");
  const int n = game.n(), j = game.j();
  if (i < 1 || i > n) throw InputError("swings: voter out of range");
  const auto pow = radix_powers(n, j);
  const int v = i - 1;

  long long eta = 0;
  Profile s;
  s.levels.assign(n, 1);
  const std::size_t size = game.table_size();
  std::size_t idx = 0;
  for (std::size_t p = 0; p < size; ++p) {
    if (s.levels[v] < j) {
      eta += game.eval_index(idx + pow[v]) - game.eval_index(idx);
    }
    for (int w = 0; w < n; ++w) {
      if (s.levels[w] < j) {
        ++s.levels[w];
        idx += pow[w];
        break;
      }
      s.levels[w] = 1;
      idx -= static_cast<std::size_t>(j - 1) * pow[w];
    }
  }
  return eta;
}

PowerProfile bzi_jk(const JKGame& game) {
  const int n = game.n(), j = game.j(), k = game.k();
  BigInt denom = 1;
  for (int t = 0; t < n - 1; ++t) denom *= j;
  denom *= (k - 1);
  std::vector<Rat> values(n);
  for (int i = 1; i <= n; ++i) values[i - 1] = Rat(BigInt(swings(game, i)), denom);
  return PowerProfile::from_exact(std::move(values));
}

JKGame embed_binary(const BinaryGame& game) {
  if (!is_simple(game)) throw DomainError("embed_binary requires a simple game");
  const int n = game.n();
  return JKGame::from_function(n, 2, 2, [&](const Profile& s) {
    std::uint32_t yes = 0;
    for (int v = 0; v < n; ++v) {
      if (s.levels[v] == 1) yes |= (1u << v);
    }
    return game.eval_bits(yes) == 1 ? 1 : 2;
  });
}

}  // namespace powidx

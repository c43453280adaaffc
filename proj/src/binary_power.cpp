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

#include "powidx/binary_power.hpp"

namespace powidx {

namespace {

// Swing counts per coalition size: counts[i][s] = #{S without i, |S|=s,
// g(S)=0, g(S+i)=1}.
std::vector<std::vector<long long>> swing_counts(const BinaryGame& game) {
  const int n = game.n();
  const auto& table = game.table();
  const std::uint32_t full = (1u << n) - 1u;
  std::vector<std::vector<long long>> counts(n, std::vector<long long>(n, 0));
  for (std::uint32_t bits = 0; bits <= full; ++bits) {
    if (table[bits]) continue;
    const int s = std::popcount(bits);
    for (int i = 0; i < n; ++i) {
      if ((bits >> i) & 1u) continue;
      if (table[bits | (1u << i)]) ++counts[i][s];
    }
  }
  return counts;
}

}  // namespace

PowerProfile ssi_binary(const BinaryGame& game) {
  const int n = game.n();
  const auto counts = swing_counts(game);
  const BigInt n_fact = factorial(n);

  std::vector<BigInt> size_weight(n);  // s!(n-1-s)!
  for (int s = 0; s < n; ++s) size_weight[s] = factorial(s) * factorial(n - 1 - s);

  std::vector<Rat> values(n);
  for (int i = 0; i < n; ++i) {
    BigInt num = 0;
    for (int s = 0; s < n; ++s) num += size_weight[s] * counts[i][s];
    values[i] = Rat(num, n_fact);
  }
  return PowerProfile::from_exact(std::move(values));
}

PowerProfile bzi_binary(const BinaryGame& game) {
  const int n = game.n();
  const auto counts = swing_counts(game);
  const BigInt denom = BigInt(1) << (n - 1);

  std::vector<Rat> values(n);
  for (int i = 0; i < n; ++i) {
    BigInt eta = 0;
    for (int s = 0; s < n; ++s) eta += counts[i][s];
    values[i] = Rat(eta, denom);
  }
  return PowerProfile::from_exact(std::move(values));
}

PowerProfile normalize(const PowerProfile& profile) {
  PowerProfile out = profile;
  if (!profile.exact_values.empty()) {
    Rat total = sum(profile.exact_values);
    if (total == 0) throw DomainError("normalize: profile sums to zero");
    for (std::size_t i = 0; i < out.exact_values.size(); ++i) {
      out.exact_values[i] /= total;
      out.values[i] = to_double(out.exact_values[i]);
    }
    return out;
  }
  double total = 0;
  for (double v : profile.values) total += v;
  if (total == 0) throw DomainError("normalize: profile sums to zero");
  for (double& v : out.values) v /= total;
  if (out.error_bound) *out.error_bound /= total;
  return out;
}

bool transfer_check(const BinaryIndex& index, const BinaryGame& g1, const BinaryGame& g2) {
  if (g1.n() != g2.n()) throw InputError("transfer_check: voter counts differ");
  PowerProfile p1 = index(g1);
  PowerProfile p2 = index(g2);
  PowerProfile pm = index(meet(g1, g2));
  PowerProfile pj = index(join(g1, g2));
  for (int i = 0; i < g1.n(); ++i) {
    if (p1.exact_values[i] + p2.exact_values[i] !=
        pm.exact_values[i] + pj.exact_values[i]) {
      return false;
    }
  }
  return true;
}

}  // namespace powidx

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "powidx/binary_power.hpp"
#include "powidx/philox.hpp"

using namespace powidx;

namespace {

// Independent O(n! 2^n) oracle: walk every voter order and credit the
// voter whose arrival turns the growing coalition winning.
std::vector<Rat> ssi_permutation_oracle(const BinaryGame& game) {
  const int n = game.n();
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::vector<BigInt> counts(n, 0);
  BigInt total = 0;
  do {
    std::uint32_t bits = 0;
    for (int t = 0; t < n; ++t) {
      const std::uint32_t next = bits | (1u << order[t]);
      if (game.eval_bits(next) == 1 && game.eval_bits(bits) == 0) {
        ++counts[order[t]];
        break;
      }
      bits = next;
    }
    ++total;
  } while (std::next_permutation(order.begin(), order.end()));
  std::vector<Rat> out(n);
  for (int i = 0; i < n; ++i) out[i] = Rat(counts[i], total);
  return out;
}

BinaryGame random_simple_table(PhiloxStream& rng, int n) {
  // Random monotone table from a random weighted majority plus noise join.
  std::vector<Rat> w;
  Rat total = 0;
  for (int i = 0; i < n; ++i) {
    w.emplace_back(static_cast<int>(1 + rng.next_below(4)));
    total += w.back();
  }
  const Rat q = Rat(1 + static_cast<int>(rng.next_below(
                     static_cast<std::uint32_t>(total.convert_to<int>()))));
  return BinaryGame::weighted(q, w);
}

}  // namespace

TEST_CASE("ssi worked values") {
  const PowerProfile p = ssi_binary(BinaryGame::weighted(Rat(3), {Rat(2), Rat(1), Rat(1), Rat(1)}));
  CHECK(p.exact_values == std::vector<Rat>{Rat(1, 2), Rat(1, 6), Rat(1, 6), Rat(1, 6)});
  const PowerProfile d = ssi_binary(BinaryGame::weighted(Rat(1), {Rat(1), Rat(0)}));
  CHECK(d.exact_values == std::vector<Rat>{Rat(1), Rat(0)});
  const PowerProfile m = ssi_binary(BinaryGame::weighted(Rat(2), {Rat(1), Rat(1), Rat(1)}));
  CHECK(m.exact_values == std::vector<Rat>{Rat(1, 3), Rat(1, 3), Rat(1, 3)});
}

TEST_CASE("ssi agrees with the permutation oracle") {
  PhiloxStream rng(3, 0);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(5));
    const BinaryGame g = random_simple_table(rng, n);
    CHECK(ssi_binary(g).exact_values == ssi_permutation_oracle(g));
  }
}

TEST_CASE("bzi worked values") {
  const PowerProfile p = bzi_binary(BinaryGame::weighted(Rat(2), {Rat(1), Rat(1), Rat(1)}));
  CHECK(p.exact_values == std::vector<Rat>{Rat(1, 2), Rat(1, 2), Rat(1, 2)});
  CHECK(normalize(p).exact_values == std::vector<Rat>{Rat(1, 3), Rat(1, 3), Rat(1, 3)});
  const PowerProfile d = bzi_binary(BinaryGame::weighted(Rat(1), {Rat(1), Rat(0)}));
  CHECK(d.exact_values == std::vector<Rat>{Rat(1), Rat(0)});
  const PowerProfile z = bzi_binary(BinaryGame::weighted(Rat(2), {Rat(1), Rat(1), Rat(0)}));
  CHECK(z.exact_values[2] == Rat(0));
}

TEST_CASE("normalize rejects the zero profile") {
  PowerProfile p = PowerProfile::from_exact({Rat(0), Rat(0)});
  CHECK_THROWS_AS(normalize(p), DomainError);
}

TEST_CASE("ssi power-index properties on random simple games") {
  PhiloxStream rng(17, 0);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(7));
    const BinaryGame g = random_simple_table(rng, n);
    const PowerProfile p = ssi_binary(g);
    Rat total = 0;
    for (const Rat& v : p.exact_values) {
      CHECK(v >= 0);  // positive
      total += v;
    }
    CHECK(total == Rat(1));  // efficient
    for (int i : null_voters(g)) CHECK(p.exact_values[i - 1] == Rat(0));
  }
}

TEST_CASE("ssi symmetry under voter relabeling") {
  // Swap voters 1 and 3 of [3;2,1,1]: the profile permutes accordingly.
  const PowerProfile a = ssi_binary(BinaryGame::weighted(Rat(3), {Rat(2), Rat(1), Rat(1)}));
  const PowerProfile b = ssi_binary(BinaryGame::weighted(Rat(3), {Rat(1), Rat(1), Rat(2)}));
  CHECK(a.exact_values[0] == b.exact_values[2]);
  CHECK(a.exact_values[1] == b.exact_values[1]);
  CHECK(a.exact_values[2] == b.exact_values[0]);
}

TEST_CASE("transfer axiom holds for ssi and bzi") {
  PhiloxStream rng(23, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(4));
    const BinaryGame g1 = random_simple_table(rng, n);
    const BinaryGame g2 = random_simple_table(rng, n);
    CHECK(transfer_check(static_cast<PowerProfile (*)(const BinaryGame&)>(ssi_binary), g1, g2));
    CHECK(transfer_check(static_cast<PowerProfile (*)(const BinaryGame&)>(bzi_binary), g1, g2));
  }
}

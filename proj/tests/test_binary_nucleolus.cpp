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

#include <algorithm>
#include <cmath>

#include "powidx/binary_nucleolus.hpp"
#include "powidx/philox.hpp"

using namespace powidx;

namespace {

// Sorted (descending) excess vector over all proper coalitions.
std::vector<double> excess_vector(const BinaryGame& game, const std::vector<double>& x) {
  const int n = game.n();
  std::vector<double> ex;
  for (std::uint32_t bits = 1; bits + 1 < (1u << n); ++bits) {
    double xs = 0.0;
    for (int i = 0; i < n; ++i) {
      if ((bits >> i) & 1u) xs += x[i];
    }
    ex.push_back(static_cast<double>(game.eval_bits(bits)) - xs);
  }
  std::sort(ex.rbegin(), ex.rend());
  return ex;
}

// lexicographic comparison with tolerance: negative if a < b
int lex_compare(const std::vector<double>& a, const std::vector<double>& b, double tol = 1e-9) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] < b[k] - tol) return -1;
    if (a[k] > b[k] + tol) return 1;
  }
  return 0;
}

}  // namespace

TEST_CASE("worked nucleolus values") {
  const PowerProfile p =
      nucleolus_binary(BinaryGame::weighted(Rat(3), {Rat(2), Rat(1), Rat(1), Rat(1)}));
  REQUIRE_FALSE(p.exact_values.empty());
  CHECK(p.exact_values == std::vector<Rat>{Rat(2, 5), Rat(1, 5), Rat(1, 5), Rat(1, 5)});

  const PowerProfile q = nucleolus_binary(BinaryGame::weighted(Rat(2), {Rat(1), Rat(1), Rat(1)}));
  CHECK(q.exact_values == std::vector<Rat>{Rat(1, 3), Rat(1, 3), Rat(1, 3)});

  const PowerProfile r = nucleolus_binary(BinaryGame::weighted(Rat(2), {Rat(1), Rat(1), Rat(0)}));
  CHECK(r.exact_values == std::vector<Rat>{Rat(1, 2), Rat(1, 2), Rat(0)});
}

TEST_CASE("dictator and unanimity") {
  const PowerProfile d = nucleolus_binary(BinaryGame::weighted(Rat(1), {Rat(1), Rat(0), Rat(0)}));
  CHECK(d.exact_values == std::vector<Rat>{Rat(1), Rat(0), Rat(0)});
  const PowerProfile u = nucleolus_binary(BinaryGame::from_winning(3, {Coalition::full(3)}));
  CHECK(u.exact_values == std::vector<Rat>{Rat(1, 3), Rat(1, 3), Rat(1, 3)});
}

TEST_CASE("rejects non-simple games and oversized inputs") {
  CHECK_THROWS_AS(nucleolus_binary(BinaryGame::from_table(2, {false, true, false, false})),
                  DomainError);
}

TEST_CASE("nucleolus beats random imputations lexicographically") {
  PhiloxStream rng(5, 0);
  const std::vector<BinaryGame> games = {
      BinaryGame::weighted(Rat(3), {Rat(2), Rat(1), Rat(1), Rat(1)}),
      BinaryGame::weighted(Rat(2), {Rat(1), Rat(1), Rat(0)}),
      BinaryGame::weighted(Rat(4), {Rat(3), Rat(2), Rat(1), Rat(1)}),
      BinaryGame::weighted(Rat(5), {Rat(3), Rat(2), Rat(2), Rat(1), Rat(1)}),
  };
  for (const BinaryGame& g : games) {
    const PowerProfile p = nucleolus_binary(g);
    const std::vector<double> nx = p.values;
    const auto base = excess_vector(g, nx);
    // Imputation: nonnegative, sums to one.
    double total = 0.0;
    for (double v : nx) {
      CHECK(v >= -1e-12);
      total += v;
    }
    CHECK(std::fabs(total - 1.0) < 1e-9);
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<double> y(g.n());
      double s = 0.0;
      for (double& v : y) {
        v = -std::log(1.0 - rng.next_double() + 1e-300);
        s += v;
      }
      for (double& v : y) v /= s;
      CHECK(lex_compare(base, excess_vector(g, y), 1e-7) <= 0);
    }
  }
}

TEST_CASE("random weighted games: lexicographic optimality spot check") {
  PhiloxStream rng(99, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + static_cast<int>(rng.next_below(3));
    std::vector<Rat> w;
    Rat total = 0;
    for (int i = 0; i < n; ++i) {
      w.emplace_back(static_cast<int>(1 + rng.next_below(3)));
      total += w.back();
    }
    const Rat q = Rat(1 + static_cast<int>(
                          rng.next_below(static_cast<std::uint32_t>(total.convert_to<int>()))));
    const BinaryGame g = BinaryGame::weighted(q, w);
    const PowerProfile p = nucleolus_binary(g);
    const auto base = excess_vector(g, p.values);
    for (int probe = 0; probe < 200; ++probe) {
      std::vector<double> y(n);
      double s = 0.0;
      for (double& v : y) {
        v = rng.next_double() + 1e-9;
        s += v;
      }
      for (double& v : y) v /= s;
      CHECK(lex_compare(base, excess_vector(g, y), 1e-7) <= 0);
    }
  }
}

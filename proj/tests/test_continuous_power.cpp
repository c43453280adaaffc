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

#include <cmath>

#include "powidx/binary_power.hpp"
#include "powidx/continuous_power.hpp"
#include "powidx/philox.hpp"
#include "powidx/reproduce.hpp"

using namespace powidx;

namespace {

NumericsSpec exact_spec() {
  NumericsSpec s;
  s.mode = Method::exact;
  return s;
}

}  // namespace

TEST_CASE("exact ssi of the worked games") {
  const PowerProfile ghat = ssi_continuous(make_quadratic_weights_game(), exact_spec());
  CHECK(ghat.exact_values == std::vector<Rat>{Rat(1, 6), Rat(2, 6), Rat(3, 6)});
  const PowerProfile gtil = ssi_continuous(make_cubic_product_game(), exact_spec());
  CHECK(gtil.exact_values == std::vector<Rat>{Rat(35, 144), Rat(50, 144), Rat(59, 144)});
}

TEST_CASE("per-queue exact term: identity queue of the product game") {
  CHECK(ssi_queue_term_exact(make_cubic_product_game(), {1, 2, 3}, 1) == Rat(1, 2));
  CHECK(ssi_queue_term_exact(make_cubic_product_game(), {1, 2, 3}, 2) == Rat(1, 3));
  CHECK(ssi_queue_term_exact(make_cubic_product_game(), {1, 2, 3}, 3) == Rat(1, 6));
}

TEST_CASE("exact bzi of the worked games") {
  const PowerProfile ghat = bzi_continuous(make_quadratic_weights_game(), exact_spec());
  CHECK(ghat.exact_values == std::vector<Rat>{Rat(1, 6), Rat(2, 6), Rat(3, 6)});
  const PowerProfile gtil = bzi_continuous(make_cubic_product_game(), exact_spec());
  CHECK(gtil.exact_values == std::vector<Rat>{Rat(1, 12), Rat(1, 8), Rat(1, 6)});
  CHECK(normalize(gtil).exact_values == std::vector<Rat>{Rat(2, 9), Rat(3, 9), Rat(4, 9)});
  const PowerProfile lw = bzi_continuous(
      ContinuousGame::linear_weighted({Rat(1, 5), Rat(3, 10), Rat(1, 2)}), exact_spec());
  CHECK(lw.exact_values == std::vector<Rat>{Rat(1, 5), Rat(3, 10), Rat(1, 2)});
}

TEST_CASE("quadrature and monte carlo agree with exact") {
  NumericsSpec quad;
  quad.mode = Method::quadrature;
  quad.quadrature_order = 12;
  const PowerProfile q = ssi_continuous(make_cubic_product_game(), quad);
  CHECK(std::fabs(q.values[0] - 35.0 / 144) < 1e-10);
  CHECK(std::fabs(q.values[1] - 50.0 / 144) < 1e-10);
  CHECK(std::fabs(q.values[2] - 59.0 / 144) < 1e-10);

  NumericsSpec mc;
  mc.mode = Method::monte_carlo;
  mc.mc_samples = 300000;
  mc.seed = 99;
  const PowerProfile m = ssi_continuous(make_cubic_product_game(), mc);
  const double tol = std::max(3e-3, m.error_bound.value_or(0.0));
  CHECK(std::fabs(m.values[0] - 35.0 / 144) < tol);
  CHECK(std::fabs(m.values[1] - 50.0 / 144) < tol);
  CHECK(std::fabs(m.values[2] - 59.0 / 144) < tol);

  const PowerProfile bq = bzi_continuous(make_quadratic_weights_game(), quad);
  CHECK(std::fabs(bq.values[0] - 1.0 / 6) < 1e-10);
  const PowerProfile bm = bzi_continuous(make_quadratic_weights_game(), mc);
  CHECK(std::fabs(bm.values[2] - 0.5) < std::max(3e-3, bm.error_bound.value_or(0.0)));
}

TEST_CASE("exact mode rejects families without a closed form") {
  CHECK_THROWS_AS(ssi_continuous(ContinuousGame::median(3), exact_spec()), DomainError);
  CHECK_THROWS_AS(
      bzi_continuous(ContinuousGame::weighted_median({Rat(1), Rat(1)}), exact_spec()),
      DomainError);
}

TEST_CASE("efficiency holds for every built-in family instance") {
  // Exact where possible.
  for (const ContinuousGame& g :
       {make_quadratic_weights_game(), make_cubic_product_game()}) {
    CHECK(sum(ssi_continuous(g, exact_spec()).exact_values) == Rat(1));
  }
  // Monte Carlo families: sum within 3 sigma of 1 (sigma of the sum bounded
  // by the sum of the componentwise 3-sigma bounds).
  NumericsSpec mc;
  mc.mode = Method::monte_carlo;
  mc.mc_samples = 200000;
  mc.seed = 2024;
  const std::vector<ContinuousGame> sampled{
      ContinuousGame::median(3),
      ContinuousGame::weighted_median({Rat(5), Rat(3), Rat(2)}),
      ContinuousGame::threshold(Rat(3, 5), {Rat(1, 2), Rat(3, 10), Rat(1, 5)}),
      ContinuousGame::quota_weighted(
          QuotaFunction::piecewise_linear(
              {{Rat(0), Rat(0)}, {Rat(1, 2), Rat(1, 5)}, {Rat(1), Rat(1)}}),
          {Rat(1, 2), Rat(1, 4), Rat(1, 4)}),
      meet(make_quadratic_weights_game(), make_cubic_product_game()),
      join(make_quadratic_weights_game(), make_cubic_product_game()),
  };
  for (const ContinuousGame& g : sampled) {
    const PowerProfile p = ssi_continuous(g, mc);
    double total = 0.0;
    for (double v : p.values) total += v;
    const double tol = 3.0 * p.error_bound.value_or(1e-3) * g.n();
    CHECK(std::fabs(total - 1.0) < std::max(tol, 5e-3));
  }
}

TEST_CASE("null voters get zero index") {
  // x2 ignored entirely.
  const ContinuousGame partial = ContinuousGame::monomial_sum(
      MonomialSum(3, {{Rat(1, 2), {2, 0, 0}}, {Rat(1, 2), {0, 0, 1}}}));
  const PowerProfile s = ssi_continuous(partial, exact_spec());
  CHECK(s.exact_values[1] == Rat(0));
  const PowerProfile b = bzi_continuous(partial, exact_spec());
  CHECK(b.exact_values[1] == Rat(0));
}

TEST_CASE("symmetry: permuting coordinates permutes the profile") {
  const ContinuousGame a = ContinuousGame::monomial_sum(
      MonomialSum(3, {{Rat(1, 4), {2, 0, 0}}, {Rat(3, 4), {0, 0, 3}}}));
  const ContinuousGame b = ContinuousGame::monomial_sum(
      MonomialSum(3, {{Rat(1, 4), {0, 2, 0}}, {Rat(3, 4), {3, 0, 0}}}));
  const PowerProfile pa = ssi_continuous(a, exact_spec());
  const PowerProfile pb = ssi_continuous(b, exact_spec());
  CHECK(pa.exact_values[0] == pb.exact_values[1]);
  CHECK(pa.exact_values[2] == pb.exact_values[0]);
  CHECK(pa.exact_values[1] == pb.exact_values[2]);
}

TEST_CASE("threshold-type embedding reproduces the binary ssi exactly") {
  // Binarize each coordinate at 1/2 and combine per the minimal winning
  // coalitions: join of meets of single-coordinate thresholds.
  const auto embed = [](const BinaryGame& g) {
    const CoalitionFamilies fam = classify_coalitions(g);
    std::vector<ContinuousGame> meets;
    for (const Coalition& c : fam.minimal_winning) {
      std::vector<ContinuousGame> leaves;
      for (int v : c.members()) {
        std::vector<Rat> w(g.n(), Rat(0));
        w[v - 1] = Rat(1);
        leaves.push_back(ContinuousGame::threshold(Rat(1, 2), w));
      }
      meets.push_back(ContinuousGame::meet(std::move(leaves)));
    }
    return ContinuousGame::join(std::move(meets));
  };

  PhiloxStream rng(8, 0);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(3));
    std::vector<Rat> w;
    Rat total = 0;
    for (int i = 0; i < n; ++i) {
      w.emplace_back(static_cast<int>(1 + rng.next_below(3)));
      total += w.back();
    }
    const Rat q = Rat(1 + static_cast<int>(
                          rng.next_below(static_cast<std::uint32_t>(total.convert_to<int>()))));
    const BinaryGame g = BinaryGame::weighted(q, w);
    const ContinuousGame e = embed(g);
    CHECK(ssi_continuous(e, exact_spec()).exact_values == ssi_binary(g).exact_values);
    CHECK(bzi_continuous(e, exact_spec()).exact_values == bzi_binary(g).exact_values);
  }
}

TEST_CASE("transfer property for continuous ssi via monte carlo") {
  NumericsSpec mc;
  mc.mode = Method::monte_carlo;
  mc.mc_samples = 150000;
  mc.seed = 31337;
  const ContinuousGame g1 = ContinuousGame::threshold(Rat(3, 5), {Rat(1, 2), Rat(1, 2)});
  const ContinuousGame g2 = ContinuousGame::threshold(Rat(1, 2), {Rat(3, 4), Rat(1, 4)});
  const PowerProfile p1 = ssi_continuous(g1, mc);
  const PowerProfile p2 = ssi_continuous(g2, mc);
  const PowerProfile pm = ssi_continuous(meet(g1, g2), mc);
  const PowerProfile pj = ssi_continuous(join(g1, g2), mc);
  for (int i = 0; i < 2; ++i) {
    const double lhs = p1.values[i] + p2.values[i];
    const double rhs = pm.values[i] + pj.values[i];
    CHECK(std::fabs(lhs - rhs) < 2e-2);  // MC error on four estimates
  }
}

TEST_CASE("median shortcut") {
  const PowerProfile p = median_ssi_shortcut({Rat(5), Rat(3), Rat(2), Rat(1)});
  CHECK(p.exact_values == std::vector<Rat>{Rat(1, 2), Rat(1, 6), Rat(1, 6), Rat(1, 6)});
  const PowerProfile q = median_ssi_shortcut({Rat(1), Rat(1), Rat(1)});
  CHECK(q.exact_values == std::vector<Rat>{Rat(1, 3), Rat(1, 3), Rat(1, 3)});
  // {1,2} hits half of 1+1+2.
  CHECK_THROWS_AS(median_ssi_shortcut({Rat(1), Rat(1), Rat(2)}), PreconditionError);
}

TEST_CASE("median shortcut agrees with direct monte carlo") {
  NumericsSpec mc;
  mc.mode = Method::monte_carlo;
  mc.mc_samples = 400000;
  mc.seed = 555;
  const ContinuousGame wm = ContinuousGame::weighted_median({Rat(5), Rat(3), Rat(2), Rat(1)});
  const PowerProfile direct = ssi_continuous(wm, mc);
  const PowerProfile shortcut = median_ssi_shortcut({Rat(5), Rat(3), Rat(2), Rat(1)});
  for (int i = 0; i < 4; ++i) {
    CHECK(std::fabs(direct.values[i] - shortcut.values[i]) <
          std::max(3.0 * direct.error_bound.value_or(1e-3), 5e-3));
  }
}

TEST_CASE("density ssi with uniform densities reduces to the plain index") {
  std::vector<PiecewisePoly> uniform;
  for (int v = 0; v < 3; ++v) {
    uniform.emplace_back(Rat(0), Rat(1),
                         std::vector<PolyPiece>{PolyPiece{Rat(0), Rat(1), {Rat(1)}}});
  }
  const DensityVector dv = make_density_vector(std::move(uniform));
  NumericsSpec quad;
  quad.mode = Method::quadrature;
  quad.quadrature_order = 20;
  const ContinuousGame g = make_cubic_product_game();
  const PowerProfile pd = ssi_density(g, dv, quad);
  for (int i = 0; i < 3; ++i) {
    CHECK(std::fabs(pd.values[i] - to_double(ssi_continuous(g, exact_spec()).exact_values[i])) <
          1e-6);
  }
  const PowerProfile bd = bzi_density(g, dv, quad);
  CHECK(std::fabs(bd.values[0] - 1.0 / 12) < 1e-8);
}

TEST_CASE("density validation") {
  // Mass 2 on [0,1] is rejected.
  CHECK_THROWS_AS(
      make_density_vector({PiecewisePoly(
          Rat(0), Rat(1), std::vector<PolyPiece>{PolyPiece{Rat(0), Rat(1), {Rat(2)}}})}),
      InputError);
}

TEST_CASE("spiked density concentrates power on the matching voter") {
  // Voter 1 votes near 1, the others near 0: with a threshold needing only
  // voter 1's weight, voter 1 keeps all Banzhaf power under any density,
  // and a peaked-vs-flat comparison shifts SSI toward the peaked voter.
  std::vector<PiecewisePoly> spiky;
  // near-one spike: f(x) = 5 x^4 on [0,1]
  spiky.emplace_back(Rat(0), Rat(1),
                     std::vector<PolyPiece>{PolyPiece{Rat(0), Rat(1), {Rat(0), Rat(0), Rat(0), Rat(0), Rat(5)}}});
  // near-zero spike: f(x) = 5 (1-x)^4, expanded coefficients
  spiky.emplace_back(
      Rat(0), Rat(1),
      std::vector<PolyPiece>{PolyPiece{
          Rat(0), Rat(1), {Rat(5), Rat(-20), Rat(30), Rat(-20), Rat(5)}}});
  const DensityVector dv = make_density_vector(std::move(spiky));

  const ContinuousGame dictator = ContinuousGame::threshold(Rat(1, 2), {Rat(1), Rat(0)});
  NumericsSpec mc;
  mc.mode = Method::monte_carlo;
  mc.mc_samples = 100000;
  mc.seed = 8;
  const PowerProfile b = bzi_density(dictator, dv, mc);
  CHECK(b.values[0] == doctest::Approx(1.0));
  CHECK(b.values[1] == doctest::Approx(0.0));
}

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

#include "powidx/continuous_nucleolus.hpp"
#include "powidx/philox.hpp"
#include "powidx/reproduce.hpp"

using namespace powidx;

TEST_CASE("excess basics") {
  const ContinuousGame ghat = make_quadratic_weights_game();
  const WeightPoint w({1.0 / 6, 2.0 / 6, 3.0 / 6});
  CHECK(excess(ghat, std::vector<double>{0, 0, 0}, w) == doctest::Approx(0.0));
  // e((0,1,0), w) = 1/3 - w2
  CHECK(excess(ghat, std::vector<double>{0, 1, 0}, w) == doctest::Approx(1.0 / 3 - 2.0 / 6));
  // closed form at the optimum: -x1(1-x1)/6 - x2(1-x2)/3 - x3(1-x3)/2 <= 0
  PhiloxStream rng(1, 0);
  std::vector<double> x(3);
  for (int trial = 0; trial < 1000; ++trial) {
    for (double& v : x) v = rng.next_double();
    const double e = excess(ghat, x, w);
    const double closed =
        -x[0] * (1 - x[0]) / 6 - x[1] * (1 - x[1]) / 3 - x[2] * (1 - x[2]) / 2;
    CHECK(e == doctest::Approx(closed));
    CHECK(e <= 1e-12);
    CHECK(e >= -1.0);
  }
  CHECK_THROWS_AS(WeightPoint({0.5, 0.6}), InputError);
}

TEST_CASE("max excess: separable candidates and corner bound") {
  const ContinuousGame ghat = make_quadratic_weights_game();
  const MaxExcessResult at_star = max_excess(ghat, WeightPoint({1.0 / 6, 2.0 / 6, 3.0 / 6}));
  CHECK_FALSE(at_star.heuristic);
  CHECK(at_star.value == doctest::Approx(0.0).epsilon(1e-12));

  PhiloxStream rng(3, 0);
  for (int trial = 0; trial < 20; ++trial) {
    double a = rng.next_double() + 0.01, b = rng.next_double() + 0.01,
           c = rng.next_double() + 0.01;
    const double t = a + b + c;
    const WeightPoint w({a / t, b / t, c / t});
    const MaxExcessResult me = max_excess(ghat, w);
    const double bound = std::max({std::fabs(1.0 / 6 - w.w[0]), std::fabs(1.0 / 3 - w.w[1]),
                                   std::fabs(0.5 - w.w[2])});
    CHECK(me.value >= bound - 1e-12);
    // Separable evaluation agrees with random search within 1e-9.
    double probe = -1;
    std::vector<double> x(3);
    for (int s = 0; s < 20000; ++s) {
      for (double& v : x) v = rng.next_double();
      probe = std::max(probe, excess(ghat, x, w));
    }
    CHECK(me.value >= probe - 1e-9);
  }
}

TEST_CASE("max excess of product games is zero for positive weights") {
  const ContinuousGame gtil = make_cubic_product_game();
  const MaxExcessResult me = max_excess(gtil, WeightPoint({0.3, 0.3, 0.4}));
  CHECK(me.heuristic);
  CHECK(std::fabs(me.value) < 1e-9);
  const ContinuousGame g2 = make_two_voter_product_game();
  const MaxExcessResult me2 = max_excess(g2, WeightPoint({0.45, 0.55}));
  CHECK(std::fabs(me2.value) < 1e-9);
}

TEST_CASE("excess curve sanity") {
  const ContinuousGame g2 = make_two_voter_product_game();
  const WeightPoint w({0.45, 0.55});
  NumericsSpec spec;
  spec.mc_samples = 200000;
  spec.seed = 11;
  const std::vector<double> grid{0.5, 0.2, 0.05, 0.0, -0.05, -0.2, -0.5, -1.0};
  const ExcessCurve curve = excess_curve(g2, w, grid, spec);
  // c = -1: everything qualifies. c above the max excess: nothing.
  CHECK(curve.volumes.back() == doctest::Approx(1.0));
  CHECK(curve.volumes[0] == doctest::Approx(0.0));
  CHECK(curve.volumes[3] == doctest::Approx(0.0).epsilon(1e-6));  // measure-zero level set
  // Monotone nondecreasing as c falls.
  for (std::size_t k = 1; k < curve.volumes.size(); ++k) {
    CHECK(curve.volumes[k] >= curve.volumes[k - 1] - 3.0 * (curve.stderrs[k] + curve.stderrs[k - 1]));
  }
  CHECK_THROWS_AS(excess_curve(g2, w, {}, spec), InputError);
  CHECK_THROWS_AS(excess_curve(g2, w, {0.0, 0.1}, spec), InputError);
}

TEST_CASE("fiber and indicator estimators agree") {
  const ContinuousGame g2 = make_two_voter_product_game();
  const WeightPoint w({0.4, 0.6});
  NumericsSpec spec;
  spec.mc_samples = 400000;
  spec.seed = 21;
  const std::vector<double> grid{-0.02, -0.1, -0.3};
  const ExcessCurve fiber = excess_curve(g2, w, grid, spec);

  // Force the indicator path through an equivalent meet game (meet of the
  // monomial with itself is not a monomial body).
  const ContinuousGame meet_g = meet(g2, g2);
  const ExcessCurve ind = excess_curve(meet_g, w, grid, spec);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double tol = 3.0 * (fiber.stderrs[k] + ind.stderrs[k]) + 1e-6;
    CHECK(std::fabs(fiber.volumes[k] - ind.volumes[k]) < tol);
  }
}

TEST_CASE("compare_curves verdicts") {
  // Same seed, same weights: indistinguishable.
  const ContinuousGame g2 = make_two_voter_product_game();
  NumericsSpec spec;
  spec.mc_samples = 100000;
  spec.seed = 5;
  const std::vector<double> grid = default_curve_grid(0.0, 32, 0.05);
  const ExcessCurve a = excess_curve(g2, WeightPoint({0.45, 0.55}), grid, spec);
  const ExcessCurve a2 = excess_curve(g2, WeightPoint({0.45, 0.55}), grid, spec);
  CHECK(compare_curves(a, a2) == CurveOrder::indistinguishable);

  // Synthetic: f1 identically zero vs a step curve; zero stderr.
  ExcessCurve f1, f2;
  f1.grid = f2.grid = {0.5, 0.0, -0.5};
  f1.volumes = {0, 0, 0};
  f2.volumes = {0, 1, 1};
  f1.stderrs = f2.stderrs = {0, 0, 0};
  CHECK(compare_curves(f1, f2) == CurveOrder::a_less);
  CHECK(compare_curves(f2, f1) == CurveOrder::b_less);

  // ghat at the optimum vs uniform weights: the optimum dominates.
  const ContinuousGame ghat = make_quadratic_weights_game();
  NumericsSpec spec2;
  spec2.mc_samples = 400000;
  spec2.seed = 6;
  const std::vector<double> grid2 = default_curve_grid(0.0, 64, 0.2);
  const ExcessCurve star = excess_curve(ghat, WeightPoint({1.0 / 6, 2.0 / 6, 3.0 / 6}), grid2, spec2);
  NumericsSpec spec3 = spec2;
  spec3.seed = 7;
  const ExcessCurve uni =
      excess_curve(ghat, WeightPoint({1.0 / 3, 1.0 / 3, 1.0 / 3}), grid2, spec3);
  CHECK(compare_curves(star, uni) == CurveOrder::a_less);

  ExcessCurve wrong = star;
  wrong.grid[0] += 1.0;
  CHECK_THROWS_AS(compare_curves(wrong, uni), InputError);
}

TEST_CASE("curve grid clusters toward the top") {
  const std::vector<double> grid = default_curve_grid(0.0, 64, 0.05);
  REQUIRE(grid.size() == 64);
  for (std::size_t k = 1; k < grid.size(); ++k) {
    CHECK(grid[k] < grid[k - 1]);
    if (k >= 2) {
      // spacing grows as we move down from the top
      CHECK(grid[k - 1] - grid[k] >= (grid[k - 2] - grid[k - 1]) - 1e-15);
    }
  }
  CHECK(grid.front() > -0.001);
  CHECK(grid.back() == doctest::Approx(-0.05));
}

TEST_CASE("nucleolus search: separable certificate") {
  NumericsSpec spec;
  spec.seed = 77;
  const NucleolusResult r = nucleolus_search(make_quadratic_weights_game(), spec);
  CHECK(r.phase == NucleolusResult::Phase::max_excess_unique);
  CHECK(r.w_star[0] == doctest::Approx(1.0 / 6).epsilon(1e-10));
  CHECK(r.w_star[1] == doctest::Approx(2.0 / 6).epsilon(1e-10));
  CHECK(r.w_star[2] == doctest::Approx(3.0 / 6).epsilon(1e-10));
  CHECK(std::fabs(r.max_excess_value) <= 1e-8);

  const NucleolusResult sym = nucleolus_search(
      ContinuousGame::monomial_sum(MonomialSum(2, {{Rat(1, 2), {2, 0}}, {Rat(1, 2), {0, 2}}})),
      spec);
  CHECK(sym.w_star[0] == doctest::Approx(0.5));
  CHECK(sym.w_star[1] == doctest::Approx(0.5));
}

TEST_CASE("nucleolus search output is a weight point") {
  NumericsSpec spec;
  spec.seed = 13;
  spec.mc_samples = 100000;  // light tournament for the unit test
  const NucleolusResult r = nucleolus_search(make_two_voter_product_game(), spec);
  double total = 0.0;
  for (double v : r.w_star) {
    CHECK(v >= 0.0);
    total += v;
  }
  CHECK(total == doctest::Approx(1.0));
  CHECK(r.phase == NucleolusResult::Phase::curve_refined);
  REQUIRE(r.box_bounds.size() == 2);
  CHECK(r.box_bounds[0].first <= r.w_star[0]);
  CHECK(r.box_bounds[0].second >= r.w_star[0]);
  // The box must bracket the known optimum near 0.4554.
  CHECK(r.box_bounds[0].first <= 0.4555);
  CHECK(r.box_bounds[0].second >= 0.4553);
  CHECK_FALSE(r.final_curves.empty());
}

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

#ifndef POWIDX_CONTINUOUS_NUCLEOLUS_HPP
#define POWIDX_CONTINUOUS_NUCLEOLUS_HPP

#include <utility>

#include "powidx/continuous_game.hpp"

namespace powidx {

// Point on the weight simplex (||w||_1 = 1 within 1e-12, w >= 0).
struct WeightPoint {
  std::vector<double> w;

  explicit WeightPoint(std::vector<double> weights);
};

// e(x, w) = g(x) - w'x, in [-1, 1].
double excess(const ContinuousGame& game, std::span<const double> x, const WeightPoint& w);

struct MaxExcessResult {
  double value = 0.0;
  std::vector<double> argmax;
  bool heuristic = false;  // true when found by multistart local search
};

// Exact for monomial sums whose terms touch one coordinate each (the
// per-coordinate candidates 0, 1 and interior stationary points cover the
// maximum); multistart projected search otherwise.
MaxExcessResult max_excess(const ContinuousGame& game, const WeightPoint& w);

// vol{x : e(x,w) >= c} per grid point, with Monte Carlo standard errors.
struct ExcessCurve {
  std::vector<double> grid;  // strictly descending
  std::vector<double> volumes;
  std::vector<double> stderrs;
  std::uint64_t seed = 0;
  long long samples = 0;
};

ExcessCurve excess_curve(const ContinuousGame& game, const WeightPoint& w,
                         const std::vector<double>& grid, const NumericsSpec& spec);

enum class CurveOrder { a_less, b_less, indistinguishable };

// Suffix dominance from the top of the grid: a_less when, on the maximal
// top segment where a never exceeds b beyond 3 sigma, a dips below b
// beyond 3 sigma somewhere and has the smaller trapezoidal integral.
CurveOrder compare_curves(const ExcessCurve& a, const ExcessCurve& b);

struct NucleolusResult {
  std::vector<double> w_star;
  double max_excess_value = 0.0;
  enum class Phase { max_excess_unique, curve_refined } phase = Phase::curve_refined;
  std::vector<std::pair<double, double>> box_bounds;  // per coordinate
  // Curve samples of the last tournament round (empty for phase 1 results).
  std::vector<std::pair<std::vector<double>, ExcessCurve>> final_curves;
};

// Phase 1 minimizes the maximum excess over the simplex; for separable
// monomial games the corner bound certifies a unique minimizer. Otherwise
// phase 2 runs a shrinking-grid tournament ordered by paired excess-curve
// comparisons near the top of the excess range.
NucleolusResult nucleolus_search(const ContinuousGame& game, const NumericsSpec& spec);

// 64 grid points geometrically clustered toward `top` (the phase-1 max
// excess level), spanning `span` downward.
std::vector<double> default_curve_grid(double top, int points = 64, double span = 0.05);

}  // namespace powidx

#endif  // POWIDX_CONTINUOUS_NUCLEOLUS_HPP

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

#ifndef POWIDX_CONTINUOUS_POWER_HPP
#define POWIDX_CONTINUOUS_POWER_HPP

#include "powidx/continuous_game.hpp"
#include "powidx/density.hpp"
#include "powidx/power_profile.hpp"

namespace powidx {

inline constexpr int kSsiExhaustiveQueueCap = 8;  // n! factor

// Shapley-Shubik index per the queue-prefix integral definition, averaged
// over all n! queues. Exact mode covers monomial-sum games and meet/join
// trees of single-coordinate thresholds; quadrature and Monte Carlo cover
// every family.
PowerProfile ssi_continuous(const ContinuousGame& game, const NumericsSpec& spec);

// The single-queue integral for one voter (exact, monomial-sum only).
Rat ssi_queue_term_exact(const ContinuousGame& game, const std::vector<int>& queue, int voter);

// Monte Carlo estimate of the same term for any family.
IntegralEstimate ssi_queue_term_mc(const ContinuousGame& game, const std::vector<int>& queue,
                                   int voter, const NumericsSpec& spec);

// All per-queue terms for every voter, exact (for the regression tables).
std::vector<std::pair<std::vector<int>, std::vector<Rat>>> ssi_exact_by_queue(
    const ContinuousGame& game);

// Banzhaf: the (n-1)-dimensional integral of g(x_i=1) - g(x_i=0).
PowerProfile bzi_continuous(const ContinuousGame& game, const NumericsSpec& spec);

// Density-weighted variants; votes are drawn from per-voter densities on a
// common support and mapped affinely into [0,1] before evaluation.
PowerProfile ssi_density(const ContinuousGame& game, const DensityVector& density,
                         const NumericsSpec& spec);
PowerProfile bzi_density(const ContinuousGame& game, const DensityVector& density,
                         const NumericsSpec& spec);

// Weighted-median SSI shortcut: the index of the binary game
// [|w|_1/2; w]. Refuses when some subset hits exactly half the weight.
PowerProfile median_ssi_shortcut(const std::vector<Rat>& weights);

}  // namespace powidx

#endif  // POWIDX_CONTINUOUS_POWER_HPP

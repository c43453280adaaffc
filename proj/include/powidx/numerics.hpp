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

#ifndef POWIDX_NUMERICS_HPP
#define POWIDX_NUMERICS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "powidx/power_profile.hpp"
#include "powidx/rational.hpp"

namespace powidx {

struct NumericsSpec {
  Method mode = Method::monte_carlo;
  int quadrature_order = 16;
  long long mc_samples = 1'000'000;
  std::uint64_t seed = 0x5EEDCAFEull;
  double target_abs_err = 0.0;
  int workers = 1;
};

struct IntegralEstimate {
  double value = 0.0;
  double abs_err = 0.0;  // 0 for exact, 3-sigma for MC
  long long samples_or_order = 0;
  std::optional<std::uint64_t> seed;
};

// coef * prod 1/(e_i + 1): the box integral of a monomial over [0,1]^d.
Rat monomial_box_integral(const Rat& coef, const std::vector<int>& exponents);

// Gauss-Legendre nodes/weights on [0,1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int order);

inline constexpr int kQuadratureMaxDim = 6;

using BoxFunction = std::function<double(std::span<const double>)>;

// Tensor-product Gauss-Legendre over [0,1]^dim; dim capped at 6.
IntegralEstimate integrate_quadrature(const BoxFunction& f, int dim, int order);

// Stratified Monte Carlo over [0,1]^dim. The first axis is split into
// strata handled as independent Philox substreams; partial results are
// reduced in stratum order, so the result is bit-identical for any worker
// count. abs_err is the 3-sigma estimate.
IntegralEstimate integrate_monte_carlo(const BoxFunction& f, int dim, const NumericsSpec& spec,
                                       std::uint64_t stream_tag = 0);

IntegralEstimate integrate(const BoxFunction& f, int dim, const NumericsSpec& spec);

}  // namespace powidx

#endif  // POWIDX_NUMERICS_HPP

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

#ifndef POWIDX_DENSITY_HPP
#define POWIDX_DENSITY_HPP

#include <vector>

#include "powidx/rational.hpp"

namespace powidx {

struct PolyPiece {
  Rat lo, hi;
  std::vector<Rat> coeffs;  // ascending powers
};

// Piecewise-polynomial density on [support_lo, support_hi].
class PiecewisePoly {
 public:
  PiecewisePoly(Rat support_lo, Rat support_hi, std::vector<PolyPiece> pieces);

  double support_lo() const { return lo_d_; }
  double support_hi() const { return hi_d_; }
  const Rat& support_lo_exact() const { return lo_; }
  const Rat& support_hi_exact() const { return hi_; }

  double eval(double x) const;
  // Antiderivative-based integral over [a,b] within the support.
  double integral(double a, double b) const;
  Rat integral_exact(const Rat& a, const Rat& b) const;

  // cdf(x) = integral from support_lo to x.
  double cdf(double x) const;
  // Smallest x with cdf(x) >= p.
  double inverse_cdf(double p) const;

 private:
  Rat lo_, hi_;
  double lo_d_, hi_d_;
  std::vector<PolyPiece> pieces_;
  std::vector<double> piece_lo_d_, piece_hi_d_;
  std::vector<std::vector<double>> coeffs_d_;
};

// Independent per-voter densities on a shared support.
struct DensityVector {
  std::vector<PiecewisePoly> densities;

  int n() const { return static_cast<int>(densities.size()); }
  double lo() const { return densities.front().support_lo(); }
  double hi() const { return densities.front().support_hi(); }
};

// Validates shared support and unit mass (1e-9) and nonnegativity.
DensityVector make_density_vector(std::vector<PiecewisePoly> densities);

}  // namespace powidx

#endif  // POWIDX_DENSITY_HPP

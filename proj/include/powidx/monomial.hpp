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

#ifndef POWIDX_MONOMIAL_HPP
#define POWIDX_MONOMIAL_HPP

#include <span>
#include <vector>

#include "powidx/numerics.hpp"
#include "powidx/rational.hpp"

namespace powidx {

struct MonomialTerm {
  Rat coef;
  std::vector<int> exponents;  // length n
};

// Sum of monomials with rational coefficients; closed under the 0/1
// substitutions used by the power-index integrals.
class MonomialSum {
 public:
  MonomialSum() = default;
  MonomialSum(int n, std::vector<MonomialTerm> terms);

  int n() const { return n_; }
  const std::vector<MonomialTerm>& terms() const { return terms_; }

  double eval(std::span<const double> x) const;
  Rat eval_exact(const std::vector<Rat>& x) const;

  // Pins coordinate `coord` (0-based) to 0 or 1.
  MonomialSum substitute(int coord, int zero_or_one) const;

  // Integral over [0,1]^n.
  Rat box_integral() const;

  int degree_in(int coord) const;
  // True when every term touches at most one coordinate.
  bool separable() const;

 private:
  int n_ = 0;
  std::vector<MonomialTerm> terms_;
  std::vector<double> coef_d_;
};

}  // namespace powidx

#endif  // POWIDX_MONOMIAL_HPP

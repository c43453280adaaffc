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

#include "powidx/monomial.hpp"

#include <algorithm>
#include <map>

namespace powidx {

MonomialSum::MonomialSum(int n, std::vector<MonomialTerm> terms) : n_(n) {
  if (n < 0) throw InputError("monomial sum: negative dimension");
  // Normal form: merge duplicate exponent vectors, drop zero coefficients.
  std::map<std::vector<int>, Rat> merged;
  for (MonomialTerm& t : terms) {
    if (static_cast<int>(t.exponents.size()) != n) {
      throw InputError("monomial term has wrong exponent count");
    }
    for (int e : t.exponents) {
      if (e < 0) throw InputError("monomial exponents must be nonnegative");
    }
    merged[t.exponents] += t.coef;
  }
  for (auto& [exps, coef] : merged) {
    if (coef == 0) continue;
    terms_.push_back(MonomialTerm{coef, exps});
    coef_d_.push_back(to_double(coef));
  }
}

double MonomialSum::eval(std::span<const double> x) const {
  double total = 0.0;
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    double prod = coef_d_[t];
    const auto& exps = terms_[t].exponents;
    for (int i = 0; i < n_; ++i) {
      for (int e = 0; e < exps[i]; ++e) prod *= x[i];
    }
    total += prod;
  }
  return total;
}

Rat MonomialSum::eval_exact(const std::vector<Rat>& x) const {
  Rat total = 0;
  for (const MonomialTerm& t : terms_) {
    Rat prod = t.coef;
    for (int i = 0; i < n_; ++i) {
      for (int e = 0; e < t.exponents[i]; ++e) prod *= x[i];
    }
    total += prod;
  }
  return total;
}

MonomialSum MonomialSum::substitute(int coord, int zero_or_one) const {
  std::vector<MonomialTerm> out;
  out.reserve(terms_.size());
  for (const MonomialTerm& t : terms_) {
    if (zero_or_one == 0 && t.exponents[coord] > 0) continue;
    MonomialTerm nt = t;
    nt.exponents[coord] = 0;
    out.push_back(std::move(nt));
  }
  return MonomialSum(n_, std::move(out));
}

Rat MonomialSum::box_integral() const {
  Rat total = 0;
  for (const MonomialTerm& t : terms_) {
    total += monomial_box_integral(t.coef, t.exponents);
  }
  return total;
}

int MonomialSum::degree_in(int coord) const {
  int d = 0;
  for (const MonomialTerm& t : terms_) d = std::max(d, t.exponents[coord]);
  return d;
}

bool MonomialSum::separable() const {
  for (const MonomialTerm& t : terms_) {
    int touched = 0;
    for (int e : t.exponents) {
      if (e > 0) ++touched;
    }
    if (touched > 1) return false;
  }
  return true;
}

}  // namespace powidx

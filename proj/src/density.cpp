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

#include "powidx/density.hpp"

#include <algorithm>
#include <cmath>

#include "powidx/errors.hpp"

namespace powidx {

PiecewisePoly::PiecewisePoly(Rat support_lo, Rat support_hi, std::vector<PolyPiece> pieces)
    : lo_(std::move(support_lo)), hi_(std::move(support_hi)), pieces_(std::move(pieces)) {
  if (lo_ >= hi_) throw InputError("density support must be a nonempty interval");
  if (pieces_.empty()) throw InputError("density needs at least one piece");
  std::sort(pieces_.begin(), pieces_.end(),
            [](const PolyPiece& a, const PolyPiece& b) { return a.lo < b.lo; });
  if (pieces_.front().lo != lo_ || pieces_.back().hi != hi_) {
    throw InputError("density pieces must cover the support");
  }
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (pieces_[i].lo >= pieces_[i].hi) throw InputError("density piece interval is empty");
    if (i > 0 && pieces_[i].lo != pieces_[i - 1].hi) {
      throw InputError("density pieces must tile the support without gaps");
    }
  }
  lo_d_ = to_double(lo_);
  hi_d_ = to_double(hi_);
  for (const PolyPiece& p : pieces_) {
    piece_lo_d_.push_back(to_double(p.lo));
    piece_hi_d_.push_back(to_double(p.hi));
    std::vector<double> cd;
    for (const Rat& c : p.coeffs) cd.push_back(to_double(c));
    coeffs_d_.push_back(std::move(cd));
  }
}

double PiecewisePoly::eval(double x) const {
  if (x < lo_d_ || x > hi_d_) return 0.0;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (x <= piece_hi_d_[i] || i + 1 == pieces_.size()) {
      double v = 0.0;
      for (std::size_t k = coeffs_d_[i].size(); k-- > 0;) v = v * x + coeffs_d_[i][k];
      return v;
    }
  }
  return 0.0;
}

namespace {

// Integral of a polynomial (ascending coefficients) over [a,b].
double poly_integral(const std::vector<double>& coeffs, double a, double b) {
  double va = 0.0, vb = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    va = va * a + coeffs[k] / static_cast<double>(k + 1);
    vb = vb * b + coeffs[k] / static_cast<double>(k + 1);
  }
  return vb * b - va * a;
}

Rat poly_integral_exact(const std::vector<Rat>& coeffs, const Rat& a, const Rat& b) {
  Rat va = 0, vb = 0;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    va = va * a + coeffs[k] / Rat(static_cast<int>(k) + 1);
    vb = vb * b + coeffs[k] / Rat(static_cast<int>(k) + 1);
  }
  return vb * b - va * a;
}

}  // namespace

double PiecewisePoly::integral(double a, double b) const {
  if (a >= b) return 0.0;
  a = std::max(a, lo_d_);
  b = std::min(b, hi_d_);
  double total = 0.0;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const double lo = std::max(a, piece_lo_d_[i]);
    const double hi = std::min(b, piece_hi_d_[i]);
    if (lo < hi) total += poly_integral(coeffs_d_[i], lo, hi);
  }
  return total;
}

Rat PiecewisePoly::integral_exact(const Rat& a, const Rat& b) const {
  if (a >= b) return 0;
  Rat total = 0;
  for (const PolyPiece& p : pieces_) {
    const Rat lo = std::max(a, p.lo);
    const Rat hi = std::min(b, p.hi);
    if (lo < hi) total += poly_integral_exact(p.coeffs, lo, hi);
  }
  return total;
}

double PiecewisePoly::cdf(double x) const { return integral(lo_d_, x); }

double PiecewisePoly::inverse_cdf(double p) const {
  double lo = lo_d_, hi = hi_d_;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    (cdf(mid) >= p ? hi : lo) = mid;
  }
  return hi;
}

DensityVector make_density_vector(std::vector<PiecewisePoly> densities) {
  if (densities.empty()) throw InputError("density vector must not be empty");
  const Rat lo = densities.front().support_lo_exact();
  const Rat hi = densities.front().support_hi_exact();
  for (const PiecewisePoly& f : densities) {
    if (f.support_lo_exact() != lo || f.support_hi_exact() != hi) {
      throw InputError("densities must share a common support");
    }
    const double mass = to_double(f.integral_exact(lo, hi));
    if (std::fabs(mass - 1.0) > 1e-9) {
      throw InputError("density does not integrate to 1");
    }
    // Nonnegativity probe on a grid plus piece endpoints.
    const double a = to_double(lo), b = to_double(hi);
    for (int k = 0; k <= 512; ++k) {
      const double x = a + (b - a) * k / 512.0;
      if (f.eval(x) < -1e-12) throw InputError("density is negative on its support");
    }
  }
  return DensityVector{std::move(densities)};
}

}  // namespace powidx

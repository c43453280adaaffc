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

#ifndef POWIDX_CONTINUOUS_GAME_HPP
#define POWIDX_CONTINUOUS_GAME_HPP

#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "powidx/monomial.hpp"
#include "powidx/numerics.hpp"
#include "powidx/rational.hpp"

namespace powidx {

// Monotone nondecreasing quota map with q(0)=0, q(1)=1.
class QuotaFunction {
 public:
  static QuotaFunction piecewise_linear(std::vector<std::pair<Rat, Rat>> breakpoints);
  static QuotaFunction monomials(MonomialSum poly);  // one variable

  double eval(double y) const;
  // Smallest y with q(y) >= target, by bisection.
  double inverse(double target) const;

  bool is_piecewise_linear() const { return kind_ == Kind::piecewise_linear; }
  const std::vector<std::pair<Rat, Rat>>& breakpoints() const { return breakpoints_; }
  const MonomialSum& poly() const { return poly_; }

 private:
  enum class Kind { piecewise_linear, monomials };
  Kind kind_ = Kind::piecewise_linear;
  std::vector<std::pair<Rat, Rat>> breakpoints_;
  std::vector<std::pair<double, double>> breakpoints_d_;
  MonomialSum poly_;
};

class ContinuousGame;

struct CLinearWeighted {
  std::vector<Rat> w;  // normalized
  std::vector<double> wd;
};
struct CThreshold {
  Rat q;
  std::vector<Rat> w;  // normalized
  double qd;
  std::vector<double> wd;
};
struct CQuotaWeighted {
  QuotaFunction quota_fn;
  std::vector<Rat> w;  // normalized
  std::vector<double> wd;
};
struct CWeightedMedian {
  std::vector<Rat> w;  // nonnegative, positive sum; not normalized
  std::vector<double> wd;
};
struct CMedian {};
struct CMonomial {
  MonomialSum poly;
};
struct CMeet {
  std::vector<ContinuousGame> parts;
};
struct CJoin {
  std::vector<ContinuousGame> parts;
};
struct CThresholdIntersection {
  std::vector<CThreshold> parts;
};

// Monotone map [0,1]^n -> [0,1] with g(0)=0, g(1)=1, in one of the
// closed-form families.
class ContinuousGame {
 public:
  static ContinuousGame monomial_sum(MonomialSum poly);
  static ContinuousGame linear_weighted(std::vector<Rat> weights);
  static ContinuousGame threshold(Rat quota, std::vector<Rat> weights);
  static ContinuousGame quota_weighted(QuotaFunction quota_fn, std::vector<Rat> weights);
  static ContinuousGame weighted_median(std::vector<Rat> weights);
  static ContinuousGame median(int n);
  static ContinuousGame meet(std::vector<ContinuousGame> parts);
  static ContinuousGame join(std::vector<ContinuousGame> parts);
  static ContinuousGame threshold_intersection(std::vector<ContinuousGame> thresholds);

  int n() const { return n_; }
  double eval(std::span<const double> x) const;
  double eval_unchecked(std::span<const double> x) const;

  template <typename T>
  const T* body() const {
    return std::get_if<T>(&body_);
  }

  const std::variant<CMonomial, CLinearWeighted, CThreshold, CQuotaWeighted, CWeightedMedian,
                     CMedian, CMeet, CJoin, CThresholdIntersection>&
  raw_body() const {
    return body_;
  }

 private:
  template <typename B>
  ContinuousGame(int n, B body) : n_(n), body_(std::move(body)) {}

  int n_ = 0;
  std::variant<CMonomial, CLinearWeighted, CThreshold, CQuotaWeighted, CWeightedMedian, CMedian,
               CMeet, CJoin, CThresholdIntersection>
      body_;
};

// Queue-prefix transforms of the Shapley-Shubik definition: voters in the
// first t queue positions keep their votes, everyone else is pinned to 1
// (tau_bar) or 0 (tau_under).
std::vector<double> tau_bar(std::span<const double> x, const std::vector<int>& queue, int t);
std::vector<double> tau_under(std::span<const double> x, const std::vector<int>& queue, int t);

enum class CheckVerdict { yes, no, no_counterexample_found };

struct StructuralReport {
  CheckVerdict proper = CheckVerdict::no_counterexample_found;
  CheckVerdict strong = CheckVerdict::no_counterexample_found;
  CheckVerdict constant_sum = CheckVerdict::no_counterexample_found;
  CheckVerdict complete = CheckVerdict::no_counterexample_found;
  std::vector<int> null_voters;  // 1-based
  std::optional<std::vector<double>> proper_witness;
  std::optional<std::vector<double>> strong_witness;
  std::optional<std::pair<int, int>> incomparable_pair;
};

// Analytic verdicts for the closed-form families, sampled falsification
// elsewhere (a yes from sampling is reported as no_counterexample_found).
StructuralReport structural_checks(const ContinuousGame& game, const NumericsSpec& spec);

struct RecoveredRep {
  std::vector<double> weights;
  std::optional<double> quota;
  double max_abs_deviation = 0.0;  // vs the stored representation
};

// Recovers the stored representation from black-box evaluations
// (unit vectors / diagonal / boundary probing) and reports the deviation.
RecoveredRep uniqueness_probe(const ContinuousGame& game);

ContinuousGame meet(const ContinuousGame& g1, const ContinuousGame& g2);
ContinuousGame join(const ContinuousGame& g1, const ContinuousGame& g2);

}  // namespace powidx

#endif  // POWIDX_CONTINUOUS_GAME_HPP

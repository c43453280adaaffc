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

#include "powidx/continuous_game.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "powidx/philox.hpp"

namespace powidx {

namespace {

std::vector<double> to_doubles(const std::vector<Rat>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const Rat& r : v) out.push_back(to_double(r));
  return out;
}

void check_weights_nonneg(const std::vector<Rat>& w) {
  for (const Rat& x : w) {
    if (x < 0) throw InputError("weights must be nonnegative");
  }
}

double weighted_median_value(std::span<const double> x, std::span<const double> w) {
  const int n = static_cast<int>(x.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return x[a] < x[b]; });
  double total = 0.0;
  for (double v : w) total += v;
  const double half = total / 2.0;

  int lo_idx = -1, hi_idx = -1;
  double cum = 0.0;
  for (int k = 0; k < n; ++k) {
    cum += w[order[k]];
    if (cum >= half) {
      lo_idx = k;
      break;
    }
  }
  cum = 0.0;
  for (int k = n - 1; k >= 0; --k) {
    cum += w[order[k]];
    if (cum >= half) {
      hi_idx = k;
      break;
    }
  }
  if (lo_idx == hi_idx) return x[order[lo_idx]];
  return 0.5 * (x[order[lo_idx]] + x[order[hi_idx]]);
}

}  // namespace

QuotaFunction QuotaFunction::piecewise_linear(std::vector<std::pair<Rat, Rat>> breakpoints) {
  if (breakpoints.size() < 2) throw InputError("quota function needs at least two breakpoints");
  if (breakpoints.front().first != 0 || breakpoints.front().second != 0 ||
      breakpoints.back().first != 1 || breakpoints.back().second != 1) {
    throw InputError("quota function must run from (0,0) to (1,1)");
  }
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (breakpoints[i].first <= breakpoints[i - 1].first) {
      throw InputError("quota breakpoints must have increasing x");
    }
    if (breakpoints[i].second < breakpoints[i - 1].second) {
      throw InputError("quota function must be nondecreasing");
    }
  }
  QuotaFunction qf;
  qf.kind_ = Kind::piecewise_linear;
  qf.breakpoints_ = std::move(breakpoints);
  for (const auto& [x, y] : qf.breakpoints_) {
    qf.breakpoints_d_.emplace_back(to_double(x), to_double(y));
  }
  return qf;
}

QuotaFunction QuotaFunction::monomials(MonomialSum poly) {
  if (poly.n() != 1) throw InputError("monomial quota function must be univariate");
  Rat at_one = 0;
  for (const MonomialTerm& t : poly.terms()) {
    if (t.coef < 0) throw InputError("monomial quota function needs nonnegative coefficients");
    if (t.exponents[0] == 0) throw InputError("quota function must vanish at 0");
    at_one += t.coef;
  }
  if (at_one != 1) throw InputError("quota function must reach 1 at 1");
  QuotaFunction qf;
  qf.kind_ = Kind::monomials;
  qf.poly_ = std::move(poly);
  return qf;
}

double QuotaFunction::eval(double y) const {
  if (kind_ == Kind::monomials) {
    const double x[1] = {y};
    return poly_.eval(x);
  }
  const auto& bp = breakpoints_d_;
  if (y <= bp.front().first) return bp.front().second;
  for (std::size_t i = 1; i < bp.size(); ++i) {
    if (y <= bp[i].first) {
      const double t = (y - bp[i - 1].first) / (bp[i].first - bp[i - 1].first);
      return bp[i - 1].second + t * (bp[i].second - bp[i - 1].second);
    }
  }
  return bp.back().second;
}

double QuotaFunction::inverse(double target) const {
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (eval(mid) >= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

ContinuousGame ContinuousGame::monomial_sum(MonomialSum poly) {
  Rat at_one = 0;
  for (const MonomialTerm& t : poly.terms()) {
    if (t.coef < 0) throw InputError("monomial-sum game needs nonnegative coefficients");
    bool constant = true;
    for (int e : t.exponents) {
      if (e > 0) constant = false;
    }
    if (constant) throw InputError("monomial-sum game must vanish at 0");
    at_one += t.coef;
  }
  if (at_one != 1) throw InputError("monomial-sum game must evaluate to 1 at the all-ones vote");
  const int n = poly.n();
  return ContinuousGame(n, CMonomial{std::move(poly)});
}

ContinuousGame ContinuousGame::linear_weighted(std::vector<Rat> weights) {
  check_weights_nonneg(weights);
  std::vector<Rat> w = normalize_weights(weights);
  CLinearWeighted body{w, to_doubles(w)};
  return ContinuousGame(static_cast<int>(w.size()), std::move(body));
}

ContinuousGame ContinuousGame::threshold(Rat quota, std::vector<Rat> weights) {
  check_weights_nonneg(weights);
  if (quota <= 0 || quota > 1) throw InputError("threshold quota must lie in (0,1]");
  std::vector<Rat> w = normalize_weights(weights);
  CThreshold body{quota, w, to_double(quota), to_doubles(w)};
  return ContinuousGame(static_cast<int>(w.size()), std::move(body));
}

ContinuousGame ContinuousGame::quota_weighted(QuotaFunction quota_fn, std::vector<Rat> weights) {
  check_weights_nonneg(weights);
  std::vector<Rat> w = normalize_weights(weights);
  CQuotaWeighted body{std::move(quota_fn), w, to_doubles(w)};
  return ContinuousGame(static_cast<int>(w.size()), std::move(body));
}

ContinuousGame ContinuousGame::weighted_median(std::vector<Rat> weights) {
  check_weights_nonneg(weights);
  Rat total = sum(weights);
  if (total <= 0) throw InputError("weighted median needs a positive weight sum");
  CWeightedMedian body{weights, to_doubles(weights)};
  return ContinuousGame(static_cast<int>(weights.size()), std::move(body));
}

ContinuousGame ContinuousGame::median(int n) {
  if (n < 1) throw InputError("median needs at least one voter");
  return ContinuousGame(n, CMedian{});
}

ContinuousGame ContinuousGame::meet(std::vector<ContinuousGame> parts) {
  if (parts.empty()) throw InputError("meet needs at least one game");
  const int n = parts.front().n();
  for (const ContinuousGame& g : parts) {
    if (g.n() != n) throw InputError("meet parts must share the voter count");
  }
  return ContinuousGame(n, CMeet{std::move(parts)});
}

ContinuousGame ContinuousGame::join(std::vector<ContinuousGame> parts) {
  if (parts.empty()) throw InputError("join needs at least one game");
  const int n = parts.front().n();
  for (const ContinuousGame& g : parts) {
    if (g.n() != n) throw InputError("join parts must share the voter count");
  }
  return ContinuousGame(n, CJoin{std::move(parts)});
}

ContinuousGame ContinuousGame::threshold_intersection(std::vector<ContinuousGame> thresholds) {
  if (thresholds.empty()) throw InputError("intersection needs at least one game");
  const int n = thresholds.front().n();
  std::vector<CThreshold> parts;
  for (const ContinuousGame& g : thresholds) {
    if (g.n() != n) throw InputError("intersection parts must share the voter count");
    const auto* t = g.body<CThreshold>();
    if (t == nullptr) throw InputError("threshold_intersection parts must be threshold games");
    parts.push_back(*t);
  }
  return ContinuousGame(n, CThresholdIntersection{std::move(parts)});
}

double ContinuousGame::eval(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) throw InputError("vote vector width mismatch");
  for (double v : x) {
    if (!(v >= 0.0 && v <= 1.0)) throw InputError("vote outside [0,1]");
  }
  return eval_unchecked(x);
}

double ContinuousGame::eval_unchecked(std::span<const double> x) const {
  if (const auto* m = std::get_if<CMonomial>(&body_)) {
    return m->poly.eval(x);
  }
  if (const auto* lw = std::get_if<CLinearWeighted>(&body_)) {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += lw->wd[i] * x[i];
    return s;
  }
  if (const auto* th = std::get_if<CThreshold>(&body_)) {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += th->wd[i] * x[i];
    return s >= th->qd ? 1.0 : 0.0;
  }
  if (const auto* qw = std::get_if<CQuotaWeighted>(&body_)) {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += qw->wd[i] * x[i];
    return qw->quota_fn.eval(s);
  }
  if (const auto* wm = std::get_if<CWeightedMedian>(&body_)) {
    return weighted_median_value(x, wm->wd);
  }
  if (std::get_if<CMedian>(&body_) != nullptr) {
    std::vector<double> ones(n_, 1.0);
    return weighted_median_value(x, ones);
  }
  if (const auto* m = std::get_if<CMeet>(&body_)) {
    double v = 1.0;
    for (const ContinuousGame& g : m->parts) v = std::min(v, g.eval_unchecked(x));
    return v;
  }
  if (const auto* j = std::get_if<CJoin>(&body_)) {
    double v = 0.0;
    for (const ContinuousGame& g : j->parts) v = std::max(v, g.eval_unchecked(x));
    return v;
  }
  const auto& ti = std::get<CThresholdIntersection>(body_);
  double v = 1.0;
  for (const CThreshold& t : ti.parts) {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += t.wd[i] * x[i];
    v = std::min(v, s >= t.qd ? 1.0 : 0.0);
  }
  return v;
}

std::vector<double> tau_bar(std::span<const double> x, const std::vector<int>& queue, int t) {
  if (t < 0 || t > static_cast<int>(queue.size())) throw InputError("tau: prefix out of range");
  std::vector<double> y(x.size(), 1.0);
  for (int s = 0; s < t; ++s) y[queue[s] - 1] = x[queue[s] - 1];
  return y;
}

std::vector<double> tau_under(std::span<const double> x, const std::vector<int>& queue, int t) {
  if (t < 0 || t > static_cast<int>(queue.size())) throw InputError("tau: prefix out of range");
  std::vector<double> y(x.size(), 0.0);
  for (int s = 0; s < t; ++s) y[queue[s] - 1] = x[queue[s] - 1];
  return y;
}

namespace {

std::vector<int> zero_weight_voters(const std::vector<Rat>& w) {
  std::vector<int> out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0) out.push_back(static_cast<int>(i) + 1);
  }
  return out;
}

// Sampled falsification of g(x) + g(1-x) <= 1 (proper) or >= 1 (strong).
struct SampledSelfDual {
  CheckVerdict proper = CheckVerdict::no_counterexample_found;
  CheckVerdict strong = CheckVerdict::no_counterexample_found;
  std::optional<std::vector<double>> proper_witness, strong_witness;
};

SampledSelfDual sample_self_dual(const ContinuousGame& game, const NumericsSpec& spec) {
  SampledSelfDual out;
  PhiloxStream rng(spec.seed, derive_stream(0x5D5D, 1));
  const int n = game.n();
  std::vector<double> x(n), cx(n);
  const long long samples = std::max<long long>(1000, spec.mc_samples / 10);
  for (long long s = 0; s < samples; ++s) {
    for (int i = 0; i < n; ++i) {
      x[i] = rng.next_double();
      cx[i] = 1.0 - x[i];
    }
    const double total = game.eval_unchecked(x) + game.eval_unchecked(cx);
    if (total > 1.0 + 1e-9 && out.proper == CheckVerdict::no_counterexample_found) {
      out.proper = CheckVerdict::no;
      out.proper_witness = x;
    }
    if (total < 1.0 - 1e-9 && out.strong == CheckVerdict::no_counterexample_found) {
      out.strong = CheckVerdict::no;
      out.strong_witness = x;
    }
    if (out.proper == CheckVerdict::no && out.strong == CheckVerdict::no) break;
  }
  return out;
}

CheckVerdict combine_constant_sum(CheckVerdict proper, CheckVerdict strong) {
  if (proper == CheckVerdict::no || strong == CheckVerdict::no) return CheckVerdict::no;
  if (proper == CheckVerdict::yes && strong == CheckVerdict::yes) return CheckVerdict::yes;
  return CheckVerdict::no_counterexample_found;
}

// Desirability falsification for a voter pair via transposition sampling.
bool pair_comparable_sampled(const ContinuousGame& game, int i, int j, PhiloxStream& rng,
                             long long samples) {
  const int n = game.n();
  std::vector<double> x(n), tx(n);
  bool i_geq = true, j_geq = true;
  for (long long s = 0; s < samples && (i_geq || j_geq); ++s) {
    for (int v = 0; v < n; ++v) x[v] = rng.next_double();
    tx = x;
    std::swap(tx[i - 1], tx[j - 1]);
    const double gx = game.eval_unchecked(x);
    const double gt = game.eval_unchecked(tx);
    // If x_i <= x_j, swapping hands i the larger vote; i >= j demands no loss.
    if (x[i - 1] <= x[j - 1]) {
      if (gt < gx - 1e-9) i_geq = false;
      if (gx < gt - 1e-9) j_geq = false;
    } else {
      if (gx < gt - 1e-9) i_geq = false;
      if (gt < gx - 1e-9) j_geq = false;
    }
  }
  return i_geq || j_geq;
}

std::vector<int> sampled_null_voters(const ContinuousGame& game, const NumericsSpec& spec) {
  const int n = game.n();
  PhiloxStream rng(spec.seed, derive_stream(0x5D5D, 3));
  std::vector<int> out;
  std::vector<double> x(n);
  for (int i = 1; i <= n; ++i) {
    bool null_voter = true;
    for (int s = 0; s < 512 && null_voter; ++s) {
      for (int v = 0; v < n; ++v) x[v] = rng.next_double();
      x[i - 1] = 0.0;
      const double lo = game.eval_unchecked(x);
      x[i - 1] = 1.0;
      const double hi = game.eval_unchecked(x);
      if (hi - lo > 1e-9) null_voter = false;
    }
    if (null_voter) out.push_back(i);
  }
  return out;
}

}  // namespace

StructuralReport structural_checks(const ContinuousGame& game, const NumericsSpec& spec) {
  StructuralReport rep;
  const int n = game.n();

  if (const auto* lw = game.body<CLinearWeighted>()) {
    rep.proper = rep.strong = rep.constant_sum = CheckVerdict::yes;
    rep.complete = CheckVerdict::yes;
    rep.null_voters = zero_weight_voters(lw->w);
    return rep;
  }
  if (const auto* th = game.body<CThreshold>()) {
    rep.proper = th->q > Rat(1, 2) ? CheckVerdict::yes : CheckVerdict::no;
    rep.strong = th->q <= Rat(1, 2) ? CheckVerdict::yes : CheckVerdict::no;
    rep.constant_sum = CheckVerdict::no;  // threshold games are never both
    rep.complete = CheckVerdict::yes;
    rep.null_voters = zero_weight_voters(th->w);
    if (rep.proper == CheckVerdict::no) {
      rep.proper_witness = std::vector<double>(n, 0.5);
    } else {
      rep.strong_witness = std::vector<double>(n, 0.5);
    }
    return rep;
  }
  if (const auto* qw = game.body<CQuotaWeighted>()) {
    rep.complete = CheckVerdict::yes;
    rep.null_voters = zero_weight_voters(qw->w);
    if (qw->quota_fn.is_piecewise_linear()) {
      // q(y)+q(1-y) vs 1 is piecewise linear; checking the union of
      // breakpoints {x} and {1-x} is exact.
      std::vector<Rat> ys;
      for (const auto& [x, y] : qw->quota_fn.breakpoints()) {
        ys.push_back(x);
        ys.push_back(Rat(1) - x);
      }
      bool le_all = true, ge_all = true;
      double witness_y = -1;
      for (const Rat& y : ys) {
        if (y < 0 || y > 1) continue;
        const double s = qw->quota_fn.eval(to_double(y)) + qw->quota_fn.eval(to_double(Rat(1) - y));
        if (s > 1.0 + 1e-12) {
          le_all = false;
          if (witness_y < 0) witness_y = to_double(y);
        }
        if (s < 1.0 - 1e-12) {
          ge_all = false;
          if (witness_y < 0) witness_y = to_double(y);
        }
      }
      rep.proper = le_all ? CheckVerdict::yes : CheckVerdict::no;
      rep.strong = ge_all ? CheckVerdict::yes : CheckVerdict::no;
      rep.constant_sum = combine_constant_sum(rep.proper, rep.strong);
      if (witness_y >= 0) {
        // Any x with w'x = y witnesses on the diagonal.
        rep.proper_witness = std::vector<double>(n, witness_y);
        rep.strong_witness = rep.proper_witness;
      }
      return rep;
    }
    // Monomial quota function: dense 1-D scan of q(y)+q(1-y).
    bool le_all = true, ge_all = true;
    double witness_y = -1;
    for (int k = 0; k <= 10000; ++k) {
      const double y = k / 10000.0;
      const double s = qw->quota_fn.eval(y) + qw->quota_fn.eval(1.0 - y);
      if (s > 1.0 + 1e-9) {
        le_all = false;
        if (witness_y < 0) witness_y = y;
      }
      if (s < 1.0 - 1e-9) {
        ge_all = false;
        if (witness_y < 0) witness_y = y;
      }
    }
    rep.proper = le_all ? CheckVerdict::no_counterexample_found : CheckVerdict::no;
    rep.strong = ge_all ? CheckVerdict::no_counterexample_found : CheckVerdict::no;
    rep.constant_sum = combine_constant_sum(rep.proper, rep.strong);
    if (witness_y >= 0) {
      rep.proper_witness = std::vector<double>(n, witness_y);
      rep.strong_witness = rep.proper_witness;
    }
    return rep;
  }
  if (game.body<CMedian>() != nullptr || game.body<CWeightedMedian>() != nullptr) {
    // The (weighted) median commutes with x -> 1-x, so g(x)+g(1-x)=1.
    rep.proper = rep.strong = rep.constant_sum = CheckVerdict::yes;
    if (const auto* wm = game.body<CWeightedMedian>()) {
      rep.null_voters = sampled_null_voters(game, spec);
      (void)wm;
    }
    PhiloxStream rng(spec.seed, derive_stream(0x5D5D, 2));
    rep.complete = CheckVerdict::no_counterexample_found;
    for (int i = 1; i <= n && rep.complete != CheckVerdict::no; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        if (!pair_comparable_sampled(game, i, j, rng, 2000)) {
          rep.complete = CheckVerdict::no;
          rep.incomparable_pair = {i, j};
          break;
        }
      }
    }
    return rep;
  }

  // Monomial sums, meets, joins, intersections: sampled verdicts, with the
  // exact null-voter read-off for monomial sums.
  SampledSelfDual sd = sample_self_dual(game, spec);
  rep.proper = sd.proper;
  rep.strong = sd.strong;
  rep.proper_witness = sd.proper_witness;
  rep.strong_witness = sd.strong_witness;
  rep.constant_sum = combine_constant_sum(rep.proper, rep.strong);

  if (const auto* m = game.body<CMonomial>()) {
    for (int i = 1; i <= n; ++i) {
      if (m->poly.degree_in(i - 1) == 0) rep.null_voters.push_back(i);
    }
  } else {
    rep.null_voters = sampled_null_voters(game, spec);
  }

  PhiloxStream rng(spec.seed, derive_stream(0x5D5D, 2));
  rep.complete = CheckVerdict::no_counterexample_found;
  for (int i = 1; i <= n && rep.complete != CheckVerdict::no; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      if (!pair_comparable_sampled(game, i, j, rng, 2000)) {
        rep.complete = CheckVerdict::no;
        rep.incomparable_pair = {i, j};
        break;
      }
    }
  }
  return rep;
}

RecoveredRep uniqueness_probe(const ContinuousGame& game) {
  const int n = game.n();
  RecoveredRep out;

  if (const auto* lw = game.body<CLinearWeighted>()) {
    out.weights.resize(n);
    std::vector<double> x(n, 0.0);
    for (int i = 0; i < n; ++i) {
      x[i] = 1.0;
      out.weights[i] = game.eval(x);
      x[i] = 0.0;
      out.max_abs_deviation = std::max(out.max_abs_deviation,
                                       std::fabs(out.weights[i] - lw->wd[i]));
    }
    return out;
  }

  if (const auto* th = game.body<CThreshold>()) {
    if (th->qd >= 1.0 - 1e-12) {
      throw PreconditionError(
          "threshold probe: quota 1 is degenerate (any weight vector represents the game)");
    }
    // Diagonal boundary: g(s,...,s) switches at s = q.
    double lo = 0.0, hi = 1.0;
    std::vector<double> x(n);
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      std::fill(x.begin(), x.end(), mid);
      (game.eval(x) >= 1.0 ? hi : lo) = mid;
    }
    const double q = hi;
    out.quota = q;
    out.max_abs_deviation = std::fabs(q - th->qd);

    out.weights.resize(n);
    for (int i = 0; i < n; ++i) {
      // Boundary along coordinate i with the others pinned at 1:
      // 1 - w_i (1 - t_i) = q.
      double tlo = 0.0, thi = 1.0;
      std::fill(x.begin(), x.end(), 1.0);
      x[i] = 0.0;
      if (game.eval(x) >= 1.0) {
        // Even a zero vote keeps the game winning; pin down w_i from the
        // other side: x_i = 0, others at s: s (1 - w_i) = q.
        double slo = 0.0, shi = 1.0;
        for (int it = 0; it < 100; ++it) {
          const double mid = 0.5 * (slo + shi);
          std::fill(x.begin(), x.end(), mid);
          x[i] = 0.0;
          (game.eval(x) >= 1.0 ? shi : slo) = mid;
        }
        out.weights[i] = shi >= 1.0 - 1e-12 ? 1.0 - q : 1.0 - q / shi;
      } else {
        for (int it = 0; it < 100; ++it) {
          const double mid = 0.5 * (tlo + thi);
          std::fill(x.begin(), x.end(), 1.0);
          x[i] = mid;
          (game.eval(x) >= 1.0 ? thi : tlo) = mid;
        }
        out.weights[i] = (1.0 - q) / (1.0 - thi);
      }
    }
    double total = 0.0;
    for (double w : out.weights) total += w;
    for (double& w : out.weights) w /= total;
    for (int i = 0; i < n; ++i) {
      out.max_abs_deviation = std::max(out.max_abs_deviation,
                                       std::fabs(out.weights[i] - th->wd[i]));
    }
    return out;
  }

  if (const auto* qw = game.body<CQuotaWeighted>()) {
    // The diagonal reveals the quota function directly: g(y,...,y) = q(y).
    std::vector<double> x(n);
    for (int k = 0; k <= 64; ++k) {
      const double y = k / 64.0;
      std::fill(x.begin(), x.end(), y);
      out.max_abs_deviation =
          std::max(out.max_abs_deviation, std::fabs(game.eval(x) - qw->quota_fn.eval(y)));
    }
    // Weights from small coordinate perturbations at a strictly increasing
    // point of q.
    double y0 = 0.5;
    for (int k = 1; k < 64; ++k) {
      const double y = k / 64.0;
      if (qw->quota_fn.eval(y + 1.0 / 128) - qw->quota_fn.eval(y - 1.0 / 128) > 1e-6) {
        y0 = y;
        break;
      }
    }
    const double eps = 1e-4;
    out.weights.resize(n);
    for (int i = 0; i < n; ++i) {
      std::fill(x.begin(), x.end(), y0);
      x[i] = std::min(1.0, y0 + eps);
      const double shifted = qw->quota_fn.inverse(game.eval(x));
      out.weights[i] = (shifted - y0) / (x[i] - y0);
    }
    double total = 0.0;
    for (double w : out.weights) total += w;
    if (total > 0) {
      for (double& w : out.weights) w /= total;
    }
    for (int i = 0; i < n; ++i) {
      out.max_abs_deviation =
          std::max(out.max_abs_deviation, std::fabs(out.weights[i] - qw->wd[i]));
    }
    return out;
  }

  throw PreconditionError("uniqueness_probe supports linear_weighted, threshold, quota_weighted");
}

ContinuousGame meet(const ContinuousGame& g1, const ContinuousGame& g2) {
  if (g1.n() != g2.n()) throw InputError("meet: voter counts differ");
  return ContinuousGame::meet({g1, g2});
}

ContinuousGame join(const ContinuousGame& g1, const ContinuousGame& g2) {
  if (g1.n() != g2.n()) throw InputError("join: voter counts differ");
  return ContinuousGame::join({g1, g2});
}

}  // namespace powidx

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

#include "powidx/continuous_power.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "powidx/binary_power.hpp"
#include "powidx/philox.hpp"

namespace powidx {

namespace {

std::vector<std::vector<int>> all_queues(int n) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 1);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(order);
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

void check_queue(const std::vector<int>& queue, int n) {
  if (static_cast<int>(queue.size()) != n) throw InputError("queue width mismatch");
  std::vector<bool> seen(n + 1, false);
  for (int v : queue) {
    if (v < 1 || v > n || seen[v]) throw InputError("queue must be a permutation of 1..n");
    seen[v] = true;
  }
}

// ---------------------------------------------------------------------------
// Exact path A: monomial sums. Substituting the tau pins into the polynomial
// keeps it a monomial sum, and box integrals are closed-form.

std::vector<Rat> exact_terms_for_queue_monomial(const MonomialSum& poly,
                                                const std::vector<int>& queue) {
  const int n = poly.n();
  // bar[t] / under[t]: polynomial of tau-pinned game for prefix length t.
  std::vector<Rat> bar_int(n + 1), under_int(n + 1);
  MonomialSum bar = poly, under = poly;
  bar_int[n] = poly.box_integral();
  under_int[n] = bar_int[n];
  for (int t = n; t-- > 0;) {
    const int coord = queue[t] - 1;
    bar = bar.substitute(coord, 1);
    under = under.substitute(coord, 0);
    bar_int[t] = bar.box_integral();
    under_int[t] = under.box_integral();
  }
  std::vector<Rat> terms(n);
  for (int t = 1; t <= n; ++t) {
    const int voter = queue[t - 1];
    terms[voter - 1] =
        (bar_int[t - 1] - bar_int[t]) + (under_int[t] - under_int[t - 1]);
  }
  return terms;
}

// ---------------------------------------------------------------------------
// Exact path B: meet/join trees of single-coordinate thresholds (the
// threshold-type embedding of binary games). Such games are constant on a
// product grid of coordinate cells with rational masses.

struct IndicatorGrid {
  // Per coordinate: sorted distinct thresholds.
  std::vector<std::vector<Rat>> cuts;
};

bool collect_indicator_cuts(const ContinuousGame& game, IndicatorGrid* grid) {
  if (const auto* th = game.body<CThreshold>()) {
    int pos = -1;
    for (std::size_t i = 0; i < th->w.size(); ++i) {
      if (th->w[i] > 0) {
        if (pos >= 0) return false;  // multi-coordinate threshold
        pos = static_cast<int>(i);
      }
    }
    // Normalized single positive weight is 1, so the cut is at q.
    grid->cuts[pos].push_back(th->q);
    return true;
  }
  if (const auto* m = game.body<CMeet>()) {
    for (const ContinuousGame& g : m->parts) {
      if (!collect_indicator_cuts(g, grid)) return false;
    }
    return true;
  }
  if (const auto* j = game.body<CJoin>()) {
    for (const ContinuousGame& g : j->parts) {
      if (!collect_indicator_cuts(g, grid)) return false;
    }
    return true;
  }
  return false;
}

std::optional<IndicatorGrid> indicator_grid(const ContinuousGame& game) {
  IndicatorGrid grid;
  grid.cuts.assign(game.n(), {});
  if (!collect_indicator_cuts(game, &grid)) return std::nullopt;
  for (auto& cuts : grid.cuts) {
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  }
  return grid;
}

// Expected game value over the grid cells, with coordinates listed in
// `pinned` fixed to 0/1 and the rest integrated out cell by cell.
Rat indicator_expectation(const ContinuousGame& game, const IndicatorGrid& grid,
                          const std::vector<int>& pin_state /* -1 free, 0, 1 */) {
  const int n = game.n();
  // Cell representatives and masses per coordinate.
  struct Axis {
    std::vector<Rat> reps;
    std::vector<Rat> masses;
  };
  std::vector<Axis> axes(n);
  long long cells = 1;
  for (int i = 0; i < n; ++i) {
    if (pin_state[i] >= 0) {
      axes[i].reps = {Rat(pin_state[i])};
      axes[i].masses = {Rat(1)};
    } else {
      std::vector<Rat> edges = {Rat(0)};
      for (const Rat& c : grid.cuts[i]) {
        if (c > 0 && c < 1) edges.push_back(c);
      }
      edges.push_back(Rat(1));
      for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        axes[i].reps.push_back((edges[k] + edges[k + 1]) / 2);
        axes[i].masses.push_back(edges[k + 1] - edges[k]);
      }
      // A cut exactly at 1 means only the vote 1 itself clears it; that set
      // has measure zero, so it never contributes to the integral.
    }
    cells *= static_cast<long long>(axes[i].reps.size());
    if (cells > 65536) throw CapacityError("indicator grid too fine for exact mode");
  }

  std::vector<std::size_t> idx(n, 0);
  std::vector<double> x(n);
  Rat total = 0;
  for (;;) {
    Rat mass = 1;
    for (int i = 0; i < n; ++i) {
      mass *= axes[i].masses[idx[i]];
      x[i] = to_double(axes[i].reps[idx[i]]);
    }
    // Representative evaluation is exact: the game is constant on the cell
    // and, at pins, reps sit exactly on 0/1.
    const double v = game.eval_unchecked(x);
    if (v != 0.0) total += mass * Rat(1);
    int d = 0;
    for (; d < n; ++d) {
      if (++idx[d] < axes[d].reps.size()) break;
      idx[d] = 0;
    }
    if (d == n) break;
  }
  return total;
}

std::vector<Rat> exact_terms_for_queue_indicator(const ContinuousGame& game,
                                                 const IndicatorGrid& grid,
                                                 const std::vector<int>& queue) {
  const int n = game.n();
  std::vector<Rat> bar_int(n + 1), under_int(n + 1);
  std::vector<int> pin_bar(n, -1), pin_under(n, -1);
  bar_int[n] = indicator_expectation(game, grid, pin_bar);
  under_int[n] = bar_int[n];
  for (int t = n; t-- > 0;) {
    pin_bar[queue[t] - 1] = 1;
    pin_under[queue[t] - 1] = 0;
    bar_int[t] = indicator_expectation(game, grid, pin_bar);
    under_int[t] = indicator_expectation(game, grid, pin_under);
  }
  std::vector<Rat> terms(n);
  for (int t = 1; t <= n; ++t) {
    terms[queue[t - 1] - 1] =
        (bar_int[t - 1] - bar_int[t]) + (under_int[t] - under_int[t - 1]);
  }
  return terms;
}

// ---------------------------------------------------------------------------
// Shared reveal walk for sampled/quadrature paths.

// Adds each voter's integrand value at vote vector x to acc[queue_index][voter].
template <typename Acc>
void accumulate_walk(const ContinuousGame& game, const std::vector<std::vector<int>>& queues,
                     std::span<const double> x, Acc&& acc) {
  const int n = game.n();
  std::vector<double> y_bar(n), y_under(n);
  for (std::size_t qi = 0; qi < queues.size(); ++qi) {
    const auto& queue = queues[qi];
    std::fill(y_bar.begin(), y_bar.end(), 1.0);
    std::fill(y_under.begin(), y_under.end(), 0.0);
    double bar_prev = 1.0;   // g(1,...,1)
    double under_prev = 0.0; // g(0,...,0)
    for (int t = 1; t <= n; ++t) {
      const int coord = queue[t - 1] - 1;
      y_bar[coord] = x[coord];
      y_under[coord] = x[coord];
      const double bar_t = game.eval_unchecked(y_bar);
      const double under_t = game.eval_unchecked(y_under);
      acc(qi, queue[t - 1] - 1, (bar_prev - bar_t) + (under_t - under_prev));
      bar_prev = bar_t;
      under_prev = under_t;
    }
  }
}

PowerProfile ssi_quadrature(const ContinuousGame& game, const NumericsSpec& spec) {
  const int n = game.n();
  if (n > kQuadratureMaxDim) throw CapacityError("quadrature dimension capped at 6");
  const auto queues = all_queues(n);
  const GaussRule rule = gauss_legendre(spec.quadrature_order);
  const int order = spec.quadrature_order;

  std::vector<double> totals(n, 0.0);
  std::vector<int> idx(n, 0);
  std::vector<double> x(n);
  for (;;) {
    double w = 1.0;
    for (int d = 0; d < n; ++d) {
      x[d] = rule.nodes[idx[d]];
      w *= rule.weights[idx[d]];
    }
    accumulate_walk(game, queues, x,
                    [&](std::size_t, int voter, double v) { totals[voter] += w * v; });
    int d = 0;
    for (; d < n; ++d) {
      if (++idx[d] < order) break;
      idx[d] = 0;
    }
    if (d == n) break;
  }

  PowerProfile out;
  out.method = Method::quadrature;
  out.values.resize(n);
  for (int i = 0; i < n; ++i) out.values[i] = totals[i] / static_cast<double>(queues.size());
  return out;
}

// Draw votes either uniformly or from densities (nullptr = uniform).
PowerProfile ssi_mc(const ContinuousGame& game, const DensityVector* density,
                    const NumericsSpec& spec) {
  const int n = game.n();
  const auto queues = all_queues(n);
  const std::size_t nq = queues.size();
  const long long per_queue = std::max<long long>(256, spec.mc_samples / static_cast<long long>(nq));

  // Welford accumulators per (queue, voter).
  std::vector<std::vector<double>> mean(nq, std::vector<double>(n, 0.0));
  std::vector<std::vector<double>> m2(nq, std::vector<double>(n, 0.0));

  std::vector<double> x(n);
  for (std::size_t qi = 0; qi < nq; ++qi) {
    PhiloxStream rng(spec.seed, derive_stream(0x55170000ull, qi));
    std::vector<std::vector<int>> one_queue{queues[qi]};
    std::vector<double> sample_terms(n);
    for (long long s = 0; s < per_queue; ++s) {
      for (int d = 0; d < n; ++d) {
        const double u = rng.next_double();
        if (density != nullptr) {
          const double v = density->densities[d].inverse_cdf(u);
          x[d] = (v - density->lo()) / (density->hi() - density->lo());
        } else {
          x[d] = u;
        }
      }
      std::fill(sample_terms.begin(), sample_terms.end(), 0.0);
      accumulate_walk(game, one_queue, x,
                      [&](std::size_t, int voter, double v) { sample_terms[voter] += v; });
      for (int i = 0; i < n; ++i) {
        const double d0 = sample_terms[i] - mean[qi][i];
        mean[qi][i] += d0 / static_cast<double>(s + 1);
        m2[qi][i] += d0 * (sample_terms[i] - mean[qi][i]);
      }
    }
  }

  PowerProfile out;
  out.method = Method::monte_carlo;
  out.seed = spec.seed;
  out.values.assign(n, 0.0);
  double worst_err = 0.0;
  for (int i = 0; i < n; ++i) {
    double total = 0.0, var = 0.0;
    for (std::size_t qi = 0; qi < nq; ++qi) {
      total += mean[qi][i];
      var += (m2[qi][i] / std::max(1.0, static_cast<double>(per_queue - 1))) /
             static_cast<double>(per_queue);
    }
    out.values[i] = total / static_cast<double>(nq);
    worst_err = std::max(worst_err, 3.0 * std::sqrt(var) / static_cast<double>(nq));
  }
  out.error_bound = worst_err;
  return out;
}

}  // namespace

PowerProfile ssi_continuous(const ContinuousGame& game, const NumericsSpec& spec) {
  const int n = game.n();
  if (n > kSsiExhaustiveQueueCap) {
    throw CapacityError("ssi_continuous: queue sum capped at n <= 8");
  }
  if (spec.mode == Method::exact) {
    if (const auto* m = game.body<CMonomial>()) {
      std::vector<Rat> totals(n, Rat(0));
      const auto queues = all_queues(n);
      for (const auto& queue : queues) {
        const auto terms = exact_terms_for_queue_monomial(m->poly, queue);
        for (int i = 0; i < n; ++i) totals[i] += terms[i];
      }
      const Rat denom(factorial(n));
      for (Rat& t : totals) t /= denom;
      PowerProfile out = PowerProfile::from_exact(std::move(totals));
      return out;
    }
    if (auto grid = indicator_grid(game)) {
      std::vector<Rat> totals(n, Rat(0));
      const auto queues = all_queues(n);
      for (const auto& queue : queues) {
        const auto terms = exact_terms_for_queue_indicator(game, *grid, queue);
        for (int i = 0; i < n; ++i) totals[i] += terms[i];
      }
      const Rat denom(factorial(n));
      for (Rat& t : totals) t /= denom;
      return PowerProfile::from_exact(std::move(totals));
    }
    throw DomainError(
        "exact mode covers monomial-sum games and single-coordinate threshold trees; "
        "use quadrature or monte_carlo");
  }
  if (spec.mode == Method::quadrature) return ssi_quadrature(game, spec);
  return ssi_mc(game, nullptr, spec);
}

Rat ssi_queue_term_exact(const ContinuousGame& game, const std::vector<int>& queue, int voter) {
  check_queue(queue, game.n());
  if (voter < 1 || voter > game.n()) throw InputError("voter out of range");
  if (const auto* m = game.body<CMonomial>()) {
    return exact_terms_for_queue_monomial(m->poly, queue)[voter - 1];
  }
  if (auto grid = indicator_grid(game)) {
    return exact_terms_for_queue_indicator(game, *grid, queue)[voter - 1];
  }
  throw DomainError("exact queue term needs a monomial-sum or indicator-tree game");
}

std::vector<std::pair<std::vector<int>, std::vector<Rat>>> ssi_exact_by_queue(
    const ContinuousGame& game) {
  const int n = game.n();
  std::vector<std::pair<std::vector<int>, std::vector<Rat>>> out;
  for (const auto& queue : all_queues(n)) {
    out.emplace_back(queue, std::vector<Rat>{});
    out.back().second.resize(n);
    for (int v = 1; v <= n; ++v) {
      out.back().second[v - 1] = ssi_queue_term_exact(game, queue, v);
    }
  }
  return out;
}

IntegralEstimate ssi_queue_term_mc(const ContinuousGame& game, const std::vector<int>& queue,
                                   int voter, const NumericsSpec& spec) {
  check_queue(queue, game.n());
  if (voter < 1 || voter > game.n()) throw InputError("voter out of range");
  const int n = game.n();
  // Position of the voter in the queue.
  int pos = 0;
  for (int t = 0; t < n; ++t) {
    if (queue[t] == voter) pos = t + 1;
  }
  auto integrand = [&](std::span<const double> x) {
    const auto bar_prev = tau_bar(x, queue, pos - 1);
    const auto bar_now = tau_bar(x, queue, pos);
    const auto under_now = tau_under(x, queue, pos);
    const auto under_prev = tau_under(x, queue, pos - 1);
    return (game.eval_unchecked(bar_prev) - game.eval_unchecked(bar_now)) +
           (game.eval_unchecked(under_now) - game.eval_unchecked(under_prev));
  };
  return integrate_monte_carlo(integrand, n, spec, derive_stream(0x517E, voter));
}

namespace {

PowerProfile bzi_quadrature(const ContinuousGame& game, const NumericsSpec& spec) {
  const int n = game.n();
  if (n - 1 > kQuadratureMaxDim) throw CapacityError("quadrature dimension capped at 6");
  PowerProfile out;
  out.method = Method::quadrature;
  out.values.resize(n);
  for (int i = 0; i < n; ++i) {
    auto integrand = [&](std::span<const double> rest) {
      std::vector<double> x(n);
      int r = 0;
      for (int d = 0; d < n; ++d) {
        if (d != i) x[d] = rest[r++];
      }
      x[i] = 1.0;
      const double hi = game.eval_unchecked(x);
      x[i] = 0.0;
      return hi - game.eval_unchecked(x);
    };
    if (n == 1) {
      out.values[i] = 1.0;  // g(1) - g(0)
    } else {
      out.values[i] = integrate_quadrature(integrand, n - 1, spec.quadrature_order).value;
    }
  }
  return out;
}

PowerProfile bzi_mc(const ContinuousGame& game, const DensityVector* density,
                    const NumericsSpec& spec) {
  const int n = game.n();
  PowerProfile out;
  out.method = Method::monte_carlo;
  out.seed = spec.seed;
  out.values.resize(n);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    auto integrand = [&](std::span<const double> u) {
      std::vector<double> x(n);
      for (int d = 0; d < n; ++d) {
        if (density != nullptr) {
          const double v = density->densities[d].inverse_cdf(u[d]);
          x[d] = (v - density->lo()) / (density->hi() - density->lo());
        } else {
          x[d] = u[d];
        }
      }
      x[i] = 1.0;
      const double hi = game.eval_unchecked(x);
      x[i] = 0.0;
      return hi - game.eval_unchecked(x);
    };
    const IntegralEstimate est =
        integrate_monte_carlo(integrand, n, spec, derive_stream(0xB21, i));
    out.values[i] = est.value;
    worst = std::max(worst, est.abs_err);
  }
  out.error_bound = worst;
  return out;
}

}  // namespace

PowerProfile bzi_continuous(const ContinuousGame& game, const NumericsSpec& spec) {
  const int n = game.n();
  if (spec.mode == Method::exact) {
    if (const auto* m = game.body<CMonomial>()) {
      std::vector<Rat> values(n);
      for (int i = 0; i < n; ++i) {
        values[i] = m->poly.substitute(i, 1).box_integral() -
                    m->poly.substitute(i, 0).box_integral();
      }
      return PowerProfile::from_exact(std::move(values));
    }
    if (const auto* lw = game.body<CLinearWeighted>()) {
      return PowerProfile::from_exact(std::vector<Rat>(lw->w));
    }
    if (auto grid = indicator_grid(game)) {
      std::vector<Rat> values(n);
      std::vector<int> pins(n, -1);
      for (int i = 0; i < n; ++i) {
        pins.assign(n, -1);
        pins[i] = 1;
        const Rat hi = indicator_expectation(game, *grid, pins);
        pins[i] = 0;
        values[i] = hi - indicator_expectation(game, *grid, pins);
      }
      return PowerProfile::from_exact(std::move(values));
    }
    throw DomainError(
        "exact mode covers monomial-sum, linear-weighted and indicator-tree games; "
        "use quadrature or monte_carlo");
  }
  if (spec.mode == Method::quadrature) return bzi_quadrature(game, spec);
  return bzi_mc(game, nullptr, spec);
}

PowerProfile ssi_density(const ContinuousGame& game, const DensityVector& density,
                         const NumericsSpec& spec) {
  if (density.n() != game.n()) throw InputError("density count must match voter count");
  if (spec.mode == Method::exact) {
    throw DomainError("density SSI has no exact mode; use quadrature or monte_carlo");
  }
  if (spec.mode == Method::quadrature) {
    const int n = game.n();
    if (n > kQuadratureMaxDim) throw CapacityError("quadrature dimension capped at 6");
    const auto queues = all_queues(n);
    const GaussRule rule = gauss_legendre(spec.quadrature_order);
    const int order = spec.quadrature_order;
    const double lo = density.lo(), hi = density.hi();

    std::vector<double> totals(n, 0.0);
    std::vector<int> idx(n, 0);
    std::vector<double> x(n);
    for (;;) {
      double w = 1.0;
      for (int d = 0; d < n; ++d) {
        x[d] = rule.nodes[idx[d]];
        const double vote = lo + (hi - lo) * x[d];
        w *= rule.weights[idx[d]] * density.densities[d].eval(vote) * (hi - lo);
      }
      accumulate_walk(game, queues, x,
                      [&](std::size_t, int voter, double v) { totals[voter] += w * v; });
      int d = 0;
      for (; d < n; ++d) {
        if (++idx[d] < order) break;
        idx[d] = 0;
      }
      if (d == n) break;
    }
    PowerProfile out;
    out.method = Method::quadrature;
    out.values.resize(n);
    for (int i = 0; i < n; ++i) out.values[i] = totals[i] / static_cast<double>(queues.size());
    return out;
  }
  return ssi_mc(game, &density, spec);
}

PowerProfile bzi_density(const ContinuousGame& game, const DensityVector& density,
                         const NumericsSpec& spec) {
  if (density.n() != game.n()) throw InputError("density count must match voter count");
  if (spec.mode == Method::exact) {
    throw DomainError("density BZI has no exact mode; use quadrature or monte_carlo");
  }
  if (spec.mode == Method::quadrature) {
    const int n = game.n();
    if (n - 1 > kQuadratureMaxDim) throw CapacityError("quadrature dimension capped at 6");
    const double lo = density.lo(), hi = density.hi();
    PowerProfile out;
    out.method = Method::quadrature;
    out.values.resize(n);
    for (int i = 0; i < n; ++i) {
      auto integrand = [&](std::span<const double> rest) {
        std::vector<double> x(n);
        double w = 1.0;
        int r = 0;
        for (int d = 0; d < n; ++d) {
          if (d == i) continue;
          x[d] = rest[r++];
          const double vote = lo + (hi - lo) * x[d];
          w *= density.densities[d].eval(vote) * (hi - lo);
        }
        x[i] = 1.0;
        const double vhi = game.eval_unchecked(x);
        x[i] = 0.0;
        return w * (vhi - game.eval_unchecked(x));
      };
      out.values[i] = n == 1 ? 1.0
                             : integrate_quadrature(integrand, n - 1, spec.quadrature_order).value;
    }
    return out;
  }
  return bzi_mc(game, &density, spec);
}

PowerProfile median_ssi_shortcut(const std::vector<Rat>& weights) {
  const int n = static_cast<int>(weights.size());
  if (n < 1 || n > kMaxVoters) throw InputError("voter count out of range 1..24");
  for (const Rat& w : weights) {
    if (w < 0) throw InputError("weights must be nonnegative");
  }
  const Rat total = sum(weights);
  if (total <= 0) throw InputError("weights must have positive sum");
  const Rat half = total / 2;

  // The lemma needs a unique weighted median, i.e. no subset at exactly
  // half the total weight. Gray-code walk over scaled integer weights.
  BigInt lcm = 1;
  for (const Rat& w : weights) {
    lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(w));
  }
  std::vector<BigInt> sw(n);
  BigInt stotal = 0;
  for (int i = 0; i < n; ++i) {
    sw[i] = boost::multiprecision::numerator(weights[i]) *
            (lcm / boost::multiprecision::denominator(weights[i]));
    stotal += sw[i];
  }
  const std::uint32_t full = (1u << n) - 1u;
  BigInt acc = 0;
  std::uint32_t prev_gray = 0;
  for (std::uint32_t k = 1; k <= full; ++k) {
    const std::uint32_t gray = k ^ (k >> 1);
    const std::uint32_t flipped = gray ^ prev_gray;
    const int bit = std::countr_zero(flipped);
    if (gray & flipped) {
      acc += sw[bit];
    } else {
      acc -= sw[bit];
    }
    prev_gray = gray;
    if (gray != full && 2 * acc == stotal) {
      std::string members;
      for (int i = 0; i < n; ++i) {
        if ((gray >> i) & 1u) {
          if (!members.empty()) members += ",";
          members += std::to_string(i + 1);
        }
      }
      throw PreconditionError("median shortcut: subset {" + members +
                              "} hits exactly half the weight sum");
    }
  }
  return ssi_binary(BinaryGame::weighted(half, weights));
}

}  // namespace powidx

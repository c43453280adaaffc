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

#include "powidx/numerics.hpp"

#include <cmath>
#include <thread>

#include "powidx/philox.hpp"

namespace powidx {

Rat monomial_box_integral(const Rat& coef, const std::vector<int>& exponents) {
  Rat v = coef;
  for (int e : exponents) {
    if (e < 0) throw InputError("monomial exponents must be nonnegative");
    v /= (e + 1);
  }
  return v;
}

GaussRule gauss_legendre(int order) {
  if (order < 1 || order > 128) throw InputError("quadrature order out of range 1..128");
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  // Newton iteration on P_n over [-1,1], then map to [0,1].
  for (int i = 0; i < order; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < order; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * x * p1 - k * p2) / (k + 1.0);
      }
      pp = order * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    rule.nodes[order - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[order - 1 - i] = 1.0 / ((1.0 - x * x) * pp * pp);
  }
  return rule;
}

IntegralEstimate integrate_quadrature(const BoxFunction& f, int dim, int order) {
  if (dim < 1) throw InputError("integrate: dimension must be positive");
  if (dim > kQuadratureMaxDim) {
    throw CapacityError("quadrature dimension capped at 6");
  }
  const GaussRule rule = gauss_legendre(order);

  std::vector<int> idx(dim, 0);
  std::vector<double> x(dim);
  double total = 0.0;
  for (;;) {
    double w = 1.0;
    for (int d = 0; d < dim; ++d) {
      x[d] = rule.nodes[idx[d]];
      w *= rule.weights[idx[d]];
    }
    total += w * f(x);
    int d = 0;
    for (; d < dim; ++d) {
      if (++idx[d] < order) break;
      idx[d] = 0;
    }
    if (d == dim) break;
  }
  IntegralEstimate out;
  out.value = total;
  out.abs_err = 0.0;  // no a-posteriori estimate; callers compare orders if needed
  out.samples_or_order = order;
  return out;
}

namespace {

struct StratumResult {
  double sum = 0.0;
  double sum_sq = 0.0;
  long long count = 0;
};

StratumResult run_stratum(const BoxFunction& f, int dim, double lo, double hi, long long samples,
                          std::uint64_t seed, std::uint64_t stream) {
  PhiloxStream rng(seed, stream);
  std::vector<double> x(dim);
  StratumResult r;
  r.count = samples;
  for (long long s = 0; s < samples; ++s) {
    x[0] = lo + (hi - lo) * rng.next_double();
    for (int d = 1; d < dim; ++d) x[d] = rng.next_double();
    const double v = f(x);
    r.sum += v;
    r.sum_sq += v * v;
  }
  return r;
}

}  // namespace

IntegralEstimate integrate_monte_carlo(const BoxFunction& f, int dim, const NumericsSpec& spec,
                                       std::uint64_t stream_tag) {
  if (dim < 1) throw InputError("integrate: dimension must be positive");
  const long long total_samples = std::max<long long>(spec.mc_samples, 16);
  const int strata = static_cast<int>(
      std::min<long long>(4096, std::max<long long>(1, total_samples / 64)));
  const long long per = total_samples / strata;
  const long long extra = total_samples % strata;

  std::vector<StratumResult> results(strata);
  const int workers = std::max(1, spec.workers);
  auto work = [&](int worker) {
    for (int b = worker; b < strata; b += workers) {
      const double lo = static_cast<double>(b) / strata;
      const double hi = static_cast<double>(b + 1) / strata;
      const long long samples = per + (b < extra ? 1 : 0);
      results[b] = run_stratum(f, dim, lo, hi, samples, spec.seed,
                               derive_stream(stream_tag, 0xB10C0000ull + b));
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (int w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }

  // Fixed-order reduction over strata: independent of worker count.
  double value = 0.0;
  double var = 0.0;
  for (int b = 0; b < strata; ++b) {
    const StratumResult& r = results[b];
    const double w = 1.0 / strata;  // stratum probability mass
    const double mean = r.sum / r.count;
    value += w * mean;
    const double m2 = r.sum_sq / r.count - mean * mean;
    var += w * w * std::max(0.0, m2) / r.count;
  }

  IntegralEstimate out;
  out.value = value;
  out.abs_err = 3.0 * std::sqrt(var);
  out.samples_or_order = total_samples;
  out.seed = spec.seed;
  return out;
}

IntegralEstimate integrate(const BoxFunction& f, int dim, const NumericsSpec& spec) {
  switch (spec.mode) {
    case Method::quadrature:
      return integrate_quadrature(f, dim, spec.quadrature_order);
    case Method::monte_carlo:
      return integrate_monte_carlo(f, dim, spec);
    case Method::exact:
      throw DomainError("integrate: exact mode needs a closed-form integrand");
  }
  throw DomainError("integrate: unknown mode");
}

}  // namespace powidx

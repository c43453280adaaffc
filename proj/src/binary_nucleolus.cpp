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

#include "powidx/binary_nucleolus.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "powidx/lp.hpp"

namespace powidx {

namespace {

constexpr int kNucleolusMaxVoters = 12;
constexpr double kDualTightTol = 1e-7;

// One round of the scheme: minimize eps subject to
//   x(S) + eps >= g(S)       for S in active
//   x(T)        = fixed rhs  for T already pinned
//   sum x = 1, x >= 0.
// Solved through the LP dual, which has only n+1 rows:
//   max sum g(S) y_S + sum rhs_T mu_T + lambda
//   s.t. per voter i: sum_{S ni i} y_S + sum_{T ni i} mu_T + lambda <= 0
//        sum_S y_S = 1,  y >= 0,  mu/lambda free.
// Row duals of the solved problem give x (negated) and -eps.
struct RoundResult {
  double eps = 0.0;
  std::vector<double> x;
  std::vector<double> active_duals;  // y_S, aligned with the active list
};

RoundResult solve_round(int n, const std::vector<bool>& table,
                        const std::vector<std::uint32_t>& active,
                        const std::vector<std::pair<std::uint32_t, double>>& fixed) {
  const int m = n + 1;
  const int num_y = static_cast<int>(active.size());
  // columns: y_S | mu+ mu- per fixed | lambda+ lambda- | slack per voter row
  const int num_mu = static_cast<int>(fixed.size());
  const int num_vars = num_y + 2 * num_mu + 2 + n;

  LpProblem lp;
  lp.rows.assign(m, std::vector<double>(num_vars, 0.0));
  lp.rhs.assign(m, 0.0);
  lp.cost.assign(num_vars, 0.0);

  for (int k = 0; k < num_y; ++k) {
    const std::uint32_t bits = active[k];
    for (int i = 0; i < n; ++i) {
      if ((bits >> i) & 1u) lp.rows[i][k] = 1.0;
    }
    lp.rows[n][k] = 1.0;
    lp.cost[k] = table[bits] ? -1.0 : 0.0;  // minimize -g(S) y_S
  }
  for (int f = 0; f < num_mu; ++f) {
    const std::uint32_t bits = fixed[f].first;
    const double rhs = fixed[f].second;
    const int jp = num_y + 2 * f, jm = jp + 1;
    for (int i = 0; i < n; ++i) {
      if ((bits >> i) & 1u) {
        lp.rows[i][jp] = 1.0;
        lp.rows[i][jm] = -1.0;
      }
    }
    lp.cost[jp] = -rhs;
    lp.cost[jm] = rhs;
  }
  const int jlp = num_y + 2 * num_mu, jlm = jlp + 1;
  for (int i = 0; i < n; ++i) {
    lp.rows[i][jlp] = 1.0;
    lp.rows[i][jlm] = -1.0;
    lp.rows[i][jlp + 2 + i] = 1.0;  // slack for the <= 0 row
  }
  lp.cost[jlp] = -1.0;
  lp.cost[jlm] = 1.0;
  lp.rhs[n] = 1.0;

  LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::optimal) {
    throw DomainError("nucleolus LP did not solve to optimality");
  }

  RoundResult out;
  out.x.assign(n, 0.0);
  for (int i = 0; i < n; ++i) out.x[i] = -sol.row_duals[i];
  // The solved problem minimizes the negated objective, so the attained
  // maximum (= the primal min eps) is -objective; the last row's dual
  // carries the same value and is used for consistency with x.
  out.eps = -sol.row_duals[n];
  out.active_duals.assign(sol.x.begin(), sol.x.begin() + num_y);
  return out;
}

int rank_of(std::vector<std::vector<double>> m) {
  const int rows = static_cast<int>(m.size());
  if (rows == 0) return 0;
  const int cols = static_cast<int>(m[0].size());
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r) {
      if (std::fabs(m[r][c]) > 1e-9) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank) continue;
      const double f = m[r][c] / m[rank][c];
      if (f == 0.0) continue;
      for (int cc = c; cc < cols; ++cc) m[r][cc] -= f * m[rank][cc];
    }
    ++rank;
  }
  return rank;
}

// Least-squares solve of the accumulated equality system for x.
std::vector<double> solve_equalities(const std::vector<std::vector<double>>& rows,
                                     const std::vector<double>& rhs, int n) {
  const int m = static_cast<int>(rows.size());
  std::vector<std::vector<double>> ata(n, std::vector<double>(n + 1, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int r = 0; r < m; ++r) s += rows[r][i] * rows[r][j];
      ata[i][j] = s;
    }
    double s = 0.0;
    for (int r = 0; r < m; ++r) s += rows[r][i] * rhs[r];
    ata[i][n] = s;
  }
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::fabs(ata[r][col]) > std::fabs(ata[piv][col])) piv = r;
    }
    std::swap(ata[col], ata[piv]);
    if (std::fabs(ata[col][col]) < 1e-12) continue;
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = ata[r][col] / ata[col][col];
      for (int c = col; c <= n; ++c) ata[r][c] -= f * ata[col][c];
    }
  }
  std::vector<double> x(n, 0.0);
  for (int i = 0; i < n; ++i) {
    x[i] = std::fabs(ata[i][i]) < 1e-12 ? 0.0 : ata[i][n] / ata[i][i];
  }
  return x;
}

}  // namespace

PowerProfile nucleolus_binary(const BinaryGame& game) {
  const int n = game.n();
  if (n > kNucleolusMaxVoters) {
    throw CapacityError("nucleolus_binary: n capped at 12");
  }
  if (!is_simple(game)) {
    throw DomainError("nucleolus_binary requires a simple game");
  }
  const auto& table = game.table();

  if (n == 1) {
    return PowerProfile::from_exact({Rat(1)});
  }

  const std::uint32_t full = (1u << n) - 1u;
  std::vector<std::uint32_t> active;
  active.reserve(full - 1);
  for (std::uint32_t bits = 1; bits < full; ++bits) active.push_back(bits);

  std::vector<std::pair<std::uint32_t, double>> fixed;
  std::vector<std::vector<double>> eq_rows;
  std::vector<double> eq_rhs;
  eq_rows.push_back(std::vector<double>(n, 1.0));
  eq_rhs.push_back(1.0);

  std::vector<double> x(n, 1.0 / n);
  for (int round = 0; round < n + 2 && !active.empty(); ++round) {
    RoundResult rr = solve_round(n, table, active, fixed);
    x = rr.x;

    std::vector<std::uint32_t> newly;
    for (std::size_t k = 0; k < active.size(); ++k) {
      if (rr.active_duals[k] > kDualTightTol) newly.push_back(active[k]);
    }
    if (newly.empty()) {
      // Degenerate duals: fall back to fixing everything tight at this level.
      for (std::uint32_t bits : active) {
        double xs = 0.0;
        for (int i = 0; i < n; ++i) {
          if ((bits >> i) & 1u) xs += x[i];
        }
        const double excess = (table[bits] ? 1.0 : 0.0) - xs;
        if (std::fabs(excess - rr.eps) <= 1e-8) newly.push_back(bits);
      }
    }
    if (newly.empty()) break;

    for (std::uint32_t bits : newly) {
      const double rhs = (table[bits] ? 1.0 : 0.0) - rr.eps;
      fixed.emplace_back(bits, rhs);
      std::vector<double> row(n, 0.0);
      for (int i = 0; i < n; ++i) {
        if ((bits >> i) & 1u) row[i] = 1.0;
      }
      eq_rows.push_back(std::move(row));
      eq_rhs.push_back(rhs);
      active.erase(std::find(active.begin(), active.end(), bits));
    }

    if (rank_of(eq_rows) >= n) {
      x = solve_equalities(eq_rows, eq_rhs, n);
      break;
    }
  }

  // Snap to small rationals when the LP solution rounds cleanly.
  std::vector<Rat> exact(n);
  bool clean = true;
  for (int i = 0; i < n; ++i) {
    exact[i] = round_to_rational(std::max(0.0, x[i]), 10000);
    if (std::fabs(to_double(exact[i]) - x[i]) > 1e-6) clean = false;
  }
  if (clean && sum(exact) == 1) {
    PowerProfile p = PowerProfile::from_exact(std::move(exact));
    return p;
  }

  PowerProfile p;
  p.values = x;
  p.method = Method::quadrature;  // deterministic floating-point result
  p.error_bound = 1e-9;
  return p;
}

}  // namespace powidx

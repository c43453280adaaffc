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

#include "powidx/lp.hpp"

#include <cmath>
#include <limits>

#include "powidx/errors.hpp"

namespace powidx {

namespace {

constexpr double kEps = 1e-10;
constexpr double kPivotTol = 1e-9;

// Two-phase tableau simplex. Columns: original vars then one artificial per
// row. Dantzig pricing with a Bland fallback after a stall.
class Simplex {
 public:
  explicit Simplex(const LpProblem& p)
      : m_(static_cast<int>(p.rows.size())),
        n_(static_cast<int>(p.cost.size())),
        cols_(n_ + m_),
        tab_(m_, std::vector<double>(cols_ + 1, 0.0)),
        basis_(m_) {
    for (int r = 0; r < m_; ++r) {
      if (static_cast<int>(p.rows[r].size()) != n_) throw InputError("lp: ragged row");
      const double sign = p.rhs[r] < 0 ? -1.0 : 1.0;
      for (int j = 0; j < n_; ++j) tab_[r][j] = sign * p.rows[r][j];
      tab_[r][n_ + r] = 1.0;
      tab_[r][cols_] = sign * p.rhs[r];
      basis_[r] = n_ + r;
    }
  }

  LpSolution run(const LpProblem& p) {
    LpSolution out;

    // Phase 1: minimize the artificial sum.
    std::vector<double> phase1_cost(cols_, 0.0);
    for (int j = n_; j < cols_; ++j) phase1_cost[j] = 1.0;
    if (!iterate(phase1_cost)) return out;  // unbounded phase 1 cannot happen
    if (objective_of(phase1_cost) > 1e-7) {
      out.status = LpStatus::infeasible;
      return out;
    }
    // Pivot out any artificial stuck in the basis at level zero.
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] < n_) continue;
      int enter = -1;
      for (int j = 0; j < n_; ++j) {
        if (std::fabs(tab_[r][j]) > kPivotTol) {
          enter = j;
          break;
        }
      }
      if (enter >= 0) pivot(r, enter);
    }

    std::vector<double> cost(cols_, 0.0);
    for (int j = 0; j < n_; ++j) cost[j] = p.cost[j];
    if (!iterate(cost, /*forbid_artificials=*/true)) {
      out.status = LpStatus::unbounded;
      return out;
    }

    out.status = LpStatus::optimal;
    out.x.assign(n_, 0.0);
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] < n_) out.x[basis_[r]] = tab_[r][cols_];
    }
    out.objective = 0.0;
    for (int j = 0; j < n_; ++j) out.objective += p.cost[j] * out.x[j];
    out.row_duals = duals(p);
    return out;
  }

 private:
  double objective_of(const std::vector<double>& cost) const {
    double v = 0.0;
    for (int r = 0; r < m_; ++r) v += cost[basis_[r]] * tab_[r][cols_];
    return v;
  }

  void pivot(int row, int col) {
    const double pv = tab_[row][col];
    for (int j = 0; j <= cols_; ++j) tab_[row][j] /= pv;
    for (int r = 0; r < m_; ++r) {
      if (r == row) continue;
      const double f = tab_[r][col];
      if (std::fabs(f) < kEps) continue;
      for (int j = 0; j <= cols_; ++j) tab_[r][j] -= f * tab_[row][j];
    }
    basis_[row] = col;
  }

  // Reduced cost of column j under cost vector c: c_j - c_B B^-1 A_j.
  // The tableau already stores B^-1 A, so this is a dot product down col j.
  double reduced_cost(const std::vector<double>& cost, int j) const {
    double v = cost[j];
    for (int r = 0; r < m_; ++r) v -= cost[basis_[r]] * tab_[r][j];
    return v;
  }

  bool iterate(const std::vector<double>& cost, bool forbid_artificials = false) {
    const int limit = forbid_artificials ? n_ : cols_;
    int stall = 0;
    double last_obj = objective_of(cost);
    for (long long it = 0;; ++it) {
      const bool bland = stall > 64;
      int enter = -1;
      double best = -1e-9;
      for (int j = 0; j < limit; ++j) {
        const double rc = reduced_cost(cost, j);
        if (rc < best - kEps || (bland && rc < -1e-9)) {
          best = rc;
          enter = j;
          if (bland) break;
        }
      }
      if (enter < 0) return true;

      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int r = 0; r < m_; ++r) {
        if (tab_[r][enter] > kPivotTol) {
          const double ratio = tab_[r][cols_] / tab_[r][enter];
          if (ratio < best_ratio - kEps ||
              (std::fabs(ratio - best_ratio) <= kEps &&
               (leave < 0 || basis_[r] < basis_[leave]))) {
            best_ratio = ratio;
            leave = r;
          }
        }
      }
      if (leave < 0) return false;  // unbounded

      pivot(leave, enter);
      const double obj = objective_of(cost);
      stall = (obj < last_obj - 1e-12) ? 0 : stall + 1;
      last_obj = obj;
      if (it > 200000) throw DomainError("lp: iteration limit exceeded");
    }
  }

  // Solve B^T y = c_B with the basis columns read from a clean copy of A.
  // The tableau works on the sign-flipped system (rows scaled so rhs >= 0);
  // duals are computed there and mapped back at the end.
  std::vector<double> duals(const LpProblem& p) const {
    std::vector<std::vector<double>> bt(m_, std::vector<double>(m_ + 1, 0.0));
    for (int k = 0; k < m_; ++k) {
      const int j = basis_[k];
      for (int r = 0; r < m_; ++r) {
        const double sign = p.rhs[r] < 0 ? -1.0 : 1.0;
        bt[r][k] = (j < n_) ? sign * p.rows[r][j] : (r == j - n_ ? 1.0 : 0.0);
      }
      bt[k][m_] = (j < n_) ? p.cost[j] : 0.0;
    }
    // B^T y = c_B: rows of B^T are columns of B.
    std::vector<std::vector<double>> sys(m_, std::vector<double>(m_ + 1, 0.0));
    for (int r = 0; r < m_; ++r) {
      for (int c = 0; c < m_; ++c) sys[r][c] = bt[c][r];
      sys[r][m_] = bt[r][m_];
    }
    // Gaussian elimination with partial pivoting.
    for (int col = 0; col < m_; ++col) {
      int piv = col;
      for (int r = col + 1; r < m_; ++r) {
        if (std::fabs(sys[r][col]) > std::fabs(sys[piv][col])) piv = r;
      }
      std::swap(sys[col], sys[piv]);
      if (std::fabs(sys[col][col]) < 1e-12) continue;
      for (int r = 0; r < m_; ++r) {
        if (r == col) continue;
        const double f = sys[r][col] / sys[col][col];
        for (int c = col; c <= m_; ++c) sys[r][c] -= f * sys[col][c];
      }
    }
    std::vector<double> y(m_, 0.0);
    for (int r = 0; r < m_; ++r) {
      y[r] = std::fabs(sys[r][r]) < 1e-12 ? 0.0 : sys[r][m_] / sys[r][r];
    }
    // Map the flipped-system duals back to the original rows.
    for (int r = 0; r < m_; ++r) {
      if (p.rhs[r] < 0) y[r] = -y[r];
    }
    return y;
  }

  int m_, n_, cols_;
  std::vector<std::vector<double>> tab_;
  std::vector<int> basis_;
};

}  // namespace

LpSolution solve_lp(const LpProblem& problem) {
  if (problem.rows.size() != problem.rhs.size()) throw InputError("lp: shape mismatch");
  Simplex s(problem);
  return s.run(problem);
}

}  // namespace powidx

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

#ifndef POWIDX_LP_HPP
#define POWIDX_LP_HPP

#include <vector>

namespace powidx {

// min c'x  s.t.  A x = b,  x >= 0.  Dense rows; meant for problems with few
// rows and possibly many columns (the nucleolus duals).
struct LpProblem {
  std::vector<std::vector<double>> rows;  // each of size num_vars
  std::vector<double> rhs;
  std::vector<double> cost;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  double objective = 0.0;
  std::vector<double> x;
  std::vector<double> row_duals;  // y with B^T y = c_B at optimality
};

LpSolution solve_lp(const LpProblem& problem);

}  // namespace powidx

#endif  // POWIDX_LP_HPP

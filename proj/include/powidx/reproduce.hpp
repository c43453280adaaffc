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

#ifndef POWIDX_REPRODUCE_HPP
#define POWIDX_REPRODUCE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "powidx/continuous_game.hpp"
#include "powidx/density.hpp"
#include "powidx/jk_game.hpp"

namespace powidx {

// One verified reference value: expected vs computed at a stated tolerance.
struct FixtureResult {
  std::string group;
  std::string name;
  std::string expected;
  std::string computed;
  bool pass = false;
  std::string note;
};

struct ReproduceOptions {
  std::string only;  // substring filter on group/name; empty = run all
  std::uint64_t seed = 0x5EEDCAFEull;
  bool include_slow = true;  // the two-voter nucleolus tournament
};

std::vector<FixtureResult> run_reproduction(const ReproduceOptions& options);

// Shared reference games.
//
// Ternary-input veto game: output level 1 iff voter 1 votes level 1 and
// voters 2,3 do not both vote level 3.
JKGame make_ternary_veto_game();
// (x1^2 + 2 x2^2 + 3 x3^2) / 6
ContinuousGame make_quadratic_weights_game();
// x1 x2^2 x3^3
ContinuousGame make_cubic_product_game();
// x1 x2^2
ContinuousGame make_two_voter_product_game();
// Peaked/anti-peaked densities on [-1,1]: 3/4 (1-x^2) and 3/8 (1+x^2) twice.
DensityVector make_peaked_density_example();

}  // namespace powidx

#endif  // POWIDX_REPRODUCE_HPP

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

#ifndef POWIDX_BINARY_NUCLEOLUS_HPP
#define POWIDX_BINARY_NUCLEOLUS_HPP

#include "powidx/binary_game.hpp"
#include "powidx/power_profile.hpp"

namespace powidx {

// The lexicographically minimal imputation (x >= 0, x(N) = 1) under the
// sorted-excess order, via the standard sequence of linear programs:
// minimize the maximum excess, fix the coalitions with positive dual,
// repeat. Requires a simple game, n <= 12. Values are snapped to small
// rationals (denominator <= 1e4) when they round cleanly.
PowerProfile nucleolus_binary(const BinaryGame& game);

}  // namespace powidx

#endif  // POWIDX_BINARY_NUCLEOLUS_HPP

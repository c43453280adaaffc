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

#ifndef POWIDX_BINARY_POWER_HPP
#define POWIDX_BINARY_POWER_HPP

#include <functional>

#include "powidx/binary_game.hpp"
#include "powidx/power_profile.hpp"

namespace powidx {

// Shapley-Shubik index, exact rationals. Defined on any Boolean game;
// efficient (sums to 1) on simple games.
PowerProfile ssi_binary(const BinaryGame& game);

// Absolute Banzhaf index, exact rationals.
PowerProfile bzi_binary(const BinaryGame& game);

using BinaryIndex = std::function<PowerProfile(const BinaryGame&)>;

// P(g1) + P(g2) == P(g1 /\ g2) + P(g1 \/ g2), component-wise exact.
bool transfer_check(const BinaryIndex& index, const BinaryGame& g1, const BinaryGame& g2);

}  // namespace powidx

#endif  // POWIDX_BINARY_POWER_HPP

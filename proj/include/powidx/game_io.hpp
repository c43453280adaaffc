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

#ifndef POWIDX_GAME_IO_HPP
#define POWIDX_GAME_IO_HPP

#include <string>
#include <variant>

#include <json.hpp>

#include "powidx/binary_game.hpp"
#include "powidx/continuous_game.hpp"
#include "powidx/density.hpp"
#include "powidx/jk_game.hpp"
#include "powidx/power_profile.hpp"

namespace powidx {

using GameVariant = std::variant<BinaryGame, JKGame, ContinuousGame>;

// Parses a one-game-per-file JSON description ("class": binary | jk |
// continuous). Syntax errors raise ParseError with 1-based line/column.
GameVariant load_game(const std::string& path);
GameVariant parse_game_text(const std::string& text);
GameVariant parse_game_json(const nlohmann::json& j);

DensityVector load_density(const std::string& path);
DensityVector parse_density_json(const nlohmann::json& j);

// Rationals render as "p/q" strings; floats as JSON numbers.
nlohmann::json profile_to_json(const PowerProfile& profile);

}  // namespace powidx

#endif  // POWIDX_GAME_IO_HPP

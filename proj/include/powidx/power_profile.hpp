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

#ifndef POWIDX_POWER_PROFILE_HPP
#define POWIDX_POWER_PROFILE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "powidx/errors.hpp"
#include "powidx/rational.hpp"

namespace powidx {

enum class Method { exact, quadrature, monte_carlo };

// Per-voter index values plus how they were obtained. Exact profiles carry
// rationals; the double view is always populated.
struct PowerProfile {
  std::vector<double> values;
  std::vector<Rat> exact_values;  // nonempty iff method == exact
  Method method = Method::exact;
  std::optional<std::uint64_t> seed;
  std::optional<double> error_bound;

  static PowerProfile from_exact(std::vector<Rat> exact) {
    PowerProfile p;
    p.exact_values = std::move(exact);
    p.values.reserve(p.exact_values.size());
    for (const Rat& r : p.exact_values) p.values.push_back(to_double(r));
    p.method = Method::exact;
    return p;
  }

  int size() const { return static_cast<int>(values.size()); }
};

// Divides by the component sum; exactness is preserved.
PowerProfile normalize(const PowerProfile& profile);

}  // namespace powidx

#endif  // POWIDX_POWER_PROFILE_HPP

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

#ifndef POWIDX_RATIONAL_HPP
#define POWIDX_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace powidx {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Parses "p/q", plain integers, and decimal literals ("0.25" -> 1/4).
Rat parse_rational(const std::string& text);

// "p/q", or just "p" when the denominator is 1.
std::string format_rational(const Rat& value);

double to_double(const Rat& value);

BigInt factorial(int n);

// Best rational approximation of x with denominator <= max_denominator
// (continued-fraction convergents/semiconvergents).
Rat round_to_rational(double x, std::int64_t max_denominator);

// Rescales so the entries sum to one. Empty or all-zero input is rejected
// by the caller; this asserts a positive sum.
std::vector<Rat> normalize_weights(const std::vector<Rat>& weights);

Rat sum(const std::vector<Rat>& values);

}  // namespace powidx

#endif  // POWIDX_RATIONAL_HPP

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

#include "powidx/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "powidx/errors.hpp"

namespace powidx {

namespace {

bool is_integer_literal(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rat parse_rational(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw InputError("empty rational literal");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den)) {
      throw InputError("bad rational literal: '" + text + "'");
    }
    BigInt d(den);
    if (d == 0) throw InputError("zero denominator in '" + text + "'");
    return Rat(BigInt(num), d);
  }

  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string ip = s.substr(0, dot);
    std::string fp = s.substr(dot + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    if (!ip.empty() && (ip[0] == '+' || ip[0] == '-')) ip = ip.substr(1);
    if (ip.empty()) ip = "0";
    if (!is_integer_literal(ip) || (!fp.empty() && !is_integer_literal(fp))) {
      throw InputError("bad decimal literal: '" + text + "'");
    }
    BigInt scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    BigInt whole(ip);
    BigInt frac = fp.empty() ? BigInt(0) : BigInt(fp);
    Rat r = Rat(whole * scale + frac, scale);
    return neg ? -r : r;
  }

  if (!is_integer_literal(s)) {
    throw InputError("bad rational literal: '" + text + "'");
  }
  return Rat(BigInt(s));
}

std::string format_rational(const Rat& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rat& value) { return value.convert_to<double>(); }

BigInt factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

Rat round_to_rational(double x, std::int64_t max_denominator) {
  if (!std::isfinite(x)) throw InputError("cannot round non-finite value");
  const bool neg = x < 0;
  double v = std::fabs(x);

  // Continued-fraction convergents p/q with q capped.
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = v;
  for (int iter = 0; iter < 64; ++iter) {
    double ai = std::floor(frac);
    if (ai > 1e17) break;
    std::int64_t a = static_cast<std::int64_t>(ai);
    if (q1 != 0 && a > (max_denominator - q0) / q1) {
      // Best semiconvergent within the cap.
      std::int64_t a_cap = (max_denominator - q0) / q1;
      std::int64_t ps = p0 + a_cap * p1, qs = q0 + a_cap * q1;
      double e_conv = std::fabs(v - static_cast<double>(p1) / static_cast<double>(q1));
      double e_semi = qs > 0 ? std::fabs(v - static_cast<double>(ps) / static_cast<double>(qs)) : 1e300;
      Rat best = (e_semi < e_conv && qs > 0) ? Rat(ps, qs) : Rat(p1, q1);
      return neg ? -best : best;
    }
    std::int64_t p2 = p0 + a * p1;
    std::int64_t q2 = q0 + a * q1;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double rem = frac - ai;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  Rat best(q1 == 0 ? 0 : p1, q1 == 0 ? 1 : q1);
  return neg ? -best : best;
}

std::vector<Rat> normalize_weights(const std::vector<Rat>& weights) {
  Rat total = sum(weights);
  if (total <= 0) throw DomainError("weights must have positive sum");
  std::vector<Rat> out = weights;
  for (Rat& w : out) w /= total;
  return out;
}

Rat sum(const std::vector<Rat>& values) {
  Rat total = 0;
  for (const Rat& v : values) total += v;
  return total;
}

}  // namespace powidx

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

#include "powidx/game_io.hpp"

#include <fstream>
#include <sstream>

namespace powidx {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& what) { throw ParseError(what, 0, 0); }

Rat rat_field(const json& j, const char* context) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long long>());
  schema_error(std::string(context) + ": expected a rational string or integer");
}

std::vector<Rat> rat_array(const json& j, const char* context) {
  if (!j.is_array()) schema_error(std::string(context) + ": expected an array");
  std::vector<Rat> out;
  for (const auto& v : j) out.push_back(rat_field(v, context));
  return out;
}

BinaryGame parse_binary(const json& j) {
  const std::string kind = j.value("kind", "");
  if (kind == "weighted") {
    if (!j.contains("quota") || !j.contains("weights")) {
      schema_error("weighted game needs quota and weights");
    }
    return BinaryGame::weighted(rat_field(j.at("quota"), "quota"),
                                rat_array(j.at("weights"), "weights"));
  }
  if (kind == "table") {
    if (!j.contains("n") || !j.contains("winning")) schema_error("table game needs n and winning");
    const int n = j.at("n").get<int>();
    std::vector<Coalition> winning;
    for (const auto& coal : j.at("winning")) {
      std::vector<int> voters;
      for (const auto& v : coal) voters.push_back(v.get<int>());
      winning.push_back(Coalition::of(voters, n));
    }
    return BinaryGame::from_winning(n, winning);
  }
  if (kind == "meet" || kind == "join") {
    if (!j.contains("parts")) schema_error(kind + " game needs parts");
    std::vector<BinaryGame> parts;
    for (const auto& p : j.at("parts")) parts.push_back(parse_binary(p));
    return kind == "meet" ? BinaryGame::meet(std::move(parts))
                          : BinaryGame::join(std::move(parts));
  }
  schema_error("binary kind must be weighted, table, meet or join");
}

JKGame parse_jk(const json& j) {
  const int n = j.value("n", 0);
  const int jj = j.value("j", 0);
  const int k = j.value("k", 0);
  const auto& rule = j.at("rule");
  if (rule.value("kind", "") != "table") schema_error("jk rule kind must be table");
  const auto& entries = rule.at("entries");

  if (n < 1 || n > 20 || jj < 2 || k < 2) schema_error("jk game needs n >= 1 and j,k >= 2");
  const long long expected = [&] {
    long long v = 1;
    for (int i = 0; i < n; ++i) {
      v *= jj;
      if (v > (1LL << 30)) schema_error("jk table too large");
    }
    return v;
  }();
  if (static_cast<long long>(entries.size()) != expected) {
    schema_error("jk table must list every profile exactly once");
  }
  std::vector<std::uint8_t> table(expected, 0);
  std::vector<bool> seen(expected, false);
  for (const auto& e : entries) {
    Profile p;
    for (const auto& lev : e.at("profile")) {
      p.levels.push_back(static_cast<std::uint8_t>(lev.get<int>()));
    }
    if (static_cast<int>(p.levels.size()) != n) schema_error("jk profile width mismatch");
    std::size_t idx = 0, mult = 1;
    for (int v = 0; v < n; ++v) {
      const int lev = p.levels[v];
      if (lev < 1 || lev > jj) schema_error("jk profile level outside 1..j");
      idx += static_cast<std::size_t>(lev - 1) * mult;
      mult *= jj;
    }
    if (seen[idx]) schema_error("jk table lists a profile twice");
    seen[idx] = true;
    table[idx] = static_cast<std::uint8_t>(e.at("output").get<int>());
  }
  return JKGame(n, jj, k, std::move(table));
}

QuotaFunction parse_quota_fn(const json& j) {
  if (j.contains("breakpoints")) {
    std::vector<std::pair<Rat, Rat>> bps;
    for (const auto& bp : j.at("breakpoints")) {
      if (!bp.is_array() || bp.size() != 2) schema_error("breakpoints entries must be [x, y]");
      bps.emplace_back(rat_field(bp[0], "breakpoint x"), rat_field(bp[1], "breakpoint y"));
    }
    return QuotaFunction::piecewise_linear(std::move(bps));
  }
  if (j.contains("monomials")) {
    std::vector<MonomialTerm> terms;
    for (const auto& t : j.at("monomials")) {
      terms.push_back(MonomialTerm{rat_field(t.at("coef"), "quota coef"),
                                   {t.at("exponent").get<int>()}});
    }
    return QuotaFunction::monomials(MonomialSum(1, std::move(terms)));
  }
  schema_error("quota_fn needs breakpoints or monomials");
}

ContinuousGame parse_continuous(const json& j) {
  const std::string kind = j.value("kind", "");
  if (kind == "monomial_sum") {
    const auto& jterms = j.at("terms");
    if (jterms.empty()) schema_error("monomial_sum needs terms");
    std::vector<MonomialTerm> terms;
    std::size_t n = 0;
    for (const auto& t : jterms) {
      MonomialTerm mt;
      mt.coef = rat_field(t.at("coef"), "coef");
      for (const auto& e : t.at("exponents")) mt.exponents.push_back(e.get<int>());
      n = std::max(n, mt.exponents.size());
      terms.push_back(std::move(mt));
    }
    return ContinuousGame::monomial_sum(MonomialSum(static_cast<int>(n), std::move(terms)));
  }
  if (kind == "linear_weighted") {
    return ContinuousGame::linear_weighted(rat_array(j.at("weights"), "weights"));
  }
  if (kind == "threshold") {
    return ContinuousGame::threshold(rat_field(j.at("quota"), "quota"),
                                     rat_array(j.at("weights"), "weights"));
  }
  if (kind == "quota_weighted") {
    return ContinuousGame::quota_weighted(parse_quota_fn(j.at("quota_fn")),
                                          rat_array(j.at("weights"), "weights"));
  }
  if (kind == "weighted_median") {
    return ContinuousGame::weighted_median(rat_array(j.at("weights"), "weights"));
  }
  if (kind == "median") {
    return ContinuousGame::median(j.at("n").get<int>());
  }
  if (kind == "meet" || kind == "join") {
    std::vector<ContinuousGame> parts;
    for (const auto& p : j.at("parts")) parts.push_back(parse_continuous(p));
    return kind == "meet" ? ContinuousGame::meet(std::move(parts))
                          : ContinuousGame::join(std::move(parts));
  }
  if (kind == "threshold_intersection") {
    std::vector<ContinuousGame> parts;
    for (const auto& p : j.at("parts")) parts.push_back(parse_continuous(p));
    return ContinuousGame::threshold_intersection(std::move(parts));
  }
  schema_error("unknown continuous kind '" + kind + "'");
}

std::pair<int, int> position_of(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = position_of(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError(e.what(), line, col);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

GameVariant parse_game_json(const nlohmann::json& j) {
  try {
    const std::string cls = j.value("class", "");
    if (cls == "binary") return parse_binary(j);
    if (cls == "jk") return parse_jk(j);
    if (cls == "continuous") return parse_continuous(j);
    schema_error("game class must be binary, jk or continuous");
  } catch (const json::exception& e) {
    schema_error(e.what());
  }
}

GameVariant parse_game_text(const std::string& text) {
  return parse_game_json(parse_json_text(text));
}

GameVariant load_game(const std::string& path) { return parse_game_text(read_file(path)); }

DensityVector parse_density_json(const nlohmann::json& j) {
  try {
    const auto& arr = j.contains("density") ? j.at("density") : j;
    std::vector<PiecewisePoly> densities;
    for (const auto& d : arr) {
      const auto& support = d.at("support");
      const Rat lo = rat_field(support[0], "support");
      const Rat hi = rat_field(support[1], "support");
      std::vector<PolyPiece> pieces;
      for (const auto& p : d.at("pieces")) {
        PolyPiece piece;
        piece.lo = rat_field(p.at("interval")[0], "interval");
        piece.hi = rat_field(p.at("interval")[1], "interval");
        for (const auto& c : p.at("coeffs")) piece.coeffs.push_back(rat_field(c, "coeffs"));
        pieces.push_back(std::move(piece));
      }
      densities.emplace_back(lo, hi, std::move(pieces));
    }
    return make_density_vector(std::move(densities));
  } catch (const json::exception& e) {
    schema_error(e.what());
  }
}

DensityVector load_density(const std::string& path) {
  return parse_density_json(parse_json_text(read_file(path)));
}

nlohmann::json profile_to_json(const PowerProfile& profile) {
  json out;
  if (!profile.exact_values.empty()) {
    json vals = json::array();
    for (const Rat& r : profile.exact_values) vals.push_back(format_rational(r));
    out["values"] = vals;
  } else {
    out["values"] = profile.values;
  }
  switch (profile.method) {
    case Method::exact:
      out["method"] = "exact";
      break;
    case Method::quadrature:
      out["method"] = "quadrature";
      break;
    case Method::monte_carlo:
      out["method"] = "monte_carlo";
      break;
  }
  if (profile.seed) out["seed"] = *profile.seed;
  if (profile.error_bound) out["error_bound"] = *profile.error_bound;
  return out;
}

}  // namespace powidx

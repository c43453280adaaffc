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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "powidx/binary_power.hpp"
#include "powidx/continuous_power.hpp"
#include "powidx/game_io.hpp"

using namespace powidx;
using nlohmann::json;

TEST_CASE("binary weighted game file") {
  const auto game = parse_game_text(
      R"({"class":"binary","kind":"weighted","quota":"3","weights":["2","1","1","1"]})");
  const auto* bg = std::get_if<BinaryGame>(&game);
  REQUIRE(bg != nullptr);
  CHECK(bg->n() == 4);
  CHECK(ssi_binary(*bg).exact_values ==
        std::vector<Rat>{Rat(1, 2), Rat(1, 6), Rat(1, 6), Rat(1, 6)});
}

TEST_CASE("binary table and combinator files") {
  const auto game = parse_game_text(
      R"({"class":"binary","kind":"table","n":3,"winning":[[1,2],[1,2,3]]})");
  const auto* bg = std::get_if<BinaryGame>(&game);
  REQUIRE(bg != nullptr);
  CHECK(bg->eval_bits(0b011) == 1);
  CHECK(bg->eval_bits(0b101) == 0);

  const auto joined = parse_game_text(R"({
    "class":"binary","kind":"join","parts":[
      {"class":"binary","kind":"weighted","quota":"2","weights":["1","1","0"]},
      {"class":"binary","kind":"weighted","quota":"1","weights":["0","0","1"]}]})");
  const auto* jg = std::get_if<BinaryGame>(&joined);
  REQUIRE(jg != nullptr);
  CHECK(jg->eval_bits(0b100) == 1);
}

TEST_CASE("jk game file requires a complete table") {
  json j;
  j["class"] = "jk";
  j["n"] = 2;
  j["j"] = 2;
  j["k"] = 2;
  json entries = json::array();
  for (int a = 1; a <= 2; ++a) {
    for (int b = 1; b <= 2; ++b) {
      entries.push_back({{"profile", {a, b}}, {"output", (a == 1 && b == 1) ? 1 : 2}});
    }
  }
  j["rule"] = {{"kind", "table"}, {"entries", entries}};
  const auto game = parse_game_json(j);
  const auto* jk = std::get_if<JKGame>(&game);
  REQUIRE(jk != nullptr);
  CHECK(is_jk_simple(*jk));

  entries.erase(entries.begin());
  j["rule"] = {{"kind", "table"}, {"entries", entries}};
  CHECK_THROWS_AS(parse_game_json(j), ParseError);
}

TEST_CASE("continuous game files") {
  const auto mono = parse_game_text(R"({
    "class":"continuous","kind":"monomial_sum",
    "terms":[{"coef":"1/6","exponents":[2,0,0]},
             {"coef":"2/6","exponents":[0,2,0]},
             {"coef":"3/6","exponents":[0,0,2]}]})");
  const auto* cg = std::get_if<ContinuousGame>(&mono);
  REQUIRE(cg != nullptr);
  NumericsSpec spec;
  spec.mode = Method::exact;
  CHECK(ssi_continuous(*cg, spec).exact_values ==
        std::vector<Rat>{Rat(1, 6), Rat(2, 6), Rat(3, 6)});

  for (const char* text : {
           R"({"class":"continuous","kind":"linear_weighted","weights":["1/4","3/4"]})",
           R"({"class":"continuous","kind":"threshold","quota":"3/5","weights":["1","1"]})",
           R"({"class":"continuous","kind":"weighted_median","weights":["5","3","2","1"]})",
           R"({"class":"continuous","kind":"median","n":3})",
           R"({"class":"continuous","kind":"quota_weighted","weights":["1","1"],
               "quota_fn":{"breakpoints":[["0","0"],["1/2","1/5"],["1","1"]]}})",
           R"({"class":"continuous","kind":"threshold_intersection","parts":[
               {"class":"continuous","kind":"threshold","quota":"1/2","weights":["1","0"]},
               {"class":"continuous","kind":"threshold","quota":"1/2","weights":["0","1"]}]})",
       }) {
    const auto game = parse_game_text(text);
    CHECK(std::get_if<ContinuousGame>(&game) != nullptr);
  }
}

TEST_CASE("density file") {
  const auto dv = parse_density_json(json::parse(R"({
    "density":[
      {"support":[-1,1],"pieces":[{"interval":[-1,1],"coeffs":["3/4","0","-3/4"]}]},
      {"support":[-1,1],"pieces":[{"interval":[-1,1],"coeffs":["3/8","0","3/8"]}]},
      {"support":[-1,1],"pieces":[{"interval":[-1,1],"coeffs":["3/8","0","3/8"]}]}]})"));
  CHECK(dv.n() == 3);
  CHECK(dv.densities[0].eval(0.0) == doctest::Approx(0.75));
  CHECK(dv.densities[1].eval(1.0) == doctest::Approx(0.75));
}

TEST_CASE("parse errors carry line and column") {
  try {
    parse_game_text("{\n  \"class\": \"binary\",\n  !!!\n}");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() >= 1);
  }
  CHECK_THROWS_AS(parse_game_text(R"({"class":"martian"})"), ParseError);
  CHECK_THROWS_AS(load_game("/nonexistent/file.json"), ParseError);
}

TEST_CASE("profile json round trips byte-identically") {
  const PowerProfile p =
      ssi_binary(BinaryGame::weighted(Rat(3), {Rat(2), Rat(1), Rat(1), Rat(1)}));
  const json j = profile_to_json(p);
  const std::string once = j.dump(2);
  const std::string twice = json::parse(once).dump(2);
  CHECK(once == twice);
  CHECK(j.at("values")[0].get<std::string>() == "1/2");
  CHECK(j.at("method").get<std::string>() == "exact");

  PowerProfile mc;
  mc.values = {0.25, 0.75};
  mc.method = Method::monte_carlo;
  mc.seed = 42;
  mc.error_bound = 1e-3;
  const std::string m1 = profile_to_json(mc).dump();
  CHECK(json::parse(m1).dump() == m1);
}

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

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "powidx/binary_nucleolus.hpp"
#include "powidx/binary_power.hpp"
#include "powidx/continuous_nucleolus.hpp"
#include "powidx/continuous_power.hpp"
#include "powidx/game_io.hpp"
#include "powidx/reproduce.hpp"

namespace {

using namespace powidx;
using nlohmann::json;

constexpr int kExitParse = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitPrecondition = 4;

struct IndexOptions {
  std::string game_path;
  std::string index = "ssi";
  std::string method = "exact";
  int order = 16;
  long long samples = 1'000'000;
  std::uint64_t seed = 0x5EEDCAFEull;
  std::string density_path;
  std::string output = "text";
  std::string curve_csv;
};

NumericsSpec spec_of(const IndexOptions& opt) {
  NumericsSpec spec;
  if (opt.method == "exact") {
    spec.mode = Method::exact;
  } else if (opt.method == "quadrature") {
    spec.mode = Method::quadrature;
  } else if (opt.method == "mc") {
    spec.mode = Method::monte_carlo;
  } else {
    throw InputError("--method must be exact, quadrature or mc");
  }
  spec.quadrature_order = opt.order;
  spec.mc_samples = opt.samples;
  spec.seed = opt.seed;
  return spec;
}

std::string render_profile_text(const PowerProfile& p) {
  std::ostringstream ss;
  ss << "(";
  for (int i = 0; i < p.size(); ++i) {
    if (i) ss << ", ";
    if (!p.exact_values.empty()) {
      ss << format_rational(p.exact_values[i]);
    } else {
      ss << p.values[i];
    }
  }
  ss << ")";
  return ss.str();
}

json nucleolus_report(const NucleolusResult& r) {
  json out;
  out["w_star"] = r.w_star;
  out["max_excess"] = r.max_excess_value;
  out["phase"] = r.phase == NucleolusResult::Phase::max_excess_unique ? "max_excess_unique"
                                                                      : "curve_refined";
  json box = json::array();
  for (const auto& [lo, hi] : r.box_bounds) box.push_back({lo, hi});
  out["box_bounds"] = box;
  json curves = json::array();
  for (const auto& [w, curve] : r.final_curves) {
    json jc;
    jc["w"] = w;
    jc["c"] = curve.grid;
    jc["volume"] = curve.volumes;
    jc["stderr"] = curve.stderrs;
    curves.push_back(jc);
  }
  out["curves"] = curves;
  return out;
}

void dump_curves_csv(const NucleolusResult& r, const std::string& path) {
  std::ofstream out(path);
  out << "w,c,volume,stderr\n";
  for (const auto& [w, curve] : r.final_curves) {
    std::string wtag;
    for (std::size_t i = 0; i < w.size(); ++i) {
      wtag += (i ? ";" : "") + std::to_string(w[i]);
    }
    for (std::size_t k = 0; k < curve.grid.size(); ++k) {
      out << wtag << "," << curve.grid[k] << "," << curve.volumes[k] << "," << curve.stderrs[k]
          << "\n";
    }
  }
}

int run_index_one(const IndexOptions& opt, const std::string& path) {
  const GameVariant game = load_game(path);
  const NumericsSpec spec = spec_of(opt);

  json report;
  report["game"] = path;
  report["index"] = opt.index;
  PowerProfile profile;
  bool have_profile = true;

  if (const auto* bg = std::get_if<BinaryGame>(&game)) {
    if (opt.index == "ssi") {
      profile = ssi_binary(*bg);
    } else if (opt.index == "bzi") {
      profile = bzi_binary(*bg);
    } else if (opt.index == "bzi_normalized") {
      profile = normalize(bzi_binary(*bg));
    } else if (opt.index == "nucleolus") {
      profile = nucleolus_binary(*bg);
    } else {
      throw InputError("--index must be ssi, bzi, bzi_normalized or nucleolus");
    }
  } else if (const auto* jk = std::get_if<JKGame>(&game)) {
    if (opt.index == "ssi") {
      profile = spec.mode == Method::monte_carlo
                    ? ssi_jk_sampled(*jk, {spec.mc_samples, spec.seed})
                    : ssi_jk(*jk);
    } else if (opt.index == "bzi") {
      profile = bzi_jk(*jk);
    } else if (opt.index == "bzi_normalized") {
      profile = normalize(bzi_jk(*jk));
    } else {
      throw InputError("jk games support ssi, bzi and bzi_normalized");
    }
  } else {
    const auto& cg = std::get<ContinuousGame>(game);
    if (opt.index == "nucleolus") {
      const NucleolusResult r = nucleolus_search(cg, spec);
      report["nucleolus"] = nucleolus_report(r);
      if (!opt.curve_csv.empty()) dump_curves_csv(r, opt.curve_csv);
      have_profile = false;
      if (opt.output == "json") {
        std::cout << report.dump(2) << "\n";
      } else {
        std::cout << path << ": nucleolus w* = (";
        for (std::size_t i = 0; i < r.w_star.size(); ++i) {
          std::cout << (i ? ", " : "") << r.w_star[i];
        }
        std::cout << "), max excess " << r.max_excess_value << ", phase "
                  << (r.phase == NucleolusResult::Phase::max_excess_unique ? "max_excess_unique"
                                                                           : "curve_refined")
                  << "\n  box:";
        for (const auto& [lo, hi] : r.box_bounds) std::cout << " [" << lo << ", " << hi << "]";
        std::cout << "\n";
      }
      return 0;
    }
    std::optional<DensityVector> density;
    if (!opt.density_path.empty()) density = load_density(opt.density_path);
    if (opt.index == "ssi") {
      profile = density ? ssi_density(cg, *density, spec) : ssi_continuous(cg, spec);
    } else if (opt.index == "bzi") {
      profile = density ? bzi_density(cg, *density, spec) : bzi_continuous(cg, spec);
    } else if (opt.index == "bzi_normalized") {
      profile = normalize(density ? bzi_density(cg, *density, spec) : bzi_continuous(cg, spec));
    } else {
      throw InputError("--index must be ssi, bzi, bzi_normalized or nucleolus");
    }
  }

  if (!have_profile) return 0;
  if (opt.output == "json") {
    report["profile"] = profile_to_json(profile);
    std::cout << report.dump(2) << "\n";
  } else if (opt.output == "csv") {
    std::cout << "voter,value\n";
    for (int i = 0; i < profile.size(); ++i) {
      if (!profile.exact_values.empty()) {
        std::cout << i + 1 << "," << format_rational(profile.exact_values[i]) << "\n";
      } else {
        std::cout << i + 1 << "," << profile.values[i] << "\n";
      }
    }
  } else {
    std::cout << path << ": " << opt.index << " = " << render_profile_text(profile);
    if (profile.method == Method::monte_carlo) {
      std::cout << "  [mc";
      if (profile.seed) std::cout << " seed=" << *profile.seed;
      if (profile.error_bound) std::cout << " 3sigma=" << *profile.error_bound;
      std::cout << "]";
    } else if (profile.method == Method::quadrature) {
      std::cout << "  [numeric]";
    }
    std::cout << "\n";
  }
  return 0;
}

std::vector<std::string> expand_paths(const std::string& game_path) {
  namespace fs = std::filesystem;
  if (fs::is_directory(game_path)) {
    std::vector<std::string> paths;
    for (const auto& entry : fs::directory_iterator(game_path)) {
      if (entry.path().extension() == ".json") paths.push_back(entry.path().string());
    }
    std::sort(paths.begin(), paths.end());
    return paths;
  }
  return {game_path};
}

int run_index(const IndexOptions& opt) {
  int rc = 0;
  for (const std::string& path : expand_paths(opt.game_path)) {
    rc = std::max(rc, run_index_one(opt, path));
  }
  return rc;
}

std::string verdict_str(CheckVerdict v) {
  switch (v) {
    case CheckVerdict::yes:
      return "yes";
    case CheckVerdict::no:
      return "no";
    default:
      return "no counterexample found";
  }
}

int run_check(const std::string& game_path, long long samples, std::uint64_t seed,
              const std::string& output) {
  for (const std::string& path : expand_paths(game_path)) {
    const GameVariant game = load_game(path);
    json report;
    report["game"] = path;
    if (const auto* bg = std::get_if<BinaryGame>(&game)) {
      const bool simple = is_simple(*bg);
      report["simple"] = simple;
      if (simple) {
        const GameProperties props = properties(*bg);
        report["proper"] = props.proper;
        report["strong"] = props.strong;
        report["constant_sum"] = props.constant_sum;
        json nulls = json::array();
        for (int v : null_voters(*bg)) nulls.push_back(v);
        report["null_voters"] = nulls;
        report["complete"] = is_complete(*bg);
        if (props.proper_witness) {
          report["proper_witness"] = props.proper_witness->members();
        }
        if (props.strong_witness) {
          report["strong_witness"] = props.strong_witness->members();
        }
      }
    } else if (const auto* jk = std::get_if<JKGame>(&game)) {
      report["jk_simple"] = is_jk_simple(*jk);
    } else {
      const auto& cg = std::get<ContinuousGame>(game);
      NumericsSpec spec;
      spec.mc_samples = samples;
      spec.seed = seed;
      const StructuralReport rep = structural_checks(cg, spec);
      report["proper"] = verdict_str(rep.proper);
      report["strong"] = verdict_str(rep.strong);
      report["constant_sum"] = verdict_str(rep.constant_sum);
      report["complete"] = verdict_str(rep.complete);
      report["null_voters"] = rep.null_voters;
      if (rep.proper_witness) report["proper_witness"] = *rep.proper_witness;
      if (rep.strong_witness) report["strong_witness"] = *rep.strong_witness;
      if (rep.incomparable_pair) {
        report["incomparable_pair"] = {rep.incomparable_pair->first,
                                       rep.incomparable_pair->second};
      }
    }
    if (output == "json") {
      std::cout << report.dump(2) << "\n";
    } else {
      std::cout << path << ":\n";
      for (const auto& [key, value] : report.items()) {
        if (key == "game") continue;
        std::cout << "  " << key << ": " << value.dump() << "\n";
      }
    }
  }
  return 0;
}

int run_reproduce(const std::string& only, std::uint64_t seed, bool skip_slow) {
  ReproduceOptions opt;
  opt.only = only;
  opt.seed = seed;
  opt.include_slow = !skip_slow;
  const auto results = run_reproduction(opt);
  int failures = 0;
  for (const FixtureResult& r : results) {
    std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.group << "/" << r.name << "\n"
              << "      expected: " << r.expected << "\n"
              << "      computed: " << r.computed << "\n";
    if (!r.note.empty()) std::cout << "      note: " << r.note << "\n";
    if (!r.pass) ++failures;
  }
  std::cout << results.size() - failures << "/" << results.size() << " fixtures passed\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"voting-power indices for binary, (j,k) and continuous simple games"};
  app.require_subcommand(1);

  IndexOptions iopt;
  CLI::App* index = app.add_subcommand("index", "compute a power index for a game file");
  index->add_option("--game", iopt.game_path, "game file or directory")->required();
  index->add_option("--index", iopt.index, "ssi | bzi | bzi_normalized | nucleolus");
  index->add_option("--method", iopt.method, "exact | quadrature | mc");
  index->add_option("--order", iopt.order, "quadrature order per axis");
  index->add_option("--samples", iopt.samples, "Monte Carlo sample count");
  index->add_option("--seed", iopt.seed, "Monte Carlo seed");
  index->add_option("--density", iopt.density_path, "per-voter density file (continuous only)");
  index->add_option("--output", iopt.output, "text | json | csv");
  index->add_option("--curve-csv", iopt.curve_csv, "dump nucleolus excess curves to CSV");

  std::string check_game, check_output = "text";
  long long check_samples = 100000;
  std::uint64_t check_seed = 0x5EEDCAFEull;
  CLI::App* check = app.add_subcommand("check", "structural predicates of a game file");
  check->add_option("--game", check_game, "game file or directory")->required();
  check->add_option("--samples", check_samples, "sampling budget for falsification");
  check->add_option("--seed", check_seed, "sampling seed");
  check->add_option("--output", check_output, "text | json");

  std::string only;
  std::uint64_t rep_seed = 0x5EEDCAFEull;
  bool skip_slow = false;
  CLI::App* reproduce = app.add_subcommand("reproduce", "run the reference-value suite");
  reproduce->add_option("--only", only, "substring filter on fixture group/name");
  reproduce->add_option("--seed", rep_seed, "Monte Carlo seed");
  reproduce->add_flag("--skip-slow", skip_slow, "skip the two-voter nucleolus tournament");

  try {
    app.parse(argc, argv);
    if (index->parsed()) return run_index(iopt);
    if (check->parsed()) return run_check(check_game, check_samples, check_seed, check_output);
    if (reproduce->parsed()) return run_reproduce(only, rep_seed, skip_slow);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const powidx::ParseError& e) {
    std::cerr << "parse error at line " << e.line() << ", column " << e.column() << ": "
              << e.what() << "\n";
    return kExitParse;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitPrecondition;
  }
  return 0;
}

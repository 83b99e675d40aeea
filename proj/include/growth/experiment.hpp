#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "growth/generators.hpp"
#include "growth/group_model.hpp"

namespace growth {

/// Which space to build. `family` is one of lattice, heisenberg, tree-chain,
/// stairway, scaled-line, file.
struct SpaceSpec {
  std::string family = "lattice";
  int d = 2;
  /// Named generating set, or explicit tuples when `elements` is an array.
  std::string generators = "standard";
  nlohmann::json elements;
  int radius = 8;  // Cayley ball radius / scaled-line half length
  TreeChainSpec tree{2, 3, 8};
  int levels = 10;  // stairway
  std::string path;
  /// "induced" (Euclidean, stairway only) or "graph".
  std::string metric = "induced";
};

struct CentersSpec {
  std::vector<std::string> basepoints{"origin"};
  std::size_t sample = 0;
  /// Adds every block root, last-generation vertex set and landmark of a tree chain.
  bool landmarks = false;
};

struct DoublingSpec {
  Distance r_max = 1;
  /// When set, also reports the constant at this smaller scale.
  std::optional<Distance> baseline_r_max;
};

struct ShellSpec {
  Distance k_min = 5;
  Distance n_max = 1;
  bool records = true;
  /// Radii for the recursion audit; empty means every n in 1..n_max.
  std::vector<Distance> audit;
};

struct VerifySpec {
  std::vector<Distance> radii;   // empty: every radius of the profile
  std::optional<double> delta;   // default: delta from the shell report
  bool expect_pass = true;
};

struct DyadicSpec {
  int i_max = 7;
};

struct AbelianSpec {
  std::size_t n_max = 128;
  std::optional<double> bound;
};

struct FitSpec {
  std::size_t lo = 0;
  std::size_t hi = 0;
  std::optional<double> expect;
  double tolerance = 0.1;
};

struct ErgodicSpec {
  std::string observable = "cos2pix";
  double x = 0.1, y = 0.2;
  std::size_t n_max = 300;
  std::string rotation = "golden";
  std::string generators = "standard";
  std::size_t check_n = 200;
  double tolerance = 0.05;
};

struct PowersSpec {
  std::string model = "z2";
  std::string generators = "standard+id";
  nlohmann::json elements;
  /// An array of tuple lists: varying products cycling through these factors,
  /// certified between k_lower and k_upper.
  nlohmann::json factors, k_lower, k_upper;
  /// Also run the C/n isoperimetric check on the sizes.
  bool isop = false;
  std::size_t n_max = 32;
  std::size_t fit_lo = 0, fit_hi = 0;
  std::optional<double> min_decay;
};

struct InclusionSpec {
  std::string model = "z2";
  std::string generators = "standard+id";
  std::size_t n_max = 20;
  std::vector<std::size_t> ks{4, 8, 12};
};

/// Family-specific checks of the counterexample constructions.
struct CounterexampleSpec {
  std::vector<int> scales;
};

struct ExperimentConfig {
  std::string name;
  std::string description;
  SpaceSpec space;
  CentersSpec centers;
  std::uint64_t seed = 1;
  Distance radius = 0;  // profile radius (0: not needed)
  std::size_t budget_vertices = kDefaultVertexBudget;
  std::size_t budget_elements = 40'000'000;
  unsigned threads = 1;
  std::optional<DoublingSpec> doubling;
  std::optional<ShellSpec> shell;
  std::optional<VerifySpec> verify;
  std::optional<DyadicSpec> dyadic;
  std::optional<AbelianSpec> abelian;
  std::optional<FitSpec> fit;
  std::optional<ErgodicSpec> ergodic;
  std::optional<PowersSpec> powers;
  std::optional<InclusionSpec> inclusions;
  std::optional<CounterexampleSpec> counterexample;

  /// Canonical form (sorted keys) of the validated input.
  nlohmann::json source;
  /// FNV-1a of source.dump(), 16 hex digits.
  std::string hash() const;
};

/// Strict parse: unknown keys, wrong types and out-of-range values throw
/// InvalidInput naming the field.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig parse_config_file(const std::string& path);

struct ExperimentResult {
  nlohmann::json summary;
  std::vector<std::filesystem::path> files;
  bool pass = true;
};

/// Builds the space, runs every enabled analysis and writes CSVs (each led by
/// a "# config_hash=" comment and a header row) plus summary.json into `out`.
ExperimentResult run_experiment(const ExperimentConfig& config, const std::filesystem::path& out);

/// Bundled recipe names, and each recipe's config.
std::vector<std::string> recipe_names();
nlohmann::json recipe(const std::string& name);

/// Built space plus whatever structure its family carries.
struct Space {
  SpaceSpec spec;
  std::optional<CayleyBall> cayley;
  std::optional<TreeChain> tree;
  std::optional<StairwayStrip> stairway;
  std::optional<ScaledLine> line;
  std::optional<Graph> file;

  const Graph& graph() const;
  VolumeProfile profile(Vertex center, Distance radius) const;
};

Space build_space(const SpaceSpec& spec, std::size_t budget_vertices);
SpaceSpec parse_space(const nlohmann::json& doc);

/// A named set of `model`, or the explicit tuples when `explicit_elements` is an array.
std::vector<Element> resolve_elements(const GroupModel& model, const std::string& label,
                                      const nlohmann::json& explicit_elements);

/// "%.12g" formatting, independent of locale.
std::string format_double(double v);

}  // namespace growth

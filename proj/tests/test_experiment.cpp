#include "doctest.h"

#include <fstream>
#include <sstream>

#include "growth/errors.hpp"
#include "growth/experiment.hpp"

using namespace growth;
using nlohmann::json;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("growth_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

std::string error_of(const json& doc) {
  try {
    parse_config(doc);
  } catch (const InvalidInput& e) {
    return e.what();
  }
  return "";
}

const json kZ2 = json::parse(R"({
  "name": "z2",
  "space": {"family": "lattice", "d": 2, "radius": 24},
  "radius": 24,
  "analyses": {"shell": {"k_min": 5, "n_max": 19}, "verify": {}}
})");

}  // namespace

TEST_CASE("strict config validation names the offending field") {
  json doc = kZ2;
  doc["analyses"]["shell"]["kmin"] = 3;
  CHECK(error_of(doc).find("config.analyses.shell.kmin") != std::string::npos);

  doc = kZ2;
  doc["space"]["d"] = "two";
  CHECK(error_of(doc).find("space.d") != std::string::npos);

  doc = kZ2;
  doc["space"]["family"] = "torus";
  CHECK(error_of(doc).find("space.family") != std::string::npos);

  doc = kZ2;
  doc["budgets"] = {{"vertices", 0}};
  CHECK(error_of(doc).find("config.budgets.vertices") != std::string::npos);

  doc = kZ2;
  doc["centers"] = {{"sample", 3}};
  CHECK(error_of(doc).find("config.seed") != std::string::npos);

  doc = kZ2;
  doc.erase("space");
  CHECK(error_of(doc).find("config.space") != std::string::npos);

  CHECK(error_of(kZ2).empty());
}

TEST_CASE("unknown basepoints are reported by label") {
  json doc = kZ2;
  doc["centers"] = {{"basepoints", {"origin", "north-pole"}}};
  const auto config = parse_config(doc);
  try {
    run_experiment(config, scratch("basepoint"));
    FAIL("expected an error");
  } catch (const InvalidInput& e) {
    CHECK(std::string(e.what()).find("north-pole") != std::string::npos);
  }
}

TEST_CASE("budget errors name the module and the reached size") {
  json doc = kZ2;
  doc["budgets"] = {{"vertices", 100}};
  const auto config = parse_config(doc);
  try {
    run_experiment(config, scratch("budget"));
    FAIL("expected a budget error");
  } catch (const BudgetExceeded& e) {
    const std::string what = e.what();
    CHECK(what.find("generators") != std::string::npos);
    CHECK(what.find("100") != std::string::npos);
  }
}

TEST_CASE("Z^2 shell and verify run end to end") {
  const auto dir = scratch("z2");
  const auto res = run_experiment(parse_config(kZ2), dir);
  CHECK(res.pass);
  CHECK(res.summary["shell"]["alpha_float"].get<double>() > 0);
  CHECK(res.summary["shell"]["delta"].get<double>() > 0);
  CHECK(res.summary["shell"]["audit_violations"].get<int>() == 0);
  CHECK(res.summary["verify"]["pass"].get<bool>());
  const std::string hash = parse_config(kZ2).hash();
  CHECK(hash.size() == 16);
  for (const auto& f : res.files) {
    if (f.extension() != ".csv") continue;
    std::ifstream in(f);
    std::string first, header;
    std::getline(in, first);
    std::getline(in, header);
    CHECK(first == "# config_hash=" + hash);
    CHECK(!header.empty());
    CHECK(header.find(',') != std::string::npos);
  }
}

TEST_CASE("tree-chain runs report ratios at least 1/8 in CSV rows") {
  json doc = recipe("counterexample-tree");
  doc["space"]["blocks"] = 7;
  doc["analyses"]["counterexample"]["scales"] = {3, 4, 5};
  const auto dir = scratch("tree");
  const auto res = run_experiment(parse_config(doc), dir);
  CHECK(res.pass);
  std::ifstream in(dir / "counterexample.csv");
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  CHECK(line.rfind("k,center,ball,thick_shell,ratio", 0) == 0);
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::stringstream ss(line);
    std::vector<std::string> cols;
    for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
    CHECK(std::stoull(cols[3]) * 8 >= std::stoull(cols[2]));
  }
  CHECK(rows == 3);
}

TEST_CASE("reruns are byte-identical") {
  json doc = kZ2;
  doc["centers"] = {{"basepoints", {"origin"}}, {"sample", 4}};
  doc["seed"] = 17;
  const auto config = parse_config(doc);
  const auto a = scratch("rerun_a"), b = scratch("rerun_b");
  const auto ra = run_experiment(config, a);
  run_experiment(config, b);
  for (const auto& f : ra.files) CHECK(slurp(f) == slurp(b / f.filename()));
}

TEST_CASE("recipes parse and are described") {
  const auto names = recipe_names();
  CHECK(names.size() == 9);
  for (const auto& name : names) {
    const auto doc = recipe(name);
    CHECK(doc["name"] == name);
    CHECK(doc["description"].get<std::string>().size() > 40);
    CHECK_NOTHROW(parse_config(doc));
  }
  CHECK_THROWS_AS(recipe("theorem-none"), InvalidInput);
}

TEST_CASE("format_double is locale-free %.12g") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0 / 3) == "0.333333333333");
  CHECK(format_double(2.5e-9) == "2.5e-09");
}

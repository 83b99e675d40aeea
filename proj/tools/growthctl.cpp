// growthctl: command-line driver for the growth experiments.
#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "growth/errors.hpp"
#include "growth/experiment.hpp"

using nlohmann::json;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::size_t budget_vertices = growth::kDefaultVertexBudget;
  std::size_t budget_elements = 40'000'000;
  unsigned threads = 1;
  std::string out = "out";
};

struct SpaceFlags {
  std::string family = "lattice";
  int d = 2;
  std::string generators = "standard";
  std::string elements;
  int radius = 8;
  int a = 2, b = 3, blocks = 8;
  int levels = 10;
  std::string path;
  std::string metric;

  void attach(CLI::App* app) {
    app->add_option("--family", family, "lattice|heisenberg|tree-chain|stairway|scaled-line|file")
        ->capture_default_str();
    app->add_option("--d", d, "lattice dimension")->capture_default_str();
    app->add_option("--generators", generators, "named generating set")->capture_default_str();
    app->add_option("--elements", elements, "explicit generators as JSON, e.g. [[1,0],[0,1]]");
    app->add_option("--space-radius", radius, "Cayley ball radius / scaled-line half length")
        ->capture_default_str();
    app->add_option("--a", a, "tree edge-stretch base")->capture_default_str();
    app->add_option("--b", b, "tree valence")->capture_default_str();
    app->add_option("--blocks", blocks, "tree blocks")->capture_default_str();
    app->add_option("--levels", levels, "stairway levels")->capture_default_str();
    app->add_option("--path", path, "graph file (family=file)");
    app->add_option("--metric", metric, "graph|induced");
  }

  json to_json() const {
    json s{{"family", family}};
    if (family == "lattice") s["d"] = d;
    if (family == "lattice" || family == "heisenberg") {
      s["generators"] = generators;
      if (!elements.empty()) s["elements"] = json::parse(elements);
    }
    if (family == "lattice" || family == "heisenberg" || family == "scaled-line") s["radius"] = radius;
    if (family == "tree-chain") {
      s["a"] = a;
      s["b"] = b;
      s["blocks"] = blocks;
    }
    if (family == "stairway") s["levels"] = levels;
    if (family == "file") s["path"] = path;
    if (!metric.empty()) s["metric"] = metric;
    return s;
  }
};

struct CenterFlags {
  std::vector<std::string> basepoints;
  std::size_t sample = 0;
  bool landmarks = false;

  void attach(CLI::App* app) {
    app->add_option("--center", basepoints, "basepoint label (repeatable; default origin)");
    app->add_option("--sample", sample, "extra seeded random centers");
    app->add_flag("--landmarks", landmarks, "add tree-chain landmarks");
  }

  json to_json(const std::string& family) const {
    json c = json::object();
    if (!basepoints.empty()) {
      c["basepoints"] = basepoints;
    } else if (family == "tree-chain") {
      c["basepoints"] = json::array({"r_1"});
    }
    if (sample) c["sample"] = sample;
    if (landmarks) c["landmarks"] = true;
    return c;
  }
};

json base_config(const Globals& g, const std::string& name) {
  return {{"name", name},
          {"seed", g.seed},
          {"threads", g.threads},
          {"budgets", {{"vertices", g.budget_vertices}, {"elements", g.budget_elements}}}};
}

int run(const json& doc, const Globals& g) {
  const auto config = growth::parse_config(doc);
  const auto result = growth::run_experiment(config, g.out);
  std::cout << result.summary.dump(2) << "\n";
  return result.pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Volume-growth, sphere-bound and ergodic-average experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "seed for center sampling")->capture_default_str();
  app.add_option("--budget-vertices", g.budget_vertices, "vertex budget")->capture_default_str();
  app.add_option("--budget-elements", g.budget_elements, "product-set budget")
      ->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads")->capture_default_str()->check(
      CLI::PositiveNumber);
  app.add_option("--out", g.out, "output directory")->capture_default_str();

  // generate
  SpaceFlags gen_space;
  auto* generate = app.add_subcommand("generate", "build a space and write its graph file");
  gen_space.attach(generate);

  // profile
  SpaceFlags prof_space;
  CenterFlags prof_centers;
  int prof_radius = 16;
  auto* profile = app.add_subcommand("profile", "ball and sphere volumes around centers");
  prof_space.attach(profile);
  prof_centers.attach(profile);
  profile->add_option("--radius", prof_radius, "profile radius")->capture_default_str();

  // powers / nprod
  std::string pw_model = "z2", pw_generators = "standard+id", pw_elements;
  std::size_t pw_n = 32;
  bool pw_isop = false;
  auto* powers = app.add_subcommand("powers", "sizes |U^n| and Folner ratios of product powers");
  powers->add_option("--model", pw_model, "z1..z4|heisenberg")->capture_default_str();
  powers->add_option("--generators", pw_generators, "named set")->capture_default_str();
  powers->add_option("--elements", pw_elements, "explicit U as JSON tuples");
  powers->add_option("--n", pw_n, "largest power")->capture_default_str();
  powers->add_flag("--isop", pw_isop, "also run the n |dU^n| / |U^n| check");

  std::string np_model = "z2", np_factors, np_lower, np_upper;
  std::size_t np_n = 32, np_fit_lo = 0, np_fit_hi = 0;
  auto* nprod = app.add_subcommand("nprod", "varying products U_0 ... U_n with cycling factors");
  nprod->add_option("--model", np_model, "z1..z4|heisenberg")->capture_default_str();
  nprod->add_option("--factors", np_factors, "JSON array of factor tuple lists")->required();
  nprod->add_option("--k-lower", np_lower, "generating set inside every factor")->required();
  nprod->add_option("--k-upper", np_upper, "set containing every factor")->required();
  nprod->add_option("--n", np_n, "number of factors minus one")->capture_default_str();
  nprod->add_option("--fit-lo", np_fit_lo, "decay fit window start");
  nprod->add_option("--fit-hi", np_fit_hi, "decay fit window end");

  // shell-report
  SpaceFlags sh_space;
  CenterFlags sh_centers;
  int sh_kmin = 5, sh_nmax = 16;
  auto* shell = app.add_subcommand("shell-report", "shell ratios, alpha, delta and recursion audit");
  sh_space.attach(shell);
  sh_centers.attach(shell);
  shell->add_option("--k-min", sh_kmin, "smallest k")->capture_default_str();
  shell->add_option("--n-max", sh_nmax, "largest n")->capture_default_str();

  // verify
  SpaceFlags vf_space;
  CenterFlags vf_centers;
  int vf_radius = 64;
  double vf_delta = -1;
  std::vector<int> vf_radii;
  auto* verify = app.add_subcommand("verify", "sphere bound S <= C n^-delta B with a flat C trend");
  vf_space.attach(verify);
  vf_centers.attach(verify);
  verify->add_option("--radius", vf_radius, "profile radius")->capture_default_str();
  verify->add_option("--delta", vf_delta, "exponent (default: from a shell report)");
  verify->add_option("--radii", vf_radii, "radii to test (default: all)");

  // dyadic
  SpaceFlags dy_space;
  CenterFlags dy_centers;
  int dy_imax = 7, dy_radius = 512;
  auto* dyadic = app.add_subcommand("dyadic", "dyadic radius selection with its certificate");
  dy_space.attach(dyadic);
  dy_centers.attach(dyadic);
  dyadic->add_option("--i-max", dy_imax, "largest i")->capture_default_str();
  dyadic->add_option("--radius", dy_radius, "profile radius (needs 2^(i+2))")->capture_default_str();

  // fit
  SpaceFlags fit_space;
  int fit_radius = 64;
  std::size_t fit_lo = 0, fit_hi = 0;
  auto* fit = app.add_subcommand("fit", "growth exponent of B(origin, n)");
  fit_space.attach(fit);
  fit->add_option("--radius", fit_radius, "profile radius")->capture_default_str();
  fit->add_option("--lo", fit_lo, "window start (default sqrt(hi))");
  fit->add_option("--hi", fit_hi, "window end (default radius)");

  // ergodic
  std::string eg_observable = "cos2pix", eg_rotation = "golden";
  std::vector<double> eg_start{0.1, 0.2};
  std::size_t eg_n = 300, eg_check = 200;
  auto* ergodic = app.add_subcommand("ergodic", "ball averages of a torus rotation action of Z^2");
  ergodic->add_option("--observable", eg_observable, "const|cos2pix|cos2piy|cos2pi(x+y)|indicator")
      ->capture_default_str();
  ergodic->add_option("--start", eg_start, "start point x y")->expected(2)->capture_default_str();
  ergodic->add_option("--n", eg_n, "largest radius")->capture_default_str();
  ergodic->add_option("--rotation", eg_rotation, "golden|silver")->capture_default_str();
  ergodic->add_option("--check-n", eg_check, "radius of the pass/fail check")->capture_default_str();

  // reproduce / run
  std::string recipe_name;
  bool list = false;
  auto* reproduce = app.add_subcommand("reproduce", "run a bundled recipe");
  reproduce->add_option("recipe", recipe_name, "recipe name");
  reproduce->add_flag("--list", list, "list recipes with their descriptions");

  std::string config_path;
  auto* runcmd = app.add_subcommand("run", "run a JSON experiment config");
  runcmd->add_option("config", config_path, "config file")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      const auto spec = growth::parse_space(gen_space.to_json());
      const auto space = growth::build_space(spec, g.budget_vertices);
      std::filesystem::create_directories(g.out);
      const auto path = std::filesystem::path(g.out) / "graph.txt";
      std::ofstream out(path);
      growth::write_graph(out, space.graph());
      std::cout << "wrote " << path.string() << " (" << space.graph().vertex_count()
                << " vertices, " << space.graph().edge_count() << " edges)\n";
      return 0;
    }
    if (profile->parsed()) {
      json doc = base_config(g, "profile");
      doc["space"] = prof_space.to_json();
      doc["centers"] = prof_centers.to_json(prof_space.family);
      doc["radius"] = prof_radius;
      return run(doc, g);
    }
    if (powers->parsed()) {
      json doc = base_config(g, "powers");
      json p{{"model", pw_model}, {"generators", pw_generators}, {"n_max", pw_n}, {"isop", pw_isop}};
      if (!pw_elements.empty()) p["elements"] = json::parse(pw_elements);
      doc["analyses"] = {{"powers", p}};
      return run(doc, g);
    }
    if (nprod->parsed()) {
      json doc = base_config(g, "nprod");
      json p{{"model", np_model},
             {"factors", json::parse(np_factors)},
             {"k_lower", json::parse(np_lower)},
             {"k_upper", json::parse(np_upper)},
             {"n_max", np_n}};
      if (np_fit_lo || np_fit_hi) {
        p["fit_lo"] = np_fit_lo;
        p["fit_hi"] = np_fit_hi;
        p["min_decay"] = 0.0;
      }
      doc["analyses"] = {{"powers", p}};
      return run(doc, g);
    }
    if (shell->parsed()) {
      json doc = base_config(g, "shell-report");
      doc["space"] = sh_space.to_json();
      doc["centers"] = sh_centers.to_json(sh_space.family);
      doc["radius"] = sh_nmax + sh_kmin;
      doc["analyses"] = {{"shell", {{"k_min", sh_kmin}, {"n_max", sh_nmax}}}};
      return run(doc, g);
    }
    if (verify->parsed()) {
      json doc = base_config(g, "verify");
      doc["space"] = vf_space.to_json();
      doc["centers"] = vf_centers.to_json(vf_space.family);
      doc["radius"] = vf_radius;
      json v = json::object();
      if (!vf_radii.empty()) v["radii"] = vf_radii;
      if (vf_delta >= 0) {
        v["delta"] = vf_delta;
        doc["analyses"] = {{"verify", v}};
      } else {
        const int k_min = 5;
        doc["analyses"] = {{"shell", {{"k_min", k_min}, {"n_max", vf_radius - k_min}}},
                           {"verify", v}};
      }
      return run(doc, g);
    }
    if (dyadic->parsed()) {
      json doc = base_config(g, "dyadic");
      doc["space"] = dy_space.to_json();
      doc["centers"] = dy_centers.to_json(dy_space.family);
      doc["radius"] = dy_radius;
      doc["analyses"] = {{"dyadic", {{"i_max", dy_imax}}}};
      return run(doc, g);
    }
    if (fit->parsed()) {
      json doc = base_config(g, "fit");
      doc["space"] = fit_space.to_json();
      if (fit_space.family == "tree-chain") doc["centers"] = {{"basepoints", {"r_1"}}};
      doc["radius"] = fit_radius;
      doc["analyses"] = {{"fit", {{"lo", fit_lo}, {"hi", fit_hi}}}};
      return run(doc, g);
    }
    if (ergodic->parsed()) {
      json doc = base_config(g, "ergodic");
      doc["analyses"] = {{"ergodic",
                          {{"observable", eg_observable},
                           {"start", eg_start},
                           {"n_max", eg_n},
                           {"rotation", eg_rotation},
                           {"check_n", std::min(eg_check, eg_n)}}}};
      return run(doc, g);
    }
    if (reproduce->parsed()) {
      if (list || recipe_name.empty()) {
        for (const auto& name : growth::recipe_names()) {
          std::cout << name << ": " << growth::recipe(name)["description"].get<std::string>()
                    << "\n";
        }
        return 0;
      }
      json doc = growth::recipe(recipe_name);
      doc["seed"] = g.seed;
      doc["threads"] = g.threads;
      doc["budgets"] = {{"vertices", g.budget_vertices}, {"elements", g.budget_elements}};
      return run(doc, g);
    }
    if (runcmd->parsed()) {
      const auto config = growth::parse_config_file(config_path);
      const auto result = growth::run_experiment(config, g.out);
      std::cout << result.summary.dump(2) << "\n";
      return result.pass ? 0 : 3;
    }
  } catch (const growth::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "invalid JSON argument: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

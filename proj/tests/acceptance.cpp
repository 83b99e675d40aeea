// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

#include "growth/analysis.hpp"
#include "growth/ergodic.hpp"
#include "growth/experiment.hpp"
#include "growth/generators.hpp"
#include "growth/group_walk.hpp"
#include "growth/space.hpp"
#include "oracles.hpp"

using namespace growth;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// 1. Thick dyadic shells at the block roots and ball volumes at last-generation
// vertices on the (2,3,8) chain.
Outcome tree_chain() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto chain = stretched_tree_chain({2, 3, 8});
  for (int k = 3; k <= 7; ++k) {
    const Distance r = Distance{1} << k;
    const auto p = volume_profile(chain.graph, chain.blocks[k - 1].root, r);
    const std::uint64_t ball = p.ball[r], shell = ball - p.ball[r / 2];
    o.require(8 * shell >= ball, "shell ratio at k=" + std::to_string(k));
    std::uint64_t worst = 0;
    for (int n = k + 1; n <= 8; ++n) {
      const auto& leaves = chain.blocks[n - 1].leaves;
      for (Vertex v : {leaves.front(), leaves[leaves.size() / 2], leaves.back()})
        worst = std::max(worst, volume_profile(chain.graph, v, r).ball[r]);
    }
    o.require(worst <= 8 * ipow(3, k), "leaf ball at k=" + std::to_string(k));
    o.note("k=" + std::to_string(k) + " S/B=" + std::to_string(shell) + "/" +
           std::to_string(ball) + " leafB=" + std::to_string(worst) + "<=" +
           std::to_string(8 * ipow(3, k)));
  }
  const double t = seconds_since(t0);
  o.require(t < 60, "runtime under 1 min");
  o.note("time " + fmt(t) + "s");
  return o;
}

// 2. The (3,2) chain: bounded doubling, sphere witnesses, small delta.
Outcome remark_chain() {
  Outcome o;
  const auto chain = stretched_tree_chain({3, 2, 8});
  std::vector<Vertex> centers;
  for (const auto& b : chain.blocks) {
    centers.push_back(b.root);
    centers.push_back(b.leaves.front());
  }
  std::vector<double> cs;
  for (int n = 3; n <= 6; ++n) {
    const Vertex x = sphere_witness(chain, n);
    centers.push_back(x);
    const Distance r = static_cast<Distance>(ipow(3, n));
    const auto p = volume_profile(chain.graph, x, r + 1);
    cs.push_back(static_cast<double>(p.sphere[r]) / static_cast<double>(ipow(2, n)));
  }
  const auto profiles = volume_profiles(chain.graph, centers, 1458);
  const auto d4 = doubling_constant(profiles, 81), d6 = doubling_constant(profiles, 729);
  o.require(d6.value <= 2 * d4.value, "doubling within 2x");
  const double c = *std::min_element(cs.begin(), cs.end());
  const double c_hi = *std::max_element(cs.begin(), cs.end());
  o.require(c > 0 && c_hi <= 1.5 * c, "witness constant stable");
  const auto rep = shell_alpha(profiles, 5, 729);
  const double ceiling = 1 - std::log(2.0) / std::log(3.0) + 0.1;
  o.require(rep.delta <= ceiling, "delta below ceiling");
  o.note("C_D(81)=" + fmt(to_double(d4.value)) + " C_D(729)=" + fmt(to_double(d6.value)) +
         " c in [" + fmt(c) + "," + fmt(c_hi) + "] delta=" + fmt(rep.delta) + "<=" + fmt(ceiling));
  return o;
}

// 3. Shell alpha, flat verify trend and a clean audit on Z^2 and H3(Z).
Outcome pipeline() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  struct Case {
    std::string name;
    CayleyBall ball;
    Distance R, n_max;
  };
  LatticeModel z2(2);
  HeisenbergModel h;
  std::vector<Case> cases;
  cases.push_back({"Z2", lattice_graph(2, z2.generating_set("standard"), 64), 64, 59});
  cases.push_back({"H3", heisenberg_graph(h.generating_set("standard"), 32), 32, 16});
  for (const auto& c : cases) {
    const auto p = volume_profile(c.ball.graph, 0, c.R);
    const auto rep = shell_alpha(p, 5, c.n_max);
    o.require(rep.alpha > 0, c.name + " alpha > 0");
    const auto v = verify_sphere_bound(p, delta_from_alpha(rep.alpha));
    o.require(v.pass && v.trend_slope <= 0.05, c.name + " flat trend");
    int violations = 0;
    for (Distance n = 1; n <= c.R; ++n) violations += !lemma_recursion_audit(p, n, rep.alpha).ok();
    o.require(violations == 0, c.name + " audit");
    o.note(c.name + " alpha=" + to_string(rep.alpha) + " delta=" + fmt(rep.delta) +
           " slope=" + fmt(v.trend_slope) + " violations=" + std::to_string(violations));
  }
  const double t = seconds_since(t0);
  o.require(t < 300, "runtime under 5 min");
  o.note("time " + fmt(t) + "s");
  return o;
}

// 4. Exact agreement with brute-force enumeration.
Outcome oracles() {
  Outcome o;
  for (int d = 1; d <= 3; ++d) {
    LatticeModel m(d);
    const auto ball = lattice_graph(d, m.generating_set("standard"), 10);
    const auto p = volume_profile(ball.graph, 0, 10);
    for (int r = 0; r <= 10; ++r)
      o.require(p.ball[r] == oracle::l1_ball(d, r), "Z^" + std::to_string(d) + " r=" + std::to_string(r));
    // Product-set enumeration of the same ball.
    const auto seq = product_powers(m, m.generating_set("standard+id"), 10);
    for (int r = 0; r <= 10; ++r) o.require(seq.sizes[r] == p.ball[r], "product sets d=" + std::to_string(d));
  }
  HeisenbergModel h;
  const auto words = oracle::heisenberg_word_balls(5);
  for (int R = 1; R <= 5; ++R) {
    const auto ball = heisenberg_graph(h.generating_set("standard"), R);
    const auto p = volume_profile(ball.graph, 0, R);
    for (int r = 0; r <= R; ++r) o.require(p.ball[r] == words[r], "H3 R=" + std::to_string(R));
  }
  LatticeModel z2(2);
  const auto big = lattice_graph(2, z2.generating_set("standard"), 64);
  const auto p = volume_profile(big.graph, 0, 64);
  for (std::uint64_t n = 0; n <= 64; ++n)
    o.require(p.ball[n] == 2 * n * n + 2 * n + 1, "Z2 closed form n=" + std::to_string(n));
  o.note("lattice d<=3 R<=10, H3 R<=5 (|B_5|=" + std::to_string(words[5]) + "), Z2 n<=64");
  return o;
}

// 5. The two shell inclusions, via the library and an independent l1 scan.
Outcome inclusions() {
  Outcome o;
  LatticeModel z2(2);
  const std::vector<std::size_t> ks{4, 8, 12};
  const auto recs = check_shell_inclusions(z2, z2.generating_set("standard+id"), 20, ks);
  std::size_t expected = 0;
  for (std::size_t k : ks) expected += 20 - k + 1;
  o.require(recs.size() == expected, "every (n,k) pair checked");
  for (const auto& r : recs)
    o.require(r.outer_covered && r.inner_contains,
              "n=" + std::to_string(r.n) + " k=" + std::to_string(r.k));

  // Independent check: in Z^2 with U = {0, +-e1, +-e2}, U^m is the l1 ball of radius m.
  auto norm = [](int x, int y) { return std::abs(x) + std::abs(y); };
  auto shell = [&](int a, int b) {
    std::set<std::pair<int, int>> s;
    for (int x = -b; x <= b; ++x)
      for (int y = -b; y <= b; ++y)
        if (norm(x, y) > a && norm(x, y) <= b) s.insert({x, y});
    return s;
  };
  auto thicken = [&](const std::set<std::pair<int, int>>& s, int m) {
    std::set<std::pair<int, int>> out;
    for (auto [x, y] : s)
      for (int dx = -m; dx <= m; ++dx)
        for (int dy = -m + std::abs(dx); dy <= m - std::abs(dx); ++dy) out.insert({x + dx, y + dy});
    return out;
  };
  int brute_ok = 0;
  for (int k : {4, 8, 12})
    for (int n = k; n <= 20; ++n) {
      const auto outer = shell(n, n + k), middle = shell(n - k / 2, n - k / 2 + 1),
                 inner = shell(n - k, n);
      const auto cover = thicken(middle, 2 * k), fat = thicken(middle, k / 4);
      const bool a = std::includes(cover.begin(), cover.end(), outer.begin(), outer.end());
      const bool b = std::includes(inner.begin(), inner.end(), fat.begin(), fat.end());
      o.require(a && b, "independent scan n=" + std::to_string(n) + " k=" + std::to_string(k));
      brute_ok += a && b;
    }
  o.note(std::to_string(recs.size()) + " pairs by product sets, " + std::to_string(brute_ok) +
         " by direct scan");
  return o;
}

// 6. Alternating varying products on Z^2.
Outcome varying() {
  Outcome o;
  LatticeModel z2(2);
  const auto& lower = z2.generating_set("standard+id");
  std::vector<Element> diag = lower;
  diag.push_back(make_element({1, 1}));
  diag.push_back(make_element({-1, -1}));
  std::vector<Element> upper;
  for (int x = -1; x <= 1; ++x)
    for (int y = -1; y <= 1; ++y) upper.push_back(make_element({x, y}));
  std::vector<std::vector<Element>> factors;
  for (int i = 0; i <= 65; ++i) factors.push_back(i % 2 ? diag : lower);
  const auto seq = varying_products(z2, factors, lower, upper);

  // Independent product of point sets.
  std::set<std::pair<int, int>> acc;
  for (const auto& e : factors[0]) acc.insert({e.c[0], e.c[1]});
  bool same = seq.sizes[0] == acc.size();
  for (std::size_t n = 1; n < factors.size(); ++n) {
    std::set<std::pair<int, int>> next;
    for (auto [x, y] : acc)
      for (const auto& e : factors[n]) next.insert({x + e.c[0], y + e.c[1]});
    acc = std::move(next);
    same = same && seq.sizes[n] == acc.size();
  }
  o.require(same, "sizes match the direct point-set product");

  const auto ratios = folner_ratios(seq.sizes);
  std::vector<double> xs, ys;
  for (std::size_t n = 16; n <= 64; ++n) {
    xs.push_back(static_cast<double>(n));
    ys.push_back(to_double(ratios[n]));
  }
  const auto fit = power_law_fit(xs, ys);
  o.require(-fit.exponent > 0.5, "decay exponent > 0.5");
  o.note("ratio ~ " + fmt(std::exp(fit.log_constant)) + " n^-" + fmt(-fit.exponent));
  return o;
}

// 7. Dyadic certificate S(x,r_i) <= 2 C_D B(x,r_i) / 2^i.
Outcome dyadic() {
  Outcome o;
  struct Case {
    std::string name;
    std::vector<VolumeProfile> profiles;
    int i_max;
  };
  std::vector<Case> cases;
  LatticeModel z2(2), z3(3);
  HeisenbergModel h;
  {
    const auto b = lattice_graph(2, z2.generating_set("standard"), 512);
    cases.push_back({"Z2", {volume_profile(b.graph, 0, 512)}, 7});
  }
  {
    const auto b = lattice_graph(2, z2.generating_set("hex"), 512);
    cases.push_back({"Z2-hex", {volume_profile(b.graph, 0, 512)}, 7});
  }
  {
    const auto b = lattice_graph(3, z3.generating_set("standard"), 64);
    cases.push_back({"Z3", {volume_profile(b.graph, 0, 64)}, 4});
  }
  {
    const auto b = heisenberg_graph(h.generating_set("standard"), 32);
    cases.push_back({"H3", {volume_profile(b.graph, 0, 32)}, 3});
  }
  for (auto [a, bb] : {std::pair{2, 3}, std::pair{3, 2}}) {
    const auto chain = stretched_tree_chain({a, bb, 8});
    std::vector<Vertex> centers;
    for (const auto& blk : chain.blocks) {
      centers.push_back(blk.root);
      centers.push_back(blk.leaves.front());
    }
    cases.push_back({"tree(" + std::to_string(a) + "," + std::to_string(bb) + ")",
                     volume_profiles(chain.graph, centers, 512), 7});
  }
  {
    const auto s = stairway_strip(10);
    cases.push_back({"stairway", {s.induced_profile(s.origin, 512)}, 7});
  }
  for (const auto& c : cases) {
    const auto d = doubling_constant(c.profiles, Distance{2} << c.i_max);
    bool relaxed = true;
    for (const auto& p : c.profiles) relaxed = relaxed && dyadic_subsequence(p, d.value, c.i_max).all_certified_relaxed();
    o.require(relaxed, c.name);
    o.note(c.name + " i<=" + std::to_string(c.i_max) + " C_D=" + fmt(to_double(d.value)));
  }
  return o;
}

// 8. n S(0,n) / B(0,n) on Z^2, and the product-set analogue for a skew U.
Outcome abelian() {
  Outcome o;
  LatticeModel z2(2);
  const auto b = lattice_graph(2, z2.generating_set("standard"), 129);
  const auto p = volume_profile(b.graph, 0, 129);
  const auto chk = abelian_isop_check(p.ball, 128);
  o.require(chk.constant <= 3, "Z2 constant <= 3");
  const auto seq = product_powers(z2, z2.generating_set("tripod"), 129);
  const auto skew = abelian_isop_check(seq.sizes, 128);
  o.require(skew.constant <= 3 && skew.pass, "tripod constant bounded with flat trend");
  o.note("Z2 max=" + fmt(to_double(chk.constant)) + " tripod max=" + fmt(to_double(skew.constant)));
  return o;
}

// 9. Stairway strip: linear growth with large spheres.
Outcome stairway() {
  Outcome o;
  const auto s = stairway_strip(10);
  const auto p = s.induced_profile(s.origin, 1026);
  const auto fit = growth_exponent_fit(p.ball, 0, 1024);
  o.require(std::abs(fit.exponent - 1.0) <= 0.15, "exponent 1.0 +- 0.15");
  std::string spikes;
  for (int k = 4; k <= 9; ++k) {
    const Distance r = Distance{1} << k;
    o.require(p.sphere[r] >= static_cast<std::uint64_t>(r), "spike k=" + std::to_string(k));
    spikes += " " + std::to_string(p.sphere[r]);
  }
  o.note("exponent=" + fmt(fit.exponent) + " S(0,2^k), k=4..9:" + spikes);
  return o;
}

// 10. Ergodic averages against the closed form.
Outcome ergodic() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  LatticeModel z2(2);
  const auto action = rotation_preset("golden");
  const auto trace = ergodic_trace(action, observable("cos2pix"), {0.1, 0.2}, 200,
                                   z2.generating_set("standard"));
  o.require(trace.errors[200] < 0.05, "error at n=200");
  double worst = 0;
  for (std::size_t n = 0; n <= 100; ++n)
    worst = std::max(worst, std::abs(trace.values[n] - oracle::dirichlet_cos_average(0.1, action.theta1, n)));
  o.require(worst <= 1e-8, "closed form agreement");
  const auto flat = ergodic_trace(action, observable("const"), {0.1, 0.2}, 200,
                                  z2.generating_set("standard"));
  bool zero = true;
  for (double e : flat.errors) zero = zero && e == 0.0;
  o.require(zero, "constant observable exact");
  const double t = seconds_since(t0);
  o.require(t < 120, "runtime under 2 min");
  o.note("err(200)=" + fmt(trace.errors[200]) + " max|A_n - oracle|=" + fmt(worst));
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 11. Byte-identical reruns; nets and geodesics independent of threading.
Outcome determinism() {
  Outcome o;
  const auto root = std::filesystem::temp_directory_path() / "growth_acceptance";
  std::filesystem::remove_all(root);
  std::size_t compared = 0;
  for (const std::string name : {"theorem-zd", "counterexample-tree", "ergodic", "claims-5-3"}) {
    auto doc = recipe(name);
    if (name == "theorem-zd") doc["centers"] = {{"basepoints", {"origin"}}, {"sample", 6}};
    doc["seed"] = 2024;
    const auto config = parse_config(doc);
    const auto a = run_experiment(config, root / (name + "-a"));
    const auto b = run_experiment(config, root / (name + "-b"));
    o.require(a.files.size() == b.files.size(), name + " file list");
    for (std::size_t i = 0; i < a.files.size() && i < b.files.size(); ++i) {
      o.require(slurp(a.files[i]) == slurp(b.files[i]), a.files[i].filename().string());
      ++compared;
    }
  }

  LatticeModel z2(2);
  const auto ball = lattice_graph(2, z2.generating_set("hex"), 40);
  const Graph& g = ball.graph;
  struct Job {
    Annulus annulus;
    Distance k;
    Vertex y;
  };
  std::vector<Job> jobs;
  for (Distance inner = 0; inner < 30; inner += 3)
    jobs.push_back({{0, inner, inner + 6}, 1 + inner % 4, static_cast<Vertex>(inner * 97 + 5)});
  auto compute = [&](unsigned threads) {
    std::vector<std::vector<Vertex>> nets(jobs.size()), paths(jobs.size());
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t j = t; j < jobs.size(); j += threads) {
          nets[j] = separated_net(g, jobs[j].annulus, jobs[j].k);
          paths[j] = monotone_geodesic(g, 0, jobs[j].y).points;
        }
      });
    pool.clear();
    return std::pair{nets, paths};
  };
  const auto one = compute(1), four = compute(4), seven = compute(7);
  o.require(one == four && one == seven, "nets and geodesics across 1/4/7 threads");
  const std::vector<Vertex> centers{0, 100, 2000};
  o.require(volume_profiles(g, centers, 20, 1)[2].ball == volume_profiles(g, centers, 20, 3)[2].ball,
            "profiles across thread counts");
  o.note(std::to_string(compared) + " recipe outputs byte-identical; " + std::to_string(jobs.size()) +
         " nets/geodesics identical across threads");
  std::filesystem::remove_all(root);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"tree chain shell ratio and leaf balls", tree_chain},
      {"(3,2) chain doubling, witnesses, delta", remark_chain},
      {"shell pipeline on Z2 and H3", pipeline},
      {"exact oracles", oracles},
      {"shell inclusions on Z2", inclusions},
      {"varying products decay", varying},
      {"dyadic certificate", dyadic},
      {"abelian isoperimetry", abelian},
      {"stairway growth and spikes", stairway},
      {"ergodic averages", ergodic},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}

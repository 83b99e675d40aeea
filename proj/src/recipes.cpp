#include <map>

#include "growth/errors.hpp"
#include "growth/experiment.hpp"

namespace growth {

namespace {

// Bundled configs. Each description says which claim the run checks.
const std::map<std::string, const char*>& table() {
  static const std::map<std::string, const char*> recipes{
      {"theorem-zd", R"({
  "name": "theorem-zd",
  "description": "Shell-doubling pipeline on Z^2: alpha > 0 from shell ratios, S(0,n) <= C B(0,n) n^-delta with delta = log2(1+alpha) and a flat C trend, zero recursion-audit violations.",
  "space": {"family": "lattice", "d": 2, "generators": "standard", "radius": 64},
  "radius": 64,
  "analyses": {
    "shell": {"k_min": 5, "n_max": 59},
    "verify": {},
    "fit": {"expect": 2.0, "tolerance": 0.1}
  }
})"},
      {"theorem-heisenberg", R"({
  "name": "theorem-heisenberg",
  "description": "Shell-doubling pipeline on the discrete Heisenberg group (R = 32): alpha > 0, flat C trend at delta = log2(1+alpha), zero audit violations, growth exponent near 4.",
  "space": {"family": "heisenberg", "generators": "standard", "radius": 32},
  "radius": 32,
  "analyses": {
    "shell": {"k_min": 5, "n_max": 16},
    "verify": {},
    "fit": {"lo": 10, "hi": 32, "expect": 4.0, "tolerance": 0.15}
  }
})"},
      {"counterexample-tree", R"({
  "name": "counterexample-tree",
  "description": "Stretched-tree chain (a,b) = (2,3): at the block roots the shell B(x,2^k) minus B(x,2^(k-1)) carries at least 1/8 of B(x,2^k) for k = 3..7, while balls of radius 2^k at last-generation vertices stay below 8 * 3^k, so no uniform sphere bound S(x,r) <= C r^-delta B(x,r) holds.",
  "space": {"family": "tree-chain", "a": 2, "b": 3, "blocks": 8},
  "centers": {"basepoints": []},
  "analyses": {
    "counterexample": {"scales": [3, 4, 5, 6, 7]}
  }
})"},
      {"counterexample-remark-ab", R"({
  "name": "counterexample-remark-ab",
  "description": "Stretched-tree chain with a > b, (a,b) = (3,2): the doubling constant stays bounded (r <= 3^6 within twice the value at r <= 3^4), witnesses x_n have S(x_n,3^n) >= c 2^n with stable c for n = 3..6, and the measured delta is at most 1 - log 2 / log 3 + 0.1.",
  "space": {"family": "tree-chain", "a": 3, "b": 2, "blocks": 8},
  "centers": {"basepoints": [], "landmarks": true},
  "radius": 1458,
  "analyses": {
    "doubling": {"r_max": 729, "baseline_r_max": 81},
    "shell": {"k_min": 5, "n_max": 729, "records": false, "audit": [64, 128, 256, 512, 729]},
    "counterexample": {"scales": [3, 4, 5, 6]}
  }
})"},
      {"counterexample-stairway", R"({
  "name": "counterexample-stairway",
  "description": "Stairway strip with 10 levels in the induced Euclidean metric: linear volume growth (exponent 1.0 +- 0.15) yet spheres S(0,2^k) >= 2^k for k = 4..9, so the sphere bound fails without the doubling-type hypothesis; delta = 0.1 is recorded as failing the flat-trend test.",
  "space": {"family": "stairway", "levels": 10, "metric": "induced"},
  "radius": 1026,
  "analyses": {
    "fit": {"hi": 1024, "expect": 1.0, "tolerance": 0.15},
    "verify": {"radii": [16, 32, 64, 128, 256, 512, 1024], "delta": 0.1, "expect_pass": false},
    "counterexample": {"scales": [4, 5, 6, 7, 8, 9]}
  }
})"},
      {"dyadic", R"({
  "name": "dyadic",
  "description": "Dyadic selection on Z^2: for each i <= 7 the radius r_i in (2^i, 2^(i+1)] with the smallest sphere satisfies S(0,r_i) <= 2 C_D B(0,r_i) / 2^i.",
  "space": {"family": "lattice", "d": 2, "generators": "standard", "radius": 512},
  "radius": 512,
  "analyses": {
    "dyadic": {"i_max": 7}
  }
})"},
      {"abelian", R"({
  "name": "abelian",
  "description": "Abelian isoperimetry on Z^2: max over n <= 128 of n S(0,n) / B(0,n) is at most 3 with a flat trend, and n |U^(n+1) minus U^n| / |U^n| stays bounded for the non-symmetric set U = {0, e1, e2, -e1-e2}.",
  "space": {"family": "lattice", "d": 2, "generators": "standard", "radius": 129},
  "radius": 129,
  "analyses": {
    "abelian": {"n_max": 128, "bound": 3.0},
    "powers": {"model": "z2", "elements": [[0, 0], [1, 0], [0, 1], [-1, -1]], "n_max": 129, "isop": true}
  }
})"},
      {"ergodic", R"({
  "name": "ergodic",
  "description": "Ball averages of f(x,y) = cos 2 pi x along the golden rotation action of Z^2 from (0.1, 0.2) converge to the integral 0: error below 0.05 at n = 200.",
  "analyses": {
    "ergodic": {"observable": "cos2pix", "start": [0.1, 0.2], "n_max": 300, "rotation": "golden", "check_n": 200, "tolerance": 0.05}
  }
})"},
      {"claims-5-3", R"({
  "name": "claims-5-3",
  "description": "Shell inclusions on Z^2 with U = {0, +-e1, +-e2}: C(n,n+k) lies in C(n-k/2,n-k/2+1) U^(2k) and C(n-k/2,n-k/2+1) U^(k/4) lies in C(n-k,n) for k in {4,8,12}, k <= n <= 20; alternating varying products U_0 ... U_n have Folner ratios decaying faster than n^-0.5 on n = 16..64.",
  "analyses": {
    "inclusions": {"model": "z2", "generators": "standard+id", "n_max": 20, "ks": [4, 8, 12]},
    "powers": {
      "model": "z2",
      "factors": [[[0, 0], [1, 0], [-1, 0], [0, 1], [0, -1]],
                  [[0, 0], [1, 0], [-1, 0], [0, 1], [0, -1], [1, 1], [-1, -1]]],
      "k_lower": [[0, 0], [1, 0], [-1, 0], [0, 1], [0, -1]],
      "k_upper": [[-1, -1], [-1, 0], [-1, 1], [0, -1], [0, 0], [0, 1], [1, -1], [1, 0], [1, 1]],
      "n_max": 65,
      "fit_lo": 16,
      "fit_hi": 64,
      "min_decay": 0.5
    }
  }
})"},
  };
  return recipes;
}

}  // namespace

std::vector<std::string> recipe_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : table()) names.push_back(name);
  return names;
}

nlohmann::json recipe(const std::string& name) {
  const auto it = table().find(name);
  if (it == table().end()) throw InvalidInput("unknown recipe '" + name + "'");
  return nlohmann::json::parse(it->second);
}

}  // namespace growth

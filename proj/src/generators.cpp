#include "growth/generators.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "growth/errors.hpp"
#include "growth/group_walk.hpp"

namespace growth {

namespace {

void check_vertices(std::uint64_t count, std::size_t budget, const char* what) {
  if (count > budget) {
    throw BudgetExceeded("generators", count, budget, std::string(what) + " vertex count");
  }
}

}  // namespace

CayleyBall cayley_ball(const GroupModel& model, std::span<const Element> u, int radius,
                       std::size_t budget_vertices) {
  if (radius < 1) throw InvalidInput("Cayley ball radius must be >= 1");
  // Symmetrize and drop the identity; the identity would only add loops.
  std::vector<Element> steps;
  for (const auto& g : u) {
    if (g == Element{}) continue;
    steps.push_back(g);
    steps.push_back(model.invert(g));
  }
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
  require_generating(model, steps);

  CayleyBall ball;
  std::unordered_map<Code, Vertex> index;
  std::vector<Element> elements{Element{}};
  index.emplace(model.encode(Element{}), 0);
  ball.codes.push_back(model.encode(Element{}));
  ball.layer_start = {0, 1};
  for (int r = 1; r <= radius; ++r) {
    const Vertex lo = ball.layer_start[r - 1], hi = ball.layer_start[r];
    for (Vertex v = lo; v < hi; ++v) {
      for (const auto& s : steps) {
        const Element w = model.multiply(elements[v], s);
        const Code code = model.encode(w);
        if (index.try_emplace(code, static_cast<Vertex>(elements.size())).second) {
          elements.push_back(w);
          ball.codes.push_back(code);
          check_vertices(elements.size(), budget_vertices, model.name().c_str());
        }
      }
    }
    ball.layer_start.push_back(static_cast<Vertex>(elements.size()));
  }

  GraphBuilder builder(elements.size());
  for (Vertex v = 0; v < elements.size(); ++v) {
    for (const auto& s : steps) {
      auto it = index.find(model.encode(model.multiply(elements[v], s)));
      if (it != index.end() && v < it->second) builder.add_edge(v, it->second);
    }
  }
  builder.set_basepoint("origin", 0);
  ball.graph = std::move(builder).build();
  return ball;
}

CayleyBall lattice_graph(std::size_t d, std::span<const Element> u, int radius,
                         std::size_t budget_vertices) {
  LatticeModel model(d);
  return cayley_ball(model, u, radius, budget_vertices);
}

CayleyBall heisenberg_graph(std::span<const Element> u, int radius, std::size_t budget_vertices) {
  HeisenbergModel model;
  return cayley_ball(model, u, radius, budget_vertices);
}

std::uint64_t tree_chain_size(const TreeChainSpec& spec) {
  if (spec.a < 2 || spec.b < 2 || spec.blocks < 1) {
    throw InvalidInput("tree chain needs a >= 2, b >= 2 and at least one block");
  }
  // Block n: 2 (1 + sum_k b^k a^(n-k)) - b^n vertices; consecutive blocks share one.
  long double total = 1;
  for (int n = 1; n <= spec.blocks; ++n) {
    long double tree = 0;
    for (int k = 1; k <= n; ++k) tree += std::pow((long double)spec.b, k) * std::pow((long double)spec.a, n - k);
    total += 2 * tree - std::pow((long double)spec.b, n) + 1;
    if (total > 1e18L) throw BudgetExceeded("generators", static_cast<std::size_t>(-1), 0, "tree chain");
  }
  return static_cast<std::uint64_t>(total + 0.5L);
}

TreeChain stretched_tree_chain(const TreeChainSpec& spec, std::size_t budget_vertices) {
  const std::uint64_t expected = tree_chain_size(spec);
  check_vertices(expected, budget_vertices, "tree chain");

  TreeChain chain;
  chain.spec = spec;
  GraphBuilder builder;
  // Path of `length` unit edges from `from` to a vertex returned (fresh, or `to` if given).
  auto path = [&](Vertex from, std::uint64_t length, const Vertex* to,
                  std::vector<Vertex>* trace) {
    Vertex prev = from;
    for (std::uint64_t i = 1; i < length; ++i) {
      Vertex v = builder.add_vertex();
      builder.add_edge(prev, v);
      if (trace) trace->push_back(v);
      prev = v;
    }
    Vertex end = to ? *to : builder.add_vertex();
    builder.add_edge(prev, end);
    if (trace) trace->push_back(end);
    return end;
  };

  Vertex root = builder.add_vertex();
  for (int n = 1; n <= spec.blocks; ++n) {
    TreeBlock block;
    block.root = root;
    block.first_arm.push_back(root);
    // One copy of the stretched tree; `leaves` supplies the last generation
    // for the second copy.
    auto grow = [&](Vertex top, const std::vector<Vertex>* leaves, bool record_arm) {
      std::vector<Vertex> level{top}, next;
      for (int k = 1; k <= n; ++k) {
        std::uint64_t length = 1;
        for (int i = 0; i < n - k; ++i) length *= static_cast<std::uint64_t>(spec.a);
        next.clear();
        for (std::size_t p = 0; p < level.size(); ++p) {
          for (int c = 0; c < spec.b; ++c) {
            const Vertex* target = nullptr;
            if (k == n && leaves) target = &(*leaves)[next.size()];
            const bool arm = record_arm && k == 1 && c == 0;
            next.push_back(path(level[p], length, target, arm ? &block.first_arm : nullptr));
          }
        }
        level.swap(next);
      }
      return level;
    };
    block.leaves = grow(root, nullptr, true);
    block.coroot = builder.add_vertex();
    grow(block.coroot, &block.leaves, false);
    builder.set_basepoint("r_" + std::to_string(n), block.root);
    builder.set_basepoint("r'_" + std::to_string(n), block.coroot);
    builder.set_basepoint("leaf_" + std::to_string(n), block.leaves.front());
    root = block.coroot;
    chain.blocks.push_back(std::move(block));
  }
  if (builder.vertex_count() != expected) {
    throw std::logic_error("tree chain vertex count disagrees with its closed form");
  }
  chain.graph = std::move(builder).build();
  return chain;
}

Vertex sphere_witness(const TreeChain& chain, int n) {
  if (n < 1 || n + 1 > static_cast<int>(chain.blocks.size())) {
    throw InvalidInput("sphere witness for n = " + std::to_string(n) + " needs block " +
                       std::to_string(n + 1));
  }
  const std::uint64_t a = static_cast<std::uint64_t>(chain.spec.a);
  std::uint64_t an = 1;
  for (int i = 0; i < n; ++i) an *= a;
  const std::uint64_t depth = (an - 1) / (a - 1);  // r'_n to the last generation of block n
  const std::uint64_t pos = an + 1 - depth;
  const auto& arm = chain.blocks[static_cast<std::size_t>(n)].first_arm;
  if (pos >= arm.size()) throw std::logic_error("sphere witness beyond the arm");
  return arm[pos];
}

namespace {

// Midpoint-circle raster of the full circle of radius r about the origin.
std::vector<std::array<std::int32_t, 2>> circle_raster(std::int32_t r) {
  std::vector<std::array<std::int32_t, 2>> pts;
  std::int32_t x = r, y = 0, err = 1 - r;
  while (x >= y) {
    for (auto [px, py] : {std::array{x, y}, std::array{y, x}}) {
      pts.push_back({px, py});
      pts.push_back({-px, py});
      pts.push_back({px, -py});
      pts.push_back({-px, -py});
    }
    ++y;
    if (err < 0) {
      err += 2 * y + 1;
    } else {
      --x;
      err += 2 * (y - x) + 1;
    }
  }
  return pts;
}

}  // namespace

StairwayStrip stairway_strip(int levels, std::size_t budget_vertices) {
  if (levels < 0 || levels > 14) throw InvalidInput("stairway levels must be in 0..14");
  std::vector<std::array<std::int32_t, 2>> curve;
  auto run = [&](std::int32_t from, std::int32_t to) {
    const std::int32_t step = from < to ? 1 : -1;
    for (std::int32_t x = from; x != to + step; x += step) curve.push_back({x, 0});
  };
  run(0, 1);
  for (int k = 0; k <= levels; ++k) {
    const std::int32_t r = std::int32_t{1} << k;
    const bool upper = k % 2 == 0;
    for (auto p : circle_raster(r)) {
      if (upper ? p[1] >= 0 : p[1] <= 0) curve.push_back(p);
    }
    // Even k ends at (-r, 0), odd k at (r, 0); the run continues outward to
    // the start of the next half-circle.
    if (k < levels) run(upper ? -r : r, upper ? -2 * r : 2 * r);
  }

  std::vector<std::array<std::int32_t, 2>> pts;
  for (auto [x, y] : curve) {
    for (std::int32_t dx = -1; dx <= 1; ++dx)
      for (std::int32_t dy = -1; dy <= 1; ++dy) pts.push_back({x + dx, y + dy});
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  check_vertices(pts.size(), budget_vertices, "stairway");

  StairwayStrip strip;
  strip.levels = levels;
  GraphBuilder builder(pts.size());
  auto find = [&](std::int32_t x, std::int32_t y) -> std::int64_t {
    auto it = std::lower_bound(pts.begin(), pts.end(), std::array{x, y});
    return it != pts.end() && *it == std::array{x, y} ? it - pts.begin() : -1;
  };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto [x, y] = pts[i];
    for (auto [nx, ny] : {std::array{x + 1, y}, std::array{x, y + 1}}) {
      const auto j = find(nx, ny);
      if (j >= 0) builder.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
    }
  }
  strip.origin = static_cast<Vertex>(find(0, 0));
  builder.set_basepoint("origin", strip.origin);
  strip.graph = std::move(builder).build();
  strip.coords = std::move(pts);
  return strip;
}

VolumeProfile StairwayStrip::induced_profile(Vertex center, Distance radius) const {
  if (center >= coords.size()) throw InvalidInput("stairway center out of range");
  if (radius < 0) throw InvalidInput("negative profile radius");
  std::vector<std::int64_t> sq;
  sq.reserve(coords.size());
  const auto c = coords[center];
  for (const auto& p : coords) {
    const std::int64_t dx = p[0] - c[0], dy = p[1] - c[1];
    sq.push_back(dx * dx + dy * dy);
  }
  std::sort(sq.begin(), sq.end());
  std::vector<std::uint64_t> ball(static_cast<std::size_t>(radius) + 1);
  for (Distance r = 0; r <= radius; ++r) {
    const std::int64_t r2 = std::int64_t{r} * r;
    ball[r] = static_cast<std::uint64_t>(std::upper_bound(sq.begin(), sq.end(), r2) - sq.begin());
  }
  const bool exhausted = sq.back() <= std::int64_t{radius} * radius;
  return profile_from_balls(center, std::move(ball), exhausted);
}

ScaledLine scaled_line(int half_length) {
  if (half_length < 1) throw InvalidInput("scaled line needs half_length >= 1");
  const std::size_t n = 2 * static_cast<std::size_t>(half_length) + 1;
  GraphBuilder builder(n);
  for (Vertex v = 0; v + 1 < n; ++v) builder.add_edge(v, v + 1);
  ScaledLine line;
  line.center = static_cast<Vertex>(half_length);
  builder.set_basepoint("origin", line.center);
  line.graph = std::move(builder).build();
  line.members.resize(n);
  for (std::size_t v = 0; v < n; ++v) line.members[v] = (v % 2) == (line.center % 2);
  return line;
}

}  // namespace growth

#include "doctest.h"

#include <random>
#include <sstream>

#include "growth/errors.hpp"
#include "growth/generators.hpp"
#include "growth/graph.hpp"
#include "growth/space.hpp"
#include "oracles.hpp"

using namespace growth;

namespace {

struct RandomGraph {
  Graph graph;
  std::vector<std::vector<int>> adj;
};

// Connected random graph: a random spanning tree plus extra edges.
RandomGraph random_graph(std::size_t n, std::size_t extra, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::set<std::pair<int, int>> edges;
  for (std::size_t v = 1; v < n; ++v) {
    const int u = static_cast<int>(rng() % v);
    edges.insert({u, static_cast<int>(v)});
  }
  while (edges.size() < n - 1 + extra) {
    int u = static_cast<int>(rng() % n), v = static_cast<int>(rng() % n);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    edges.insert({u, v});
  }
  RandomGraph out;
  out.adj.resize(n);
  GraphBuilder b(n);
  for (auto [u, v] : edges) {
    b.add_edge(u, v);
    out.adj[u].push_back(v);
    out.adj[v].push_back(u);
  }
  b.set_basepoint("origin", 0);
  out.graph = std::move(b).build();
  return out;
}

}  // namespace

TEST_CASE("graph builder rejects malformed input") {
  GraphBuilder b(3);
  CHECK_THROWS_AS(b.add_edge(1, 1), InvalidInput);
  CHECK_THROWS_AS(b.add_edge(0, 7), InvalidInput);
  b.add_edge(0, 1);
  b.add_edge(1, 0);
  b.add_edge(1, 2);
  CHECK_THROWS_AS(std::move(b).build(), InvalidInput);

  GraphBuilder disconnected(3);
  disconnected.add_edge(0, 1);
  CHECK_THROWS_AS(std::move(disconnected).build(), InvalidInput);

  GraphBuilder single(1);
  const Graph g = std::move(single).build();
  CHECK(g.vertex_count() == 1);
  CHECK_THROWS_AS(g.basepoint("nowhere"), InvalidInput);
}

TEST_CASE("graph text format round-trips") {
  const auto rg = random_graph(40, 25, 7);
  std::stringstream ss;
  write_graph(ss, rg.graph);
  const Graph back = read_graph(ss);
  REQUIRE(back.vertex_count() == rg.graph.vertex_count());
  CHECK(back.edge_count() == rg.graph.edge_count());
  CHECK(back.basepoint("origin") == 0);
  for (Vertex v = 0; v < back.vertex_count(); ++v) {
    const auto a = back.neighbors(v), b = rg.graph.neighbors(v);
    CHECK(std::vector<Vertex>(a.begin(), a.end()) == std::vector<Vertex>(b.begin(), b.end()));
  }

  std::stringstream bad("vertices 2\nedge 0 5\n");
  CHECK_THROWS_AS(read_graph(bad), InvalidInput);
}

TEST_CASE("BFS distances and profiles agree with Floyd-Warshall") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const std::size_t n = 20 + 15 * seed;
    const auto rg = random_graph(n, n / 2, seed);
    const auto fw = oracle::floyd_warshall(rg.adj);
    for (Vertex x : {Vertex{0}, static_cast<Vertex>(n / 2), static_cast<Vertex>(n - 1)}) {
      const auto d = bfs_distances(rg.graph, x, 1000);
      for (Vertex y = 0; y < n; ++y) CHECK(d[y] == fw[x][y]);

      const Distance R = 6;
      const auto p = volume_profile(rg.graph, x, R);
      for (Distance r = 0; r <= R; ++r) {
        std::uint64_t count = 0;
        for (Vertex y = 0; y < n; ++y) count += fw[x][y] <= r;
        CHECK(p.ball[r] == count);
      }
      const auto cut = bfs_distances(rg.graph, x, 2);
      for (Vertex y = 0; y < n; ++y) CHECK(cut[y] == (fw[x][y] <= 2 ? fw[x][y] : kUnreached));
    }
  }
}

TEST_CASE("profiles do not depend on the thread count") {
  const auto rg = random_graph(180, 120, 99);
  std::vector<Vertex> centers;
  for (Vertex v = 0; v < 180; v += 7) centers.push_back(v);
  const auto one = volume_profiles(rg.graph, centers, 9, 1);
  const auto four = volume_profiles(rg.graph, centers, 9, 4);
  REQUIRE(one.size() == four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].center == centers[i]);
    CHECK(one[i].ball == four[i].ball);
    CHECK(one[i].sphere == four[i].sphere);
  }
}

TEST_CASE("profile_from_balls derives spheres and rejects decreasing input") {
  const auto p = profile_from_balls(0, {1, 5, 13, 25});
  CHECK(p.max_radius == 3);
  CHECK(p.sphere == std::vector<std::uint64_t>{4, 8, 12});
  CHECK(p.shell(1, 3) == 20);
  CHECK_THROWS_AS(profile_from_balls(0, {1, 5, 4}), InvalidInput);
  CHECK_THROWS_AS(profile_from_balls(0, {}), InvalidInput);
}

TEST_CASE("separated nets are separated and maximal") {
  for (std::uint64_t seed = 3; seed <= 8; ++seed) {
    const auto rg = random_graph(150, 60, seed);
    const auto fw = oracle::floyd_warshall(rg.adj);
    for (Distance k : {1, 2, 3}) {
      const Annulus a{0, 1, 6};
      const auto net = separated_net(rg.graph, a, k);
      for (std::size_t i = 0; i < net.size(); ++i) {
        CHECK(fw[0][net[i]] > a.inner);
        CHECK(fw[0][net[i]] <= a.outer);
        for (std::size_t j = i + 1; j < net.size(); ++j) CHECK(fw[net[i]][net[j]] > k);
      }
      for (Vertex y = 0; y < 150; ++y) {
        if (fw[0][y] <= a.inner || fw[0][y] > a.outer) continue;
        bool covered = false;
        for (Vertex z : net) covered = covered || fw[y][z] <= k;
        CHECK(covered);
      }
      CHECK(net == separated_net(rg.graph, a, k));
    }
  }
  const auto rg = random_graph(10, 3, 1);
  CHECK_THROWS_AS(separated_net(rg.graph, {0, 0, 2}, 0), InvalidInput);
}

TEST_CASE("monotone geodesics step away from x one unit at a time") {
  const auto rg = random_graph(120, 80, 5);
  const auto fw = oracle::floyd_warshall(rg.adj);
  for (Vertex y : {Vertex{17}, Vertex{64}, Vertex{119}}) {
    const auto chain = monotone_geodesic(rg.graph, 0, y);
    REQUIRE(chain.points.front() == 0);
    REQUIRE(chain.points.back() == y);
    CHECK(chain.points.size() == static_cast<std::size_t>(fw[0][y]) + 1);
    for (std::size_t i = 0; i < chain.points.size(); ++i) {
      CHECK(fw[0][chain.points[i]] == static_cast<int>(i));
      if (i > 0) CHECK(fw[chain.points[i - 1]][chain.points[i]] == 1);
    }
    CHECK(chain.points == monotone_geodesic(rg.graph, 0, y).points);
  }
}

TEST_CASE("property (M) constants") {
  const auto rg = random_graph(60, 30, 11);
  const std::vector<Vertex> centers{0, 10, 20};
  CHECK(property_m_constant(rg.graph, centers, 5) == 1);

  const auto line = scaled_line(12);
  const std::vector<Vertex> mid{line.center};
  CHECK(property_m_constant(line.graph, line.members, mid, 8) == 2);
  const std::vector<Vertex> odd{line.center + 1};
  CHECK_THROWS_AS(property_m_constant(line.graph, line.members, odd, 8), InvalidInput);

  GraphBuilder single(1);
  const Graph point = std::move(single).build();
  const std::vector<Vertex> zero{0};
  CHECK(property_m_constant(point, zero, 3) == 0);
}

TEST_CASE("seeded center sampling is reproducible") {
  const auto rg = random_graph(500, 100, 2);
  const std::vector<std::string> labels{"origin"};
  const auto a = sample_centers(rg.graph, labels, 20, 42);
  const auto b = sample_centers(rg.graph, labels, 20, 42);
  const auto c = sample_centers(rg.graph, labels, 20, 43);
  CHECK(a == b);
  CHECK(a != c);
  CHECK(a.front() == 0);
  CHECK(std::set<Vertex>(a.begin(), a.end()).size() == a.size());
  const std::vector<std::string> missing{"missing"};
  CHECK_THROWS_AS(sample_centers(rg.graph, missing, 0, 1), InvalidInput);
}

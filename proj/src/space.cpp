#include "growth/space.hpp"

#include <algorithm>
#include <random>
#include <thread>
#include <unordered_set>

#include "growth/errors.hpp"

namespace growth {

namespace {

void require_vertex(const Graph& graph, Vertex v, const char* what) {
  if (v >= graph.vertex_count()) {
    throw InvalidInput(std::string(what) + " " + std::to_string(v) +
                       " out of range (vertex count " + std::to_string(graph.vertex_count()) +
                       ")");
  }
}

// Level-synchronous BFS; calls visit(v, d) once per reached vertex in
// nondecreasing d.
template <typename Visit>
void bfs(const Graph& graph, Vertex center, Distance cutoff, std::vector<Distance>& dist,
         Visit&& visit) {
  std::vector<Vertex> frontier{center}, next;
  dist[center] = 0;
  visit(center, 0);
  for (Distance d = 1; d <= cutoff && !frontier.empty(); ++d) {
    next.clear();
    for (Vertex v : frontier) {
      for (Vertex w : graph.neighbors(v)) {
        if (dist[w] == kUnreached) {
          dist[w] = d;
          next.push_back(w);
          visit(w, d);
        }
      }
    }
    frontier.swap(next);
  }
}

}  // namespace

std::vector<Distance> bfs_distances(const Graph& graph, Vertex center, Distance cutoff) {
  require_vertex(graph, center, "center");
  if (cutoff < 0) throw InvalidInput("negative BFS cutoff");
  std::vector<Distance> dist(graph.vertex_count(), kUnreached);
  bfs(graph, center, cutoff, dist, [](Vertex, Distance) {});
  return dist;
}

VolumeProfile profile_from_balls(Vertex center, std::vector<std::uint64_t> ball, bool exhausted) {
  if (ball.empty()) throw InvalidInput("profile needs at least ball[0]");
  VolumeProfile p;
  p.center = center;
  p.max_radius = static_cast<Distance>(ball.size() - 1);
  p.sphere.resize(ball.size() - 1);
  for (std::size_t r = 0; r + 1 < ball.size(); ++r) {
    if (ball[r + 1] < ball[r]) throw InvalidInput("ball volumes must be nondecreasing");
    p.sphere[r] = ball[r + 1] - ball[r];
  }
  p.ball = std::move(ball);
  p.exhausted = exhausted;
  return p;
}

VolumeProfile volume_profile(const Graph& graph, Vertex center, Distance radius) {
  require_vertex(graph, center, "center");
  if (radius < 0) throw InvalidInput("negative profile radius");
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(radius) + 1, 0);
  std::vector<Distance> dist(graph.vertex_count(), kUnreached);
  bfs(graph, center, radius, dist, [&](Vertex, Distance d) { ++counts[d]; });
  for (std::size_t r = 1; r < counts.size(); ++r) counts[r] += counts[r - 1];
  // Exhausted iff nothing lies at distance radius + 1.
  bool exhausted = true;
  for (Vertex v = 0; v < graph.vertex_count() && exhausted; ++v) {
    if (dist[v] == radius) {
      for (Vertex w : graph.neighbors(v)) {
        if (dist[w] == kUnreached) {
          exhausted = false;
          break;
        }
      }
    }
  }
  return profile_from_balls(center, std::move(counts), exhausted);
}

std::vector<VolumeProfile> volume_profiles(const Graph& graph, std::span<const Vertex> centers,
                                           Distance radius, unsigned threads) {
  std::vector<VolumeProfile> out(centers.size());
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(centers.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < centers.size(); ++i) out[i] = volume_profile(graph, centers[i], radius);
    return out;
  }
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < centers.size(); i += threads) {
            out[i] = volume_profile(graph, centers[i], radius);
          }
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<Vertex> separated_net(const Graph& graph, const Annulus& annulus, Distance k) {
  require_vertex(graph, annulus.center, "annulus center");
  if (k < 1) throw InvalidInput("net separation k must be >= 1");
  if (annulus.outer <= annulus.inner) return {};
  const auto from_center = bfs_distances(graph, annulus.center, annulus.outer);

  std::vector<char> covered(graph.vertex_count(), 0);
  std::vector<Distance> scratch(graph.vertex_count(), kUnreached);
  std::vector<Vertex> touched;
  std::vector<Vertex> net;
  for (Vertex y = 0; y < graph.vertex_count(); ++y) {
    const Distance d = from_center[y];
    if (d == kUnreached || d <= annulus.inner || covered[y]) continue;
    net.push_back(y);
    touched.clear();
    bfs(graph, y, k, scratch, [&](Vertex v, Distance) {
      covered[v] = 1;
      touched.push_back(v);
    });
    for (Vertex v : touched) scratch[v] = kUnreached;
  }
  return net;
}

GeodesicChain monotone_geodesic(const Graph& graph, Vertex x, Vertex y) {
  require_vertex(graph, x, "vertex");
  require_vertex(graph, y, "vertex");
  GeodesicChain chain;
  chain.points.push_back(x);
  if (x == y) return chain;

  const auto to_y = bfs_distances(graph, y, static_cast<Distance>(graph.vertex_count()));
  if (to_y[x] == kUnreached) {
    throw InvalidInput("vertices " + std::to_string(x) + " and " + std::to_string(y) +
                       " are in different components");
  }
  Vertex current = x;
  while (current != y) {
    const Distance target = to_y[current] - 1;
    Vertex step = current;
    for (Vertex w : graph.neighbors(current)) {
      if (to_y[w] == target) {
        step = w;
        break;  // neighbors are sorted, so this is the lowest index
      }
    }
    chain.points.push_back(step);
    current = step;
  }
  chain.step_bound = 1;
  return chain;
}

namespace {

// d(y, {v : inside(v)}) by BFS from y, capped at `cap`.
template <typename Inside>
Distance distance_to_set(const Graph& graph, Vertex y, Distance cap, std::vector<Distance>& scratch,
                         Inside&& inside) {
  Distance found = kUnreached;
  std::vector<Vertex> touched;
  std::vector<Vertex> frontier{y}, next;
  scratch[y] = 0;
  touched.push_back(y);
  if (inside(y)) found = 0;
  for (Distance d = 1; d <= cap && found == kUnreached && !frontier.empty(); ++d) {
    next.clear();
    for (Vertex v : frontier) {
      for (Vertex w : graph.neighbors(v)) {
        if (scratch[w] != kUnreached) continue;
        scratch[w] = d;
        touched.push_back(w);
        next.push_back(w);
        if (inside(w)) found = d;
      }
    }
    frontier.swap(next);
  }
  for (Vertex v : touched) scratch[v] = kUnreached;
  return found;
}

Distance property_m_impl(const Graph& graph, const std::vector<bool>* members,
                         std::span<const Vertex> centers, Distance radius) {
  if (centers.empty()) throw InvalidInput("property (M) needs at least one center");
  auto is_member = [&](Vertex v) { return members == nullptr || (*members)[v]; };
  Distance worst = 0;
  std::vector<Distance> scratch(graph.vertex_count(), kUnreached);
  for (Vertex x : centers) {
    require_vertex(graph, x, "center");
    if (!is_member(x)) throw InvalidInput("center is not a member of the subspace");
    const auto dist = bfs_distances(graph, x, radius + 1);
    for (Vertex y = 0; y < graph.vertex_count(); ++y) {
      const Distance dy = dist[y];
      if (dy < 1 || !is_member(y)) continue;
      // y lies in S(x, dy - 1); the inner ball is B(x, dy - 1).
      const Distance r = dy - 1;
      bool adjacent = false;
      if (members == nullptr) {
        for (Vertex w : graph.neighbors(y)) {
          if (dist[w] != kUnreached && dist[w] <= r) {
            adjacent = true;
            break;
          }
        }
      }
      const Distance gap =
          adjacent ? 1 : distance_to_set(graph, y, dy, scratch, [&](Vertex v) {
            return is_member(v) && dist[v] != kUnreached && dist[v] <= r;
          });
      worst = std::max(worst, gap);
    }
  }
  return worst;
}

}  // namespace

Distance property_m_constant(const Graph& graph, std::span<const Vertex> centers, Distance radius) {
  return property_m_impl(graph, nullptr, centers, radius);
}

Distance property_m_constant(const Graph& graph, const std::vector<bool>& members,
                             std::span<const Vertex> centers, Distance radius) {
  if (members.size() != graph.vertex_count()) {
    throw InvalidInput("membership mask size does not match the graph");
  }
  return property_m_impl(graph, &members, centers, radius);
}

std::vector<Vertex> sample_centers(const Graph& graph, std::span<const std::string> labels,
                                   std::size_t extra, std::uint64_t seed) {
  std::vector<Vertex> out;
  std::unordered_set<Vertex> seen;
  for (const auto& label : labels) {
    Vertex v = graph.basepoint(label);
    if (seen.insert(v).second) out.push_back(v);
  }
  const std::size_t n = graph.vertex_count();
  extra = std::min(extra, n - std::min(n, seen.size()));
  std::mt19937_64 rng(seed);
  std::size_t added = 0;
  while (added < extra) {
    Vertex v = static_cast<Vertex>(rng() % n);
    if (seen.insert(v).second) {
      out.push_back(v);
      ++added;
    }
  }
  return out;
}

}  // namespace growth

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "growth/graph.hpp"

namespace growth {

/// Exact shortest-path distances from `center`. Entry v holds d(center, v) when
/// it is at most `cutoff`, and kUnreached otherwise.
std::vector<Distance> bfs_distances(const Graph& graph, Vertex center, Distance cutoff);

/**
 * Ball and 1-sphere volumes around one center.
 *
 * ball[r] = |B(center, r)| for r = 0..max_radius, and
 * sphere[r] = |B(center, r + 1)| - |B(center, r)| for r < max_radius.
 */
struct VolumeProfile {
  Vertex center = 0;
  Distance max_radius = 0;
  std::vector<std::uint64_t> ball;
  std::vector<std::uint64_t> sphere;
  /// True when the search ran out of vertices before max_radius.
  bool exhausted = false;

  /// c_{lo,hi} = |B(center, hi)| - |B(center, lo)|.
  std::uint64_t shell(Distance lo, Distance hi) const { return ball[hi] - ball[lo]; }
};

/// Builds a profile from ball counts alone; used by product-set and embedded
/// spaces that share the analysis code with graphs.
VolumeProfile profile_from_balls(Vertex center, std::vector<std::uint64_t> ball,
                                 bool exhausted = false);

VolumeProfile volume_profile(const Graph& graph, Vertex center, Distance radius);

/// One profile per center. Work is split over `threads` workers; the result is
/// ordered like `centers` and does not depend on the thread count.
std::vector<VolumeProfile> volume_profiles(const Graph& graph, std::span<const Vertex> centers,
                                           Distance radius, unsigned threads = 1);

/// {y : inner < d(center, y) <= outer}
struct Annulus {
  Vertex center = 0;
  Distance inner = 0;
  Distance outer = 0;
};

/**
 * Maximal k-separated family in an annulus: points pairwise farther than k
 * apart, with every annulus vertex within k of a chosen point. Greedy over
 * ascending vertex index, so the output is deterministic.
 */
std::vector<Vertex> separated_net(const Graph& graph, const Annulus& annulus, Distance k);

/// Chain x = points.front(), ..., points.back() = y whose distance from x
/// grows by exactly one per step.
struct GeodesicChain {
  std::vector<Vertex> points;
  Distance step_bound = 0;
};

/// Each step enters B(y, d(y, current) - 1) through the lowest-index neighbor.
/// Throws InvalidInput when x and y lie in different components.
GeodesicChain monotone_geodesic(const Graph& graph, Vertex x, Vertex y);

/// max over sampled x, r <= radius and y in S(x, r) of d(y, B(x, r)).
Distance property_m_constant(const Graph& graph, std::span<const Vertex> centers,
                             Distance radius);

/// Same constant for the metric subspace `members` of `graph`, with distances
/// inherited from the whole graph. Centers must be members.
Distance property_m_constant(const Graph& graph, const std::vector<bool>& members,
                             std::span<const Vertex> centers, Distance radius);

/// Basepoints named in `labels` (in that order), followed by `extra` distinct
/// vertices drawn from std::mt19937_64 seeded by `seed` (raw output modulo the
/// vertex count, so the draw is identical across standard libraries).
std::vector<Vertex> sample_centers(const Graph& graph, std::span<const std::string> labels,
                                   std::size_t extra, std::uint64_t seed);

}  // namespace growth

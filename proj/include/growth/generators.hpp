#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "growth/graph.hpp"
#include "growth/group_model.hpp"
#include "growth/space.hpp"

namespace growth {

inline constexpr std::size_t kDefaultVertexBudget = 20'000'000;

/// Word ball of a group as a graph. Vertex 0 is the identity; vertices are
/// numbered layer by layer, and codes[v] is the canonical code of vertex v.
struct CayleyBall {
  Graph graph;
  std::vector<Code> codes;
  /// First vertex of each word-length layer, plus one past the end.
  std::vector<Vertex> layer_start;
};

/**
 * Ball of radius R in the Cayley graph of `model` for the symmetrized set
 * U ∪ U^-1 (the identity, if present, adds no edge). Graph distance from the
 * origin equals word length on every vertex. Throws NotGenerating when U does
 * not generate, BudgetExceeded past `budget_vertices`.
 */
CayleyBall cayley_ball(const GroupModel& model, std::span<const Element> u, int radius,
                       std::size_t budget_vertices = kDefaultVertexBudget);

/// cayley_ball on Z^d.
CayleyBall lattice_graph(std::size_t d, std::span<const Element> u, int radius,
                         std::size_t budget_vertices = kDefaultVertexBudget);

/// cayley_ball on H3(Z).
CayleyBall heisenberg_graph(std::span<const Element> u, int radius,
                            std::size_t budget_vertices = kDefaultVertexBudget);

struct TreeChainSpec {
  int a = 2;       // edge-stretch base
  int b = 3;       // valence
  int blocks = 1;  // number of doubled trees chained together
};

/// Per-block landmarks, block n = 1..blocks stored at index n - 1.
struct TreeBlock {
  Vertex root = 0;    // r_n
  Vertex coroot = 0;  // r'_n, shared with r_{n+1}
  /// The b^n glued last-generation vertices, in address order.
  std::vector<Vertex> leaves;
  /// Path from r_n along the first generation-1 arm of the first copy:
  /// first_arm[0] = r_n, first_arm.back() is the first generation-1 vertex.
  std::vector<Vertex> first_arm;
};

struct TreeChain {
  TreeChainSpec spec;
  Graph graph;
  std::vector<TreeBlock> blocks;
};

/// Vertex count of the chain, computed without building it.
std::uint64_t tree_chain_size(const TreeChainSpec& spec);

/**
 * Block n is two copies of the b-ary tree of depth n whose generation-k
 * edges are paths of a^(n-k) unit edges, glued along their last generation
 * (matching leaves with equal root-to-leaf address). Block n's second root
 * is block n+1's root. Basepoints: "r_n", "r'_n" and "leaf_n" (first leaf).
 */
TreeChain stretched_tree_chain(const TreeChainSpec& spec,
                               std::size_t budget_vertices = kDefaultVertexBudget);

/**
 * The vertex on the first generation-1 arm of block n+1 at distance
 * a^n + 1 - (a^n - 1)/(a - 1) from r_{n+1}. Its distance to each of the b^n
 * last-generation vertices of block n is exactly a^n + 1, so all of them lie
 * in S(x, a^n). Throws InvalidInput when block n+1 is absent.
 */
Vertex sphere_witness(const TreeChain& chain, int n);

/**
 * Grid discretization of a stairway curve in the plane: half-circles of
 * radius 2^k (k = 0..K, upper for even k, lower for odd k) joined by runs
 * along the x-axis, thickened to every lattice point within sup-distance 1.
 * The graph is the 4-neighbour grid on those points and is used for
 * connectivity and the intrinsic metric; the Euclidean distance of the plane
 * gives the induced metric.
 */
struct StairwayStrip {
  int levels = 0;
  Graph graph;
  std::vector<std::array<std::int32_t, 2>> coords;
  Vertex origin = 0;

  /// ball[r] = #{p : |p - center| <= r} in the Euclidean metric of the plane.
  VolumeProfile induced_profile(Vertex center, Distance radius) const;
};

StairwayStrip stairway_strip(int levels, std::size_t budget_vertices = kDefaultVertexBudget);

/// Z with every distance doubled: a path on 2n+1 vertices whose even-position
/// vertices form the subspace. center is the middle vertex.
struct ScaledLine {
  Graph graph;
  std::vector<bool> members;
  Vertex center = 0;
};

ScaledLine scaled_line(int half_length);

}  // namespace growth

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace growth {

using Vertex = std::uint32_t;
using Distance = std::int32_t;

inline constexpr Distance kUnreached = -1;

/**
 * Undirected unit-edge graph in compressed adjacency form, with named
 * basepoints. Carries the shortest-path metric and counting measure.
 *
 * Immutable once built; every member function is const and safe to call
 * from several threads at once. Construct through GraphBuilder or read_graph.
 */
class Graph {
 public:
  Graph() = default;

  std::size_t vertex_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return targets_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  const std::map<std::string, Vertex>& basepoints() const { return basepoints_; }
  bool has_basepoint(const std::string& label) const { return basepoints_.contains(label); }
  /// Throws InvalidInput naming the label when it is absent.
  Vertex basepoint(const std::string& label) const;

 private:
  friend class GraphBuilder;

  std::vector<std::size_t> offsets_;
  std::vector<Vertex> targets_;
  std::map<std::string, Vertex> basepoints_;
};

/// Accumulates vertices and edges, then freezes them into a validated Graph.
class GraphBuilder {
 public:
  explicit GraphBuilder(std::size_t vertex_count = 0) : adjacency_(vertex_count) {}

  Vertex add_vertex();
  std::size_t vertex_count() const { return adjacency_.size(); }

  /// Rejects self-loops and out-of-range endpoints immediately; duplicates are
  /// rejected by build().
  void add_edge(Vertex u, Vertex v);
  void set_basepoint(const std::string& label, Vertex v);

  /// Sorts adjacency lists and runs validate(); throws InvalidInput on any
  /// violated invariant. `require_connected` is off only for loader diagnostics.
  Graph build(bool require_connected = true) &&;

 private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::map<std::string, Vertex> basepoints_;
};

/// Checks symmetry, absence of self-loops and duplicates, basepoint range and
/// (optionally) connectivity. Throws InvalidInput describing the first failure.
void validate(const Graph& graph, bool require_connected = true);

bool is_connected(const Graph& graph);

/// Text format: `vertices N`, then `edge u v` lines, then `basepoint LABEL v`.
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& graph);

}  // namespace growth

#include "growth/graph.hpp"

#include <algorithm>
#include <optional>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "growth/errors.hpp"

namespace growth {

Vertex Graph::basepoint(const std::string& label) const {
  auto it = basepoints_.find(label);
  if (it == basepoints_.end()) {
    throw InvalidInput("unknown basepoint label '" + label + "'");
  }
  return it->second;
}

Vertex GraphBuilder::add_vertex() {
  adjacency_.emplace_back();
  return static_cast<Vertex>(adjacency_.size() - 1);
}

void GraphBuilder::add_edge(Vertex u, Vertex v) {
  if (u >= adjacency_.size() || v >= adjacency_.size()) {
    throw InvalidInput("edge " + std::to_string(u) + " " + std::to_string(v) +
                       " has an endpoint out of range (vertex count " +
                       std::to_string(adjacency_.size()) + ")");
  }
  if (u == v) {
    throw InvalidInput("self-loop at vertex " + std::to_string(u));
  }
  adjacency_[u].push_back(v);
  adjacency_[v].push_back(u);
}

void GraphBuilder::set_basepoint(const std::string& label, Vertex v) {
  if (v >= adjacency_.size()) {
    throw InvalidInput("basepoint '" + label + "' out of range");
  }
  basepoints_[label] = v;
}

Graph GraphBuilder::build(bool require_connected) && {
  Graph g;
  g.offsets_.reserve(adjacency_.size() + 1);
  g.offsets_.push_back(0);
  std::size_t total = 0;
  for (auto& list : adjacency_) total += list.size();
  g.targets_.reserve(total);
  for (std::size_t v = 0; v < adjacency_.size(); ++v) {
    auto& list = adjacency_[v];
    std::sort(list.begin(), list.end());
    if (auto dup = std::adjacent_find(list.begin(), list.end()); dup != list.end()) {
      throw InvalidInput("duplicate edge " + std::to_string(v) + " " + std::to_string(*dup));
    }
    g.targets_.insert(g.targets_.end(), list.begin(), list.end());
    g.offsets_.push_back(g.targets_.size());
    list.clear();
    list.shrink_to_fit();
  }
  g.basepoints_ = std::move(basepoints_);
  validate(g, require_connected);
  return g;
}

bool is_connected(const Graph& graph) {
  const std::size_t n = graph.vertex_count();
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : graph.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n;
}

void validate(const Graph& graph, bool require_connected) {
  const std::size_t n = graph.vertex_count();
  for (Vertex v = 0; v < n; ++v) {
    auto nbrs = graph.neighbors(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      Vertex w = nbrs[i];
      if (w >= n) throw InvalidInput("neighbor index out of range at vertex " + std::to_string(v));
      if (w == v) throw InvalidInput("self-loop at vertex " + std::to_string(v));
      if (i > 0 && nbrs[i - 1] >= w) {
        throw InvalidInput("unsorted or duplicate adjacency at vertex " + std::to_string(v));
      }
      auto back = graph.neighbors(w);
      if (!std::binary_search(back.begin(), back.end(), v)) {
        throw InvalidInput("asymmetric edge " + std::to_string(v) + " -> " + std::to_string(w));
      }
    }
  }
  for (const auto& [label, v] : graph.basepoints()) {
    if (v >= n) throw InvalidInput("basepoint '" + label + "' out of range");
  }
  if (require_connected && !is_connected(graph)) {
    throw InvalidInput("graph is not connected");
  }
}

namespace {

[[noreturn]] void parse_error(std::size_t line_no, const std::string& msg) {
  throw InvalidInput("graph file line " + std::to_string(line_no) + ": " + msg);
}

}  // namespace

Graph read_graph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<GraphBuilder> builder;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string keyword;
    if (!(fields >> keyword) || keyword.starts_with('#')) continue;
    if (keyword == "vertices") {
      long long n = -1;
      if (builder || !(fields >> n) || n < 0) parse_error(line_no, "bad vertices line");
      builder.emplace(static_cast<std::size_t>(n));
    } else if (keyword == "edge") {
      long long u = -1, v = -1;
      if (!builder) parse_error(line_no, "edge before vertices line");
      if (!(fields >> u >> v) || u < 0 || v < 0) parse_error(line_no, "bad edge line");
      try {
        builder->add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
      } catch (const InvalidInput& e) {
        parse_error(line_no, e.what());
      }
    } else if (keyword == "basepoint") {
      std::string label;
      long long v = -1;
      if (!builder) parse_error(line_no, "basepoint before vertices line");
      if (!(fields >> label >> v) || v < 0) parse_error(line_no, "bad basepoint line");
      try {
        builder->set_basepoint(label, static_cast<Vertex>(v));
      } catch (const InvalidInput& e) {
        parse_error(line_no, e.what());
      }
    } else {
      parse_error(line_no, "unknown keyword '" + keyword + "'");
    }
  }
  if (!builder) throw InvalidInput("graph file has no vertices line");
  return std::move(*builder).build();
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open graph file '" + path + "'");
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& graph) {
  out << "vertices " << graph.vertex_count() << '\n';
  for (Vertex v = 0; v < graph.vertex_count(); ++v) {
    for (Vertex w : graph.neighbors(v)) {
      if (v < w) out << "edge " << v << ' ' << w << '\n';
    }
  }
  for (const auto& [label, v] : graph.basepoints()) {
    out << "basepoint " << label << ' ' << v << '\n';
  }
}

}  // namespace growth

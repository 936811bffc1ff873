#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace prar {

using Node = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  Node u;  // u < v
  Node v;
};

// Incident edge as seen from one endpoint.
struct Incidence {
  Node neighbor;
  EdgeId edge;
};

class GraphError : public std::invalid_argument {
 public:
  enum class Kind { node_out_of_range, self_loop, duplicate_edge, bad_generator, bad_format, length_mismatch };

  GraphError(Kind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

// Undirected simple graph. Immutable after construction.
//
// Edge ids are dense and follow the lexicographic order of the (u, v) pairs
// with u < v. Incidence lists are sorted by neighbor id, which makes them
// sorted by edge id as well.
class Graph {
 public:
  Graph() = default;

  static Graph build(std::size_t node_count, std::span<const std::pair<Node, Node>> edges);

  std::size_t node_count() const noexcept { return incidence_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::span<const Incidence> incident(Node v) const { return incidence_[v]; }
  std::size_t degree(Node v) const { return incidence_[v].size(); }
  std::size_t max_degree() const noexcept { return max_degree_; }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const noexcept { return edges_; }

  std::vector<Node> neighbors(Node v) const;
  bool adjacent(Node a, Node b) const { return find_edge(a, b) != kNoEdge; }
  EdgeId find_edge(Node a, Node b) const;

  static constexpr EdgeId kNoEdge = static_cast<EdgeId>(-1);

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  std::vector<std::vector<Incidence>> incidence_;
  std::vector<Edge> edges_;
  std::size_t max_degree_ = 0;
};

bool operator==(const Graph& a, const Graph& b);

Graph build_graph(std::size_t node_count, std::span<const std::pair<Node, Node>> edges);

Graph make_grid(std::size_t rows, std::size_t cols);
Graph make_cycle(std::size_t n);
Graph make_path(std::size_t n);
Graph make_complete(std::size_t n);

// Parses "grid:RxC", "cycle:N", "path:N", "complete:N" and "file:PATH".
Graph parse_graph_spec(const std::string& spec);

// Edge-list text format: "n m" header, then m lines "i j"; '#' lines are comments.
Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);

std::size_t max_degree(const Graph& g);

// Components of (V, {e : edge_bits[e] != 0}). Isolated nodes count.
std::size_t count_components(const Graph& g, std::span<const std::uint8_t> edge_bits);
std::size_t count_components(const Graph& g);

bool is_connected(const Graph& g);

// Union-find with path halving and union by size.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n);

  std::size_t find(std::size_t x);
  bool unite(std::size_t a, std::size_t b);
  std::size_t set_count() const noexcept { return sets_; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::size_t sets_;
};

}  // namespace prar

#include "prar/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace prar {

namespace {

std::size_t parse_size(const std::string& text, const std::string& context) {
  std::size_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw GraphError(GraphError::Kind::bad_generator, "invalid number '" + text + "' in " + context);
  }
  return value;
}

}  // namespace

Graph Graph::build(std::size_t node_count, std::span<const std::pair<Node, Node>> edges) {
  std::vector<Edge> canon;
  canon.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    if (a >= node_count || b >= node_count) {
      throw GraphError(GraphError::Kind::node_out_of_range,
                       "edge (" + std::to_string(a) + "," + std::to_string(b) + ") references a node outside [0," +
                           std::to_string(node_count) + ")");
    }
    if (a == b) {
      throw GraphError(GraphError::Kind::self_loop, "self-loop at node " + std::to_string(a));
    }
    canon.push_back(Edge{std::min(a, b), std::max(a, b)});
  }
  std::sort(canon.begin(), canon.end(), [](const Edge& x, const Edge& y) {
    return x.u != y.u ? x.u < y.u : x.v < y.v;
  });
  for (std::size_t i = 1; i < canon.size(); ++i) {
    if (canon[i].u == canon[i - 1].u && canon[i].v == canon[i - 1].v) {
      throw GraphError(GraphError::Kind::duplicate_edge,
                       "duplicate edge (" + std::to_string(canon[i].u) + "," + std::to_string(canon[i].v) + ")");
    }
  }

  Graph g;
  g.incidence_.resize(node_count);
  for (EdgeId id = 0; id < canon.size(); ++id) {
    g.incidence_[canon[id].u].push_back({canon[id].v, id});
    g.incidence_[canon[id].v].push_back({canon[id].u, id});
  }
  for (auto& list : g.incidence_) {
    std::sort(list.begin(), list.end(), [](const Incidence& x, const Incidence& y) { return x.neighbor < y.neighbor; });
    g.max_degree_ = std::max(g.max_degree_, list.size());
  }
  g.edges_ = std::move(canon);
  return g;
}

std::vector<Node> Graph::neighbors(Node v) const {
  std::vector<Node> out;
  out.reserve(incidence_[v].size());
  for (const auto& inc : incidence_[v]) out.push_back(inc.neighbor);
  return out;
}

EdgeId Graph::find_edge(Node a, Node b) const {
  if (a >= node_count() || b >= node_count()) return kNoEdge;
  const auto& list = incidence_[a];
  auto it = std::lower_bound(list.begin(), list.end(), b,
                             [](const Incidence& inc, Node key) { return inc.neighbor < key; });
  return (it != list.end() && it->neighbor == b) ? it->edge : kNoEdge;
}

bool operator==(const Graph& a, const Graph& b) {
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) return false;
  for (std::size_t i = 0; i < a.edges_.size(); ++i) {
    if (a.edges_[i].u != b.edges_[i].u || a.edges_[i].v != b.edges_[i].v) return false;
  }
  return true;
}

Graph build_graph(std::size_t node_count, std::span<const std::pair<Node, Node>> edges) {
  return Graph::build(node_count, edges);
}

Graph make_grid(std::size_t rows, std::size_t cols) {
  if (rows < 1 || cols < 1) {
    throw GraphError(GraphError::Kind::bad_generator, "grid dimensions must be at least 1");
  }
  std::vector<std::pair<Node, Node>> edges;
  edges.reserve(rows * (cols - 1) + cols * (rows - 1));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const auto v = static_cast<Node>(r * cols + c);
      if (c + 1 < cols) edges.emplace_back(v, v + 1);
      if (r + 1 < rows) edges.emplace_back(v, static_cast<Node>(v + cols));
    }
  }
  return Graph::build(rows * cols, edges);
}

Graph make_cycle(std::size_t n) {
  if (n < 3) throw GraphError(GraphError::Kind::bad_generator, "cycle needs at least 3 nodes");
  std::vector<std::pair<Node, Node>> edges;
  edges.reserve(n);
  for (std::size_t i = 0; i < n; ++i) edges.emplace_back(static_cast<Node>(i), static_cast<Node>((i + 1) % n));
  return Graph::build(n, edges);
}

Graph make_path(std::size_t n) {
  if (n < 1) throw GraphError(GraphError::Kind::bad_generator, "path needs at least 1 node");
  std::vector<std::pair<Node, Node>> edges;
  edges.reserve(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(static_cast<Node>(i), static_cast<Node>(i + 1));
  return Graph::build(n, edges);
}

Graph make_complete(std::size_t n) {
  if (n < 1) throw GraphError(GraphError::Kind::bad_generator, "complete graph needs at least 1 node");
  std::vector<std::pair<Node, Node>> edges;
  edges.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(static_cast<Node>(i), static_cast<Node>(j));
  }
  return Graph::build(n, edges);
}

Graph parse_graph_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw GraphError(GraphError::Kind::bad_generator, "graph spec '" + spec + "' lacks a ':'");
  }
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  if (kind == "grid") {
    const auto x = arg.find('x');
    if (x == std::string::npos) throw GraphError(GraphError::Kind::bad_generator, "grid spec must be grid:RxC");
    return make_grid(parse_size(arg.substr(0, x), spec), parse_size(arg.substr(x + 1), spec));
  }
  if (kind == "cycle") return make_cycle(parse_size(arg, spec));
  if (kind == "path") return make_path(parse_size(arg, spec));
  if (kind == "complete") return make_complete(parse_size(arg, spec));
  if (kind == "file") {
    std::ifstream in(arg);
    if (!in) throw GraphError(GraphError::Kind::bad_format, "cannot open edge list '" + arg + "'");
    return read_edge_list(in);
  }
  throw GraphError(GraphError::Kind::bad_generator, "unknown graph kind '" + kind + "'");
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  bool have_header = false;
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<std::pair<Node, Node>> edges;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    long long a = 0;
    long long b = 0;
    std::string extra;
    if (!(fields >> a >> b) || (fields >> extra) || a < 0 || b < 0) {
      throw GraphError(GraphError::Kind::bad_format, "malformed edge list line " + std::to_string(line_no));
    }
    if (!have_header) {
      n = static_cast<std::size_t>(a);
      m = static_cast<std::size_t>(b);
      have_header = true;
      edges.reserve(m);
    } else {
      edges.emplace_back(static_cast<Node>(a), static_cast<Node>(b));
    }
  }
  if (!have_header) throw GraphError(GraphError::Kind::bad_format, "edge list is missing the 'n m' header");
  if (edges.size() != m) {
    throw GraphError(GraphError::Kind::bad_format, "edge list header announces " + std::to_string(m) +
                                                       " edges but " + std::to_string(edges.size()) + " were given");
  }
  return Graph::build(n, edges);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.node_count() << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

std::size_t max_degree(const Graph& g) { return g.max_degree(); }

std::size_t count_components(const Graph& g, std::span<const std::uint8_t> edge_bits) {
  if (edge_bits.size() != g.edge_count()) {
    throw GraphError(GraphError::Kind::length_mismatch, "edge bit vector has length " +
                                                            std::to_string(edge_bits.size()) + ", graph has " +
                                                            std::to_string(g.edge_count()) + " edges");
  }
  DisjointSets sets(g.node_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (edge_bits[e] != 0) sets.unite(g.edge(e).u, g.edge(e).v);
  }
  return sets.set_count();
}

std::size_t count_components(const Graph& g) {
  std::vector<std::uint8_t> all(g.edge_count(), 1);
  return count_components(g, all);
}

bool is_connected(const Graph& g) { return g.node_count() <= 1 || count_components(g) == 1; }

DisjointSets::DisjointSets(std::size_t n) : parent_(n), size_(n, 1), sets_(n) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSets::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool DisjointSets::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  --sets_;
  return true;
}

}  // namespace prar

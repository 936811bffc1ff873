#include "prar/wilson.hpp"

#include <ostream>

namespace prar {

RootedTree wilson_sample(const Graph& g, Node root, RngStream& rng) {
  const std::size_t n = g.node_count();
  if (root >= n) throw GraphError(GraphError::Kind::node_out_of_range, "root is not a node of the graph");
  if (!is_connected(g)) throw GraphError(GraphError::Kind::bad_format, "graph is disconnected; no spanning tree");

  RootedTree tree{root, std::vector<Node>(n, RootedTree::kNoParent)};
  std::vector<std::uint8_t> in_tree(n, 0);
  in_tree[root] = 1;

  // path holds the current loop-erased walk; position[v] is v's index on it.
  constexpr std::size_t kOffPath = static_cast<std::size_t>(-1);
  std::vector<std::size_t> position(n, kOffPath);
  std::vector<Node> path;

  for (Node start = 0; start < n; ++start) {
    if (in_tree[start]) continue;
    path.assign(1, start);
    position[start] = 0;
    for (;;) {
      const Node here = path.back();
      const auto incident = g.incident(here);
      const Node next = incident[rng.uniform_index(incident.size())].neighbor;
      if (in_tree[next]) {
        for (std::size_t i = 0; i + 1 < path.size(); ++i) tree.parent[path[i]] = path[i + 1];
        tree.parent[path.back()] = next;
        for (Node v : path) {
          in_tree[v] = 1;
          position[v] = kOffPath;
        }
        break;
      }
      if (position[next] != kOffPath) {
        // Pop the loop next -> ... -> here.
        while (path.back() != next) {
          position[path.back()] = kOffPath;
          path.pop_back();
        }
        continue;
      }
      position[next] = path.size();
      path.push_back(next);
    }
  }
  return tree;
}

bool is_rooted_tree(const Graph& g, const RootedTree& t) {
  const std::size_t n = g.node_count();
  if (t.root >= n || t.parent.size() != n || t.parent[t.root] != RootedTree::kNoParent) return false;
  for (Node v = 0; v < n; ++v) {
    if (v == t.root) continue;
    if (t.parent[v] >= n || !g.adjacent(v, t.parent[v])) return false;
  }
  // 0 unvisited, 1 on the current chain, 2 known to reach the root.
  std::vector<std::uint8_t> state(n, 0);
  state[t.root] = 2;
  std::vector<Node> chain;
  for (Node v = 0; v < n; ++v) {
    Node cur = v;
    chain.clear();
    while (state[cur] == 0) {
      state[cur] = 1;
      chain.push_back(cur);
      cur = t.parent[cur];
    }
    if (state[cur] == 1) return false;
    for (Node c : chain) state[c] = 2;
  }
  return true;
}

void write_tree(std::ostream& out, const RootedTree& t) {
  out << "root " << t.root << '\n';
  for (Node v = 0; v < t.parent.size(); ++v) {
    if (v != t.root) out << v << ' ' << t.parent[v] << '\n';
  }
}

}  // namespace prar

#pragma once

#include <iosfwd>
#include <vector>

#include "prar/graph.hpp"
#include "prar/random.hpp"

namespace prar {

// Spanning tree directed toward `root`: parent[v] is the head of v's single
// outgoing arc. parent[root] is kNoParent.
struct RootedTree {
  static constexpr Node kNoParent = static_cast<Node>(-1);

  Node root = 0;
  std::vector<Node> parent;

  friend bool operator==(const RootedTree&, const RootedTree&) = default;
  friend auto operator<=>(const RootedTree&, const RootedTree&) = default;
};

// Uniform rooted spanning tree by loop-erased random walks (cycle popping).
// Walks start from unvisited nodes in ascending id order and stop at the
// root or at the tree built so far. Throws GraphError on a disconnected graph.
RootedTree wilson_sample(const Graph& g, Node root, RngStream& rng);

// True iff every non-root node has a parent arc that is a graph edge and
// following parents from any node reaches the root.
bool is_rooted_tree(const Graph& g, const RootedTree& t);

// "root R" followed by "child parent" lines in child order.
void write_tree(std::ostream& out, const RootedTree& t);

}  // namespace prar

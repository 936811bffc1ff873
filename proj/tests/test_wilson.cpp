#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <sstream>

#include "prar/oracle.hpp"
#include "prar/wilson.hpp"

using namespace prar;

namespace {

std::map<std::vector<Node>, int> tree_counts(const Graph& g, Node root, int n, std::uint64_t seed) {
  std::map<std::vector<Node>, int> counts;
  for (int i = 0; i < n; ++i) {
    RngStream rng(substream_seed(seed, i));
    const RootedTree t = wilson_sample(g, root, rng);
    REQUIRE(is_rooted_tree(g, t));
    ++counts[t.parent];
  }
  return counts;
}

}  // namespace

TEST_CASE("path(2) has one tree") {
  RngStream rng(1);
  const RootedTree t = wilson_sample(make_path(2), 0, rng);
  CHECK(t.root == 0);
  CHECK(t.parent[0] == RootedTree::kNoParent);
  CHECK(t.parent[1] == 0);
}

TEST_CASE("uniform over the triangle and the 4-cycle") {
  const auto tri = tree_counts(make_complete(3), 0, 30'000, 2);
  CHECK(tri.size() == 3);
  for (const auto& [parent, c] : tri) CHECK(std::abs(c / 30'000.0 - 1.0 / 3.0) < 0.01);

  const auto cyc = tree_counts(make_cycle(4), 0, 40'000, 3);
  CHECK(cyc.size() == 4);
  for (const auto& [parent, c] : cyc) CHECK(std::abs(c / 40'000.0 - 0.25) < 0.01);
}

TEST_CASE("always a valid tree on larger graphs") {
  const Graph g = make_grid(6, 7);
  for (Node root : {Node{0}, Node{20}, Node{41}}) {
    for (int i = 0; i < 50; ++i) {
      RngStream rng(substream_seed(4, i));
      REQUIRE(is_rooted_tree(g, wilson_sample(g, root, rng)));
    }
  }
}

TEST_CASE("disconnected graphs and bad roots are rejected") {
  RngStream rng(5);
  CHECK_THROWS_AS(wilson_sample(build_graph(2, {}), 0, rng), GraphError);
  CHECK_THROWS_AS(wilson_sample(make_path(3), 3, rng), GraphError);
}

TEST_CASE("tree validation") {
  const Graph p3 = make_path(3);
  CHECK(is_rooted_tree(p3, RootedTree{0, {RootedTree::kNoParent, 0, 1}}));
  // 1 and 2 point at each other.
  CHECK_FALSE(is_rooted_tree(p3, RootedTree{0, {RootedTree::kNoParent, 2, 1}}));
  // 0-2 is not an edge of the path.
  CHECK_FALSE(is_rooted_tree(p3, RootedTree{0, {RootedTree::kNoParent, 0, 0}}));
  CHECK_FALSE(is_rooted_tree(p3, RootedTree{0, {1, 0, 1}}));
}

TEST_CASE("tree output") {
  std::ostringstream out;
  write_tree(out, RootedTree{1, {1, RootedTree::kNoParent, 1}});
  CHECK(out.str() == "root 1\n0 1\n2 1\n");
}

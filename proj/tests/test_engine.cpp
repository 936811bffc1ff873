#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <vector>

#include "prar/engine.hpp"
#include "prar/models.hpp"

using namespace prar;

TEST_CASE("resolution bookkeeping") {
  Resolution r(4);
  CHECK(r.open(2));
  r.begin(2);
  CHECK(r.in_progress(2));
  CHECK_FALSE(r.visible(2, 0));
  r.commit(2, 1.0);
  CHECK(r.resolved(2));
  CHECK(r.label(2) == 1.0);
  CHECK(r.rank(2) == 0);
  r.begin(0);
  r.commit(0, 0.0);
  CHECK(r.rank(0) == 1);
  CHECK(r.visible_resolved(0, 1));
  CHECK_FALSE(r.visible_resolved(2, 1));
  r.rollback(1);
  CHECK(r.open(0));
  CHECK(r.resolved(2));
  CHECK(r.resolved_count() == 1);
}

TEST_CASE("empty target set") {
  const Graph g = make_path(3);
  const HardcoreContract model(g, HardcoreParams{1.0});
  RngStream rng(1);
  const PartialSample s = prar_sample(model, {}, rng);
  CHECK(s.resolution.resolved_count() == 0);
  CHECK(s.stats.attempts == 1);
  CHECK(rng.counter().total() == 0);
}

TEST_CASE("single isolated node") {
  const Graph g = build_graph(1, {});
  const HardcoreContract model(g, HardcoreParams{1.0});
  const int n = 100'000;
  int ones = 0;
  for (int i = 0; i < n; ++i) {
    RngStream rng(substream_seed(11, i));
    const PartialSample s = prar_sample_all(model, rng);
    ones += s.resolution.label(0) != 0.0;
    REQUIRE(s.stats.attempts == 1);
  }
  CHECK(std::abs(ones / double(n) - 0.5) < 0.005);
}

TEST_CASE("path(2) marginal of one node") {
  const Graph g = make_path(2);
  const HardcoreContract model(g, HardcoreParams{1.0});
  const std::array<Dim, 1> target{0};
  const int n = 200'000;
  int ones = 0;
  for (int i = 0; i < n; ++i) {
    RngStream rng(substream_seed(12, i));
    ones += prar_sample(model, target, rng).labels(target)[0] != 0.0;
  }
  CHECK(std::abs(ones / double(n) - 1.0 / 3.0) < 0.004);
}

TEST_CASE("path(2) joint distribution, recursion and plain AR") {
  const Graph g = make_path(2);
  const HardcoreContract model(g, HardcoreParams{1.0});
  const int n = 150'000;
  std::array<int, 4> prar_counts{};
  std::array<int, 4> ar_counts{};
  for (int i = 0; i < n; ++i) {
    RngStream a(substream_seed(13, i));
    const auto x = prar_sample_all(model, a).labels_all();
    ++prar_counts[int(x[0]) + 2 * int(x[1])];
    RngStream b(substream_seed(14, i));
    const auto y = plain_ar_sample(model, b).config;
    ++ar_counts[int(y[0]) + 2 * int(y[1])];
  }
  CHECK(prar_counts[3] == 0);
  CHECK(ar_counts[3] == 0);
  for (int k = 0; k < 3; ++k) {
    CHECK(std::abs(prar_counts[k] / double(n) - 1.0 / 3.0) < 0.005);
    CHECK(std::abs(ar_counts[k] / double(n) - 1.0 / 3.0) < 0.005);
  }
}

TEST_CASE("plain AR accepts immediately when the weight is constant") {
  const Graph g = build_graph(5, {});
  const HardcoreContract model(g, HardcoreParams{2.0});
  for (int i = 0; i < 100; ++i) {
    RngStream rng(substream_seed(15, i));
    REQUIRE(plain_ar_sample(model, rng).stats.attempts == 1);
  }
}

TEST_CASE("targets are validated and deduplicated") {
  const Graph g = make_path(3);
  const HardcoreContract model(g, HardcoreParams{1.0});
  RngStream rng(16);
  const std::array<Dim, 1> bad{3};
  CHECK_THROWS_AS(prar_sample(model, bad, rng), std::out_of_range);
  const std::array<Dim, 3> dup{2, 0, 2};
  const PartialSample s = prar_sample(model, dup, rng);
  CHECK(s.resolution.resolved(0));
  CHECK(s.resolution.resolved(2));
}

TEST_CASE("draw budget") {
  const Graph g = make_cycle(200);
  const HardcoreContract model(g, HardcoreParams{1.0});
  RngStream rng(17);
  SamplerOptions opts;
  opts.draw_budget = 10;
  try {
    prar_sample_all(model, rng, opts);
    FAIL("budget should have run out");
  } catch (const BudgetExceeded& e) {
    CHECK(e.budget() == 10);
    CHECK(e.used().total() > 10);
  }
}

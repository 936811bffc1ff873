#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>
#include <string>

#include "prar/cli.hpp"

using namespace prar;

namespace {

std::pair<std::string, std::string> run_sample(const RunConfig& cfg) {
  std::ostringstream out;
  std::ostringstream meta;
  REQUIRE(cmd_sample(cfg, out, meta) == 0);
  return {out.str(), meta.str()};
}

}  // namespace

TEST_CASE("method names") {
  for (Method m : {Method::automatic, Method::prar, Method::backbone, Method::ar}) {
    CHECK(parse_method(method_name(m)) == m);
  }
  CHECK_THROWS(parse_method("gibbs"));
}

TEST_CASE("hard-core samples respect the support and are reproducible") {
  RunConfig cfg;
  cfg.model = HardcoreParams{1.0};
  cfg.graph = "path:2";
  cfg.samples = 10;
  cfg.seed = 7;
  const auto [out, meta] = run_sample(cfg);
  std::istringstream lines(out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    CHECK(line.size() == 2);
    CHECK(line != "11");
    ++count;
  }
  CHECK(count == 10);
  CHECK(meta.find("status=ok") != std::string::npos);
  CHECK(run_sample(cfg) == std::make_pair(out, meta));

  cfg.seed = 8;
  cfg.samples = 50;
  const auto a = run_sample(cfg).first;
  cfg.seed = 9;
  CHECK(run_sample(cfg).first != a);
}

TEST_CASE("continuous samples print 17 significant digits") {
  RunConfig cfg;
  cfg.model = AutonormalParams{1.0, 0.5, {0.2, 0.8}};
  cfg.graph = "path:2";
  cfg.samples = 3;
  const auto out = run_sample(cfg).first;
  std::istringstream in(out);
  std::string first;
  in >> first;
  CHECK(first.size() >= 17);
  CHECK(std::stod(first) >= 0.0);
  CHECK(std::stod(first) <= 1.0);
}

TEST_CASE("tree samples") {
  RunConfig cfg;
  cfg.model = WilsonParams{0};
  cfg.graph = "cycle:4";
  cfg.samples = 5;
  const auto out = run_sample(cfg).first;
  std::size_t blocks = 0;
  for (std::size_t pos = out.find("root 0"); pos != std::string::npos; pos = out.find("root 0", pos + 1)) ++blocks;
  CHECK(blocks == 5);
}

TEST_CASE("budget exhaustion is reported with partial statistics") {
  RunConfig cfg;
  cfg.model = HardcoreParams{1.0};
  cfg.graph = "cycle:50";
  cfg.samples = 5;
  cfg.budget = 5;
  std::ostringstream out;
  std::ostringstream meta;
  CHECK(cmd_sample(cfg, out, meta) == 3);
  CHECK(meta.str().find("status=budget_exceeded") != std::string::npos);
  CHECK(meta.str().find("completed=0") != std::string::npos);
}

TEST_CASE("invalid combinations are rejected") {
  RunConfig cfg;
  cfg.model = AutonormalParams{1.0, 0.5, {0.1, 0.2, 0.3}};
  cfg.graph = "path:2";
  std::ostringstream out;
  std::ostringstream meta;
  CHECK_THROWS_AS(cmd_sample(cfg, out, meta), ModelError);
  cfg.model = RandomClusterParams{0.3, 2.0};
  cfg.method = Method::backbone;
  CHECK_THROWS_AS(cmd_sample(cfg, out, meta), ModelError);
  cfg.method = Method::prar;
  cfg.targets = {5};
  CHECK_THROWS_AS(cmd_sample(cfg, out, meta), std::out_of_range);
}

TEST_CASE("check passes on exact samplers and fails on a corrupted one") {
  RunConfig cfg;
  cfg.model = HardcoreParams{1.0};
  cfg.graph = "path:2";
  cfg.samples = 50'000;
  const CheckReport good = cmd_check(cfg, CheckThresholds{0.02, 0.001});
  CHECK(good.pass);
  cfg.inject_fault = true;
  const CheckReport bad = cmd_check(cfg, CheckThresholds{0.02, 0.001});
  CHECK_FALSE(bad.pass);
  CHECK(*bad.tv > 0.1);
}

TEST_CASE("check projects onto target dimensions") {
  RunConfig cfg;
  cfg.model = HardcoreParams{1.0};
  cfg.graph = "path:3";
  cfg.targets = {2};
  cfg.samples = 50'000;
  std::ostringstream dump;
  const CheckReport r = cmd_check(cfg, CheckThresholds{0.02, 0.001}, &dump);
  CHECK(r.pass);
  // P(x2 = 1) = 2/5 over the independent sets of path(3).
  CHECK(dump.str().find("1 0.40000000000000002") != std::string::npos);
}

TEST_CASE("threshold rendering") {
  std::ostringstream out;
  const ModelSpec spec = HardcoreParams{0.5};
  render_threshold(out, spec, subcritical_check(spec, 4));
  const std::string text = out.str();
  CHECK(text.find("subcritical yes") != std::string::npos);
  CHECK(text.find("critical_lambda 0.5783") != std::string::npos);
  CHECK(text.find("3 0.2 0.5 1.13224") != std::string::npos);
}

TEST_CASE("bench records are deterministic across thread counts") {
  BenchConfig cfg;
  cfg.model = HardcoreParams{0.5};
  cfg.family = "cycle";
  cfg.sizes = {100, 1000};
  cfg.replications = 6;
  const BenchReport one = cmd_bench(cfg);
  cfg.threads = 3;
  const BenchReport three = cmd_bench(cfg);
  REQUIRE(one.records.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(one.records[i].draws_total == three.records[i].draws_total);
    CHECK(one.records[i].draws_per_dim > 0.0);
  }
  std::ostringstream csv;
  write_bench_csv(csv, one);
  CHECK(csv.str().rfind("model,n,m,delta,gamma,subcritical,N,draws_total,draws_per_dim,attempts_mean,seconds\n", 0) ==
        0);
  cfg.sizes = {1000, 100};
  CHECK_THROWS(cmd_bench(cfg));
  CHECK(bench_graph("grid", 99).node_count() == 100);
}

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "prar/engine.hpp"
#include "prar/graph.hpp"
#include "prar/models.hpp"
#include "prar/oracle.hpp"
#include "prar/wilson.hpp"

namespace prar {

enum class Method {
  automatic,  // backbone for hardcore/strauss, recursion contract otherwise
  prar,
  backbone,
  ar,
};

Method parse_method(const std::string& text);
std::string method_name(Method m);

struct RunConfig {
  ModelSpec model = HardcoreParams{};
  std::string graph = "path:2";
  std::uint64_t seed = 1;
  std::uint64_t samples = 1;
  // Empty means every dimension.
  std::vector<Dim> targets;
  std::string out = "-";
  std::uint64_t budget = kDefaultDrawBudget;
  Method method = Method::prar;
  // Test hook for the mutation check: skip every rejection.
  bool inject_fault = false;
};

// One draw of the configured model. Exactly one of labels/tree is filled.
struct Draw {
  std::vector<Label> labels;
  std::optional<RootedTree> tree;
  SampleStats stats;
};

Draw draw_once(const ModelSpec& spec, const Graph& g, Method method, std::span<const Dim> targets, RngStream& rng,
               const SamplerOptions& options);

// Writes cfg.samples draws to `out` (bit strings, reals with 17 significant
// digits, or tree blocks separated by blank lines) and key=value run
// metadata to `meta`. Returns 0, or 3 when the draw budget ran out.
int cmd_sample(const RunConfig& cfg, std::ostream& out, std::ostream& meta);

struct CheckThresholds {
  double tv_max = 0.01;
  double p_min = 0.001;
  double standard_errors = 3.0;
};

struct CheckReport {
  std::string summary;
  bool pass = false;
  std::optional<double> tv;
  std::optional<ChiSquareResult> chi;
  // Autonormal: per-node sample mean, oracle mean and standard error.
  std::vector<double> sample_mean;
  std::vector<double> oracle_mean;
  std::vector<double> standard_error;
};

// Samples cfg.samples times and compares against the matching oracle
// (enumeration, quadrature or tree enumeration).
CheckReport cmd_check(const RunConfig& cfg, const CheckThresholds& thresholds = {},
                      std::ostream* oracle_dump = nullptr);

void render_check(std::ostream& out, const CheckReport& report);

// Threshold report for a model at the given maximum degree, with the
// published critical-activity columns for hard-core.
void render_threshold(std::ostream& out, const ModelSpec& spec, const ThresholdReport& report);

struct BenchRecord {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t delta = 0;
  double gamma = 0.0;
  bool subcritical = true;
  std::uint64_t replications = 0;
  std::uint64_t draws_total = 0;
  double draws_per_dim = 0.0;
  // Standard error of draws_per_dim over replications.
  double draws_per_dim_se = 0.0;
  double attempts_mean = 0.0;
  double seconds = 0.0;
  bool budget_exceeded = false;
};

struct BenchReport {
  std::string model;
  std::string family;
  std::vector<BenchRecord> records;
  std::vector<ThresholdReport> thresholds;
};

struct BenchConfig {
  ModelSpec model = HardcoreParams{0.5};
  // cycle, path, complete, or grid (sizes rounded to the nearest square).
  std::string family = "cycle";
  std::vector<std::size_t> sizes;
  std::uint64_t seed = 1;
  std::uint64_t replications = 10;
  Method method = Method::automatic;
  std::uint64_t budget = kDefaultDrawBudget;
  unsigned threads = 1;
};

Graph bench_graph(const std::string& family, std::size_t size);
BenchReport cmd_bench(const BenchConfig& cfg);

// Columns: model,n,m,delta,gamma,subcritical,N,draws_total,draws_per_dim,attempts_mean,seconds
void write_bench_csv(std::ostream& out, const BenchReport& report);

}  // namespace prar

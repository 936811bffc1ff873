#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "prar/engine.hpp"
#include "prar/graph.hpp"
#include "prar/random.hpp"

namespace prar {

class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Independent sets: mu({x}) = lambda^{sum x}, w(x) = prod_{ij} (1 - x_i x_j).
struct HardcoreParams {
  double lambda = 1.0;
};

// Strauss: same mu, w(x) = prod_{ij} alpha^{x_i x_j} with 0^0 = 1.
struct StraussParams {
  double lambda = 1.0;
  double alpha = 1.0;
};

// Autonormal on [0,1]^V: mu has density exp(-J sum (x_i - y_i)^2),
// w(x) = exp(-beta sum_{ij} (x_i - x_j)^2). A single y entry applies to
// every node.
struct AutonormalParams {
  double J = 1.0;
  double beta = 0.0;
  std::vector<double> y{0.5};
};

// Random cluster on edge labels: mu = Bern(p) per edge, w(x) = q^{c(x)}.
struct RandomClusterParams {
  double p = 0.5;
  double q = 1.0;
};

// Uniform rooted spanning trees.
struct WilsonParams {
  Node root = 0;
};

using ModelSpec = std::variant<HardcoreParams, StraussParams, AutonormalParams, RandomClusterParams, WilsonParams>;

std::string model_name(const ModelSpec& spec);

// "hardcore:lambda=1", "strauss:lambda=0.8,alpha=0.5",
// "autonormal:J=1,beta=0.5,y=0.2/0.8", "cluster:p=0.25,q=2", "wilson:root=0".
ModelSpec parse_model_spec(const std::string& text);
std::string format_model_spec(const ModelSpec& spec);

// Throws ModelError when the parameters are out of range or do not fit g.
void validate(const ModelSpec& spec, const Graph& g);

bool is_binary(const ModelSpec& spec);
bool is_edge_model(const ModelSpec& spec);
// Number of labels in a configuration: nodes, or edges for the random cluster model.
std::size_t dimension_count(const ModelSpec& spec, const Graph& g);

// Exact density w(x) with respect to mu.
double weight(const ModelSpec& spec, const Graph& g, std::span<const Label> config);

// Independent draw from mu.
std::vector<Label> mu_sample(const ModelSpec& spec, const Graph& g, RngStream& rng);

// Recursion contract for the four application models. The graph must outlive
// the contract.
std::unique_ptr<ModelContract> make_contract(const ModelSpec& spec, const Graph& g);

class HardcoreContract final : public ModelContract {
 public:
  HardcoreContract(const Graph& g, HardcoreParams params);

  std::size_t dimension_count() const override { return graph_->node_count(); }
  Label sample_marginal(Dim d, RngStream& rng) const override;
  double unconditional_accept_prob(Dim d, Label x, const Resolution& r, std::size_t rank_floor) const override;
  std::vector<Dim> dependency_frontier(Dim d, Label x, const Resolution& r, std::size_t rank_floor) const override;
  double accept_prob(Dim d, Label x, const Resolution& r, std::size_t rank_floor) const override;
  Step resume(Attempt& a, const Resolution& r, RngStream& rng) const override;
  std::vector<Label> sample_full(RngStream& rng) const override;
  double full_accept_prob(std::span<const Label> config) const override;

 private:
  const Graph* graph_;
  double activity_;
};

class StraussContract final : public ModelContract {
 public:
  StraussContract(const Graph& g, StraussParams params);

  std::size_t dimension_count() const override { return graph_->node_count(); }
  Label sample_marginal(Dim d, RngStream& rng) const override;
  double unconditional_accept_prob(Dim d, Label x, const Resolution& r, std::size_t rank_floor) const override;
  std::vector<Dim> dependency_frontier(Dim d, Label x, const Resolution& r, std::size_t rank_floor) const override;
  double accept_prob(Dim d, Label x, const Resolution& r, std::size_t rank_floor) const override;
  Step resume(Attempt& a, const Resolution& r, RngStream& rng) const override;
  std::vector<Label> sample_full(RngStream& rng) const override;
  double full_accept_prob(std::span<const Label> config) const override;

 private:
  const Graph* graph_;
  StraussParams params_;
  double activity_;
};

// Per-edge auxiliary uniforms: each visible neighbor w gets U_w. When U_w is
// below exp(-beta max{1-x, x}^2) the edge passes whatever x(w) is; otherwise
// x(w) is resolved and U_w < exp(-beta (x - x(w))^2) decides.
class AutonormalContract final : public ModelContract {
 public:
  AutonormalContract(const Graph& g, AutonormalParams params);

  std::size_t dimension_count() const override { return graph_->node_count(); }
  Label sample_marginal(Dim d, RngStream& rng) const override;
  double unconditional_accept_prob(Dim d, Label x, const Resolution& r, std::size_t rank_floor) const override;
  std::vector<Dim> dependency_frontier(Dim d, Label x, const Resolution& r, std::size_t rank_floor) const override;
  double accept_prob(Dim d, Label x, const Resolution& r, std::size_t rank_floor) const override;
  Step begin(Attempt& a, const Resolution& r, RngStream& rng) const override;
  Step resume(Attempt& a, const Resolution& r, RngStream& rng) const override;
  std::vector<Label> sample_full(RngStream& rng) const override;
  double full_accept_prob(std::span<const Label> config) const override;

  // exp(-beta max{1-x, x}^2): smallest edge factor over all neighbor labels.
  double edge_lower_bound(Label x) const;
  double edge_factor(Label a, Label b) const;

 private:
  Step scan(Attempt& a, const Resolution& r, RngStream& rng) const;

  const Graph* graph_;
  AutonormalParams params_;
  double variance_;
};

// Penalty view: w2(x) = (1/q)^{n - c(x)}. An edge labeled 1 costs a factor
// 1/q unless the rest of the visible state already joins its endpoints;
// connectivity is settled by a breadth-first search from the lower endpoint
// that resolves adjacent edges one at a time.
class RandomClusterContract final : public ModelContract {
 public:
  RandomClusterContract(const Graph& g, RandomClusterParams params);

  std::size_t dimension_count() const override { return graph_->edge_count(); }
  Label sample_marginal(Dim d, RngStream& rng) const override;
  double unconditional_accept_prob(Dim d, Label x, const Resolution& r, std::size_t rank_floor) const override;
  std::vector<Dim> dependency_frontier(Dim d, Label x, const Resolution& r, std::size_t rank_floor) const override;
  double accept_prob(Dim d, Label x, const Resolution& r, std::size_t rank_floor) const override;
  Step begin(Attempt& a, const Resolution& r, RngStream& rng) const override;
  Step resume(Attempt& a, const Resolution& r, RngStream& rng) const override;
  std::vector<Label> sample_full(RngStream& rng) const override;
  double full_accept_prob(std::span<const Label> config) const override;

 private:
  // Nodes reachable from the lower endpoint of `e` through visible resolved
  // 1-edges other than `e`, plus the visible open edges touching them.
  struct Reach {
    bool joined = false;
    std::vector<Dim> open_edges;
  };
  Reach explore(Dim e, const Resolution& r, std::size_t rank_floor) const;

  const Graph* graph_;
  RandomClusterParams params_;
};

// Two-color specialization for hard-core and Strauss models driven only by
// Bernoulli draws. Nodes labeled 1 form a backbone; each examines its visible
// neighbors in id order (for Strauss, an edge whose Bern(alpha) coin is 1 is
// skipped), a neighbor labeled 1 rejects the node, and a rejected node is
// relabeled together with everything resolved beneath it.
PartialSample backbone_sample_two_color(const ModelSpec& spec, const Graph& g, std::span<const Node> targets,
                                        RngStream& rng, const SamplerOptions& options = {});
PartialSample backbone_sample_two_color_all(const ModelSpec& spec, const Graph& g, RngStream& rng,
                                            const SamplerOptions& options = {});

// Colors every component of the 1-edges with one uniform color from {1..q}.
// Components are colored in order of their smallest node.
std::vector<int> cluster_to_potts(const Graph& g, std::span<const std::uint8_t> edge_config, double q,
                                  RngStream& rng);

// ----- subcriticality --------------------------------------------------

double gamma_hardcore(double lambda, std::size_t delta);

// Root of gamma_hardcore(lambda, delta) = 1 by bisection to 1e-6 or better.
// Delta = 2 has no finite root (gamma < 1 for every lambda) and returns +inf.
double critical_lambda_hardcore(std::size_t delta);

// Expected Bernoulli draws per node bound 1 + lambda Delta (Delta-1)/(1-gamma).
std::optional<double> hardcore_cost_bound(double lambda, std::size_t delta);

struct ThresholdReport {
  std::string model;
  std::size_t delta = 0;
  double gamma = 0.0;
  bool subcritical = true;
  std::optional<double> cost_bound;
  std::optional<double> critical_lambda;
  // Further model-specific quantities, e.g. the random cluster drift.
  std::vector<std::pair<std::string, double>> extras;
};

ThresholdReport subcritical_check(const ModelSpec& spec, std::size_t delta);
ThresholdReport subcritical_check(const ModelSpec& spec, const Graph& g);

struct CriticalLambdaRow {
  std::size_t delta;
  double randomness_recycler;
  double clan_of_ancestors;
  double prar;
};

// Published critical activities for Delta = 3, 4, 5.
std::span<const CriticalLambdaRow> reference_critical_lambdas();

}  // namespace prar

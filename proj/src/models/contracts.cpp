#include <cmath>

#include "prar/models.hpp"

namespace prar {

namespace {

bool bit(Label x) { return x != 0.0; }

}  // namespace

// ----- hard-core --------------------------------------------------------

HardcoreContract::HardcoreContract(const Graph& g, HardcoreParams params)
    : graph_(&g), activity_(params.lambda / (1.0 + params.lambda)) {}

Label HardcoreContract::sample_marginal(Dim d, RngStream& rng) const {
  (void)d;
  return rng.bernoulli(activity_) ? 1.0 : 0.0;
}

double HardcoreContract::unconditional_accept_prob(Dim d, Label x, const Resolution& r,
                                                   std::size_t rank_floor) const {
  if (!bit(x)) return 1.0;
  for (const auto& inc : graph_->incident(d)) {
    if (!r.visible(inc.neighbor, rank_floor)) continue;
    if (!r.resolved(inc.neighbor) || bit(r.label(inc.neighbor))) return 0.0;
  }
  return 1.0;
}

std::vector<Dim> HardcoreContract::dependency_frontier(Dim d, Label x, const Resolution& r,
                                                       std::size_t rank_floor) const {
  std::vector<Dim> out;
  if (!bit(x)) return out;
  for (const auto& inc : graph_->incident(d)) {
    if (r.visible(inc.neighbor, rank_floor) && !r.resolved(inc.neighbor)) out.push_back(inc.neighbor);
  }
  return out;
}

double HardcoreContract::accept_prob(Dim d, Label x, const Resolution& r, std::size_t rank_floor) const {
  if (!bit(x)) return 1.0;
  for (const auto& inc : graph_->incident(d)) {
    if (r.visible_resolved(inc.neighbor, rank_floor) && bit(r.label(inc.neighbor))) return 0.0;
  }
  return 1.0;
}

// A single neighbor labeled 1 settles the test, so the remaining frontier is
// never resolved.
Step HardcoreContract::resume(Attempt& a, const Resolution& r, RngStream& /*rng*/) const {
  while (a.cursor < a.frontier.size()) {
    const Dim next = a.frontier[a.cursor];
    if (!r.resolved(next)) return Step::need(next);
    if (bit(r.label(next))) return Step::reject();
    ++a.cursor;
  }
  return Step::decide(a.u < accept_prob(a.dim, a.value, r, a.rank_floor));
}

std::vector<Label> HardcoreContract::sample_full(RngStream& rng) const {
  std::vector<Label> x(graph_->node_count());
  for (auto& v : x) v = rng.bernoulli(activity_) ? 1.0 : 0.0;
  return x;
}

double HardcoreContract::full_accept_prob(std::span<const Label> config) const {
  for (const auto& e : graph_->edges()) {
    if (bit(config[e.u]) && bit(config[e.v])) return 0.0;
  }
  return 1.0;
}

// ----- Strauss ----------------------------------------------------------

StraussContract::StraussContract(const Graph& g, StraussParams params)
    : graph_(&g), params_(params), activity_(params.lambda / (1.0 + params.lambda)) {}

Label StraussContract::sample_marginal(Dim d, RngStream& rng) const {
  (void)d;
  return rng.bernoulli(activity_) ? 1.0 : 0.0;
}

double StraussContract::unconditional_accept_prob(Dim d, Label x, const Resolution& r,
                                                  std::size_t rank_floor) const {
  if (!bit(x)) return 1.0;
  std::size_t worst = 0;
  for (const auto& inc : graph_->incident(d)) {
    if (!r.visible(inc.neighbor, rank_floor)) continue;
    if (!r.resolved(inc.neighbor) || bit(r.label(inc.neighbor))) ++worst;
  }
  return std::pow(params_.alpha, static_cast<double>(worst));
}

std::vector<Dim> StraussContract::dependency_frontier(Dim d, Label x, const Resolution& r,
                                                      std::size_t rank_floor) const {
  std::vector<Dim> out;
  if (!bit(x)) return out;
  for (const auto& inc : graph_->incident(d)) {
    if (r.visible(inc.neighbor, rank_floor) && !r.resolved(inc.neighbor)) out.push_back(inc.neighbor);
  }
  return out;
}

double StraussContract::accept_prob(Dim d, Label x, const Resolution& r, std::size_t rank_floor) const {
  if (!bit(x)) return 1.0;
  std::size_t pairs = 0;
  for (const auto& inc : graph_->incident(d)) {
    if (r.visible_resolved(inc.neighbor, rank_floor) && bit(r.label(inc.neighbor))) ++pairs;
  }
  return std::pow(params_.alpha, static_cast<double>(pairs));
}

// The factor only shrinks as more neighbors turn out to be 1, so the test is
// lost as soon as U reaches the factor of the neighbors seen so far.
Step StraussContract::resume(Attempt& a, const Resolution& r, RngStream& /*rng*/) const {
  while (a.cursor < a.frontier.size()) {
    const Dim next = a.frontier[a.cursor];
    if (!r.resolved(next)) return Step::need(next);
    ++a.cursor;
    if (bit(r.label(next)) && !(a.u < accept_prob(a.dim, a.value, r, a.rank_floor))) return Step::reject();
  }
  return Step::decide(a.u < accept_prob(a.dim, a.value, r, a.rank_floor));
}

std::vector<Label> StraussContract::sample_full(RngStream& rng) const {
  std::vector<Label> x(graph_->node_count());
  for (auto& v : x) v = rng.bernoulli(activity_) ? 1.0 : 0.0;
  return x;
}

double StraussContract::full_accept_prob(std::span<const Label> config) const {
  std::size_t pairs = 0;
  for (const auto& e : graph_->edges()) pairs += bit(config[e.u]) && bit(config[e.v]);
  return std::pow(params_.alpha, static_cast<double>(pairs));
}

// ----- autonormal -------------------------------------------------------

AutonormalContract::AutonormalContract(const Graph& g, AutonormalParams params)
    : graph_(&g), params_(std::move(params)), variance_(1.0 / (2.0 * params_.J)) {
  if (params_.y.size() == 1) params_.y.assign(g.node_count(), params_.y.front());
}

Label AutonormalContract::sample_marginal(Dim d, RngStream& rng) const {
  return rng.truncated_normal(params_.y[d], variance_);
}

double AutonormalContract::edge_lower_bound(Label x) const {
  const double far = std::max(1.0 - x, x);
  return std::exp(-params_.beta * far * far);
}

double AutonormalContract::edge_factor(Label a, Label b) const {
  const double d = a - b;
  return std::exp(-params_.beta * d * d);
}

double AutonormalContract::unconditional_accept_prob(Dim d, Label x, const Resolution& r,
                                                     std::size_t rank_floor) const {
  double p = 1.0;
  for (const auto& inc : graph_->incident(d)) {
    if (!r.visible(inc.neighbor, rank_floor)) continue;
    p *= r.resolved(inc.neighbor) ? edge_factor(x, r.label(inc.neighbor)) : edge_lower_bound(x);
  }
  return p;
}

std::vector<Dim> AutonormalContract::dependency_frontier(Dim d, Label /*x*/, const Resolution& r,
                                                         std::size_t rank_floor) const {
  std::vector<Dim> out;
  for (const auto& inc : graph_->incident(d)) {
    if (r.visible(inc.neighbor, rank_floor) && !r.resolved(inc.neighbor)) out.push_back(inc.neighbor);
  }
  return out;
}

double AutonormalContract::accept_prob(Dim d, Label x, const Resolution& r, std::size_t rank_floor) const {
  double p = 1.0;
  for (const auto& inc : graph_->incident(d)) {
    if (r.visible_resolved(inc.neighbor, rank_floor)) p *= edge_factor(x, r.label(inc.neighbor));
  }
  return p;
}

Step AutonormalContract::begin(Attempt& a, const Resolution& r, RngStream& rng) const {
  a.cursor = 0;
  return scan(a, r, rng);
}

// Called once the neighbor at a.cursor has been resolved; a.u holds its U_w.
Step AutonormalContract::resume(Attempt& a, const Resolution& r, RngStream& rng) const {
  const Node w = graph_->incident(a.dim)[a.cursor].neighbor;
  if (!(a.u < edge_factor(a.value, r.label(w)))) return Step::reject();
  ++a.cursor;
  return scan(a, r, rng);
}

Step AutonormalContract::scan(Attempt& a, const Resolution& r, RngStream& rng) const {
  const auto incident = graph_->incident(a.dim);
  const double bound = edge_lower_bound(a.value);
  for (; a.cursor < incident.size(); ++a.cursor) {
    const Node w = incident[a.cursor].neighbor;
    if (!r.visible(w, a.rank_floor)) continue;
    const double u = rng.uniform();
    if (u < bound) continue;
    if (!r.resolved(w)) {
      a.u = u;
      return Step::need(w);
    }
    if (!(u < edge_factor(a.value, r.label(w)))) return Step::reject();
  }
  return Step::accept();
}

std::vector<Label> AutonormalContract::sample_full(RngStream& rng) const {
  std::vector<Label> x(graph_->node_count());
  for (Node v = 0; v < x.size(); ++v) x[v] = rng.truncated_normal(params_.y[v], variance_);
  return x;
}

double AutonormalContract::full_accept_prob(std::span<const Label> config) const {
  double s = 0.0;
  for (const auto& e : graph_->edges()) {
    const double d = config[e.u] - config[e.v];
    s += d * d;
  }
  return std::exp(-params_.beta * s);
}

// ----- random cluster ---------------------------------------------------

RandomClusterContract::RandomClusterContract(const Graph& g, RandomClusterParams params)
    : graph_(&g), params_(params) {}

Label RandomClusterContract::sample_marginal(Dim d, RngStream& rng) const {
  (void)d;
  return rng.bernoulli(params_.p) ? 1.0 : 0.0;
}

RandomClusterContract::Reach RandomClusterContract::explore(Dim e, const Resolution& r,
                                                            std::size_t rank_floor) const {
  Reach reach;
  const Node from = graph_->edge(e).u;
  const Node to = graph_->edge(e).v;
  std::vector<Node> queue{from};
  std::vector<std::uint8_t> seen(graph_->node_count(), 0);
  seen[from] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& inc : graph_->incident(queue[head])) {
      if (inc.edge == e || !r.visible(inc.edge, rank_floor)) continue;
      if (!r.resolved(inc.edge)) {
        reach.open_edges.push_back(inc.edge);
        continue;
      }
      if (!bit(r.label(inc.edge))) continue;
      if (inc.neighbor == to) {
        reach.joined = true;
        reach.open_edges.clear();
        return reach;
      }
      if (!seen[inc.neighbor]) {
        seen[inc.neighbor] = 1;
        queue.push_back(inc.neighbor);
      }
    }
  }
  return reach;
}

double RandomClusterContract::unconditional_accept_prob(Dim d, Label x, const Resolution& r,
                                                        std::size_t rank_floor) const {
  if (!bit(x)) return 1.0;
  return explore(d, r, rank_floor).joined ? 1.0 : 1.0 / params_.q;
}

std::vector<Dim> RandomClusterContract::dependency_frontier(Dim d, Label x, const Resolution& r,
                                                            std::size_t rank_floor) const {
  if (!bit(x)) return {};
  return explore(d, r, rank_floor).open_edges;
}

double RandomClusterContract::accept_prob(Dim d, Label x, const Resolution& r, std::size_t rank_floor) const {
  return unconditional_accept_prob(d, x, r, rank_floor);
}

Step RandomClusterContract::begin(Attempt& a, const Resolution& r, RngStream& rng) const {
  if (!bit(a.value)) return Step::accept();
  a.u = rng.uniform();
  if (a.u < 1.0 / params_.q) return Step::accept();
  const Node from = graph_->edge(a.dim).u;
  a.queue.assign(1, from);
  a.marks.insert(from);
  a.head = 0;
  a.cursor = 0;
  return resume(a, r, rng);
}

// Breadth-first search over visible edges; a.queue/a.head/a.cursor persist
// across the resolutions it requests.
Step RandomClusterContract::resume(Attempt& a, const Resolution& r, RngStream& /*rng*/) const {
  const Node to = graph_->edge(a.dim).v;
  for (; a.head < a.queue.size(); ++a.head, a.cursor = 0) {
    const auto incident = graph_->incident(a.queue[a.head]);
    for (; a.cursor < incident.size(); ++a.cursor) {
      const auto& inc = incident[a.cursor];
      if (!r.visible(inc.edge, a.rank_floor)) continue;
      if (!r.resolved(inc.edge)) return Step::need(inc.edge);
      if (!bit(r.label(inc.edge))) continue;
      if (inc.neighbor == to) return Step::accept();
      if (a.marks.insert(inc.neighbor).second) a.queue.push_back(inc.neighbor);
    }
  }
  return Step::reject();
}

std::vector<Label> RandomClusterContract::sample_full(RngStream& rng) const {
  std::vector<Label> x(graph_->edge_count());
  for (auto& v : x) v = rng.bernoulli(params_.p) ? 1.0 : 0.0;
  return x;
}

double RandomClusterContract::full_accept_prob(std::span<const Label> config) const {
  std::vector<std::uint8_t> bits(config.size());
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = bit(config[i]);
  const auto merged = graph_->node_count() - count_components(*graph_, bits);
  return std::pow(1.0 / params_.q, static_cast<double>(merged));
}

}  // namespace prar

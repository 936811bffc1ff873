#include <algorithm>
#include <numeric>

#include "prar/models.hpp"

namespace prar {

namespace {

struct BackboneFrame {
  Node node = 0;
  std::size_t rank_floor = 0;
  std::size_t cursor = 0;
  // The neighbor at `cursor` was sent down the backbone and its label is due.
  bool waiting = false;
};

}  // namespace

PartialSample backbone_sample_two_color(const ModelSpec& spec, const Graph& g, std::span<const Node> targets,
                                        RngStream& rng, const SamplerOptions& options) {
  validate(spec, g);
  double lambda = 0.0;
  double alpha = 0.0;
  if (const auto* hc = std::get_if<HardcoreParams>(&spec)) {
    lambda = hc->lambda;
  } else if (const auto* st = std::get_if<StraussParams>(&spec)) {
    lambda = st->lambda;
    alpha = st->alpha;
  } else {
    throw ModelError("backbone sampling needs a two-color node model (hardcore or strauss), got " +
                     model_name(spec));
  }
  const double activity = lambda / (1.0 + lambda);
  const bool thinned = alpha > 0.0;

  std::vector<Node> wanted(targets.begin(), targets.end());
  std::sort(wanted.begin(), wanted.end());
  wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());
  if (!wanted.empty() && wanted.back() >= g.node_count()) {
    throw std::out_of_range("target node " + std::to_string(wanted.back()) + " is not in the graph");
  }

  PartialSample out{Resolution(g.node_count()), SampleStats{}};
  Resolution& res = out.resolution;
  SampleStats& stats = out.stats;
  const DrawCounter start = rng.counter();
  std::vector<BackboneFrame> backbone;

  auto check_budget = [&] {
    const DrawCounter used = rng.counter() - start;
    if (used.total() > options.draw_budget) throw BudgetExceeded(options.draw_budget, used);
  };

  for (Node target : wanted) {
    if (res.resolved(target)) continue;
    res.begin(target);
    backbone.push_back({target, res.resolved_count(), 0, false});
    bool labeled_one = rng.bernoulli(activity);

    while (!backbone.empty()) {
      check_budget();
      BackboneFrame& tip = backbone.back();
      stats.recursion_depth_max = std::max(stats.recursion_depth_max, backbone.size());

      // Settle the tip: 0 accepts at once; 1 scans visible neighbors.
      enum class Outcome { accept0, accept1, reject, extend } outcome = Outcome::accept1;
      Node extend_to = 0;
      if (!labeled_one && !tip.waiting) {
        outcome = Outcome::accept0;
      } else {
        const auto incident = g.incident(tip.node);
        if (tip.waiting) {
          tip.waiting = false;
          if (res.label(incident[tip.cursor].neighbor) != 0.0) {
            outcome = Outcome::reject;
          } else {
            ++tip.cursor;
          }
        }
        for (; outcome == Outcome::accept1 && tip.cursor < incident.size(); ++tip.cursor) {
          const Node w = incident[tip.cursor].neighbor;
          if (!res.visible(w, tip.rank_floor)) continue;
          if (res.resolved(w) && res.label(w) == 0.0) continue;
          if (thinned && rng.bernoulli(alpha)) continue;
          if (res.resolved(w)) {
            outcome = Outcome::reject;
          } else {
            outcome = Outcome::extend;
            extend_to = w;
          }
          break;
        }
      }

      if (outcome == Outcome::reject && options.skip_rejection) outcome = Outcome::accept1;
      switch (outcome) {
        case Outcome::extend: {
          tip.waiting = true;
          res.begin(extend_to);
          backbone.push_back({extend_to, res.resolved_count(), 0, false});
          labeled_one = rng.bernoulli(activity);
          break;
        }
        case Outcome::reject: {
          // Tip and everything resolved beneath it return to unresolved.
          res.rollback(tip.rank_floor);
          tip.cursor = 0;
          tip.waiting = false;
          if (backbone.size() == 1) ++stats.attempts;
          labeled_one = rng.bernoulli(activity);
          break;
        }
        case Outcome::accept0:
        case Outcome::accept1: {
          res.commit(tip.node, outcome == Outcome::accept1 ? 1.0 : 0.0);
          backbone.pop_back();
          // The parent resumes with waiting set and inspects the new label.
          labeled_one = true;
          break;
        }
      }
    }
  }
  stats.draws = rng.counter() - start;
  return out;
}

PartialSample backbone_sample_two_color_all(const ModelSpec& spec, const Graph& g, RngStream& rng,
                                            const SamplerOptions& options) {
  std::vector<Node> all(g.node_count());
  std::iota(all.begin(), all.end(), Node{0});
  return backbone_sample_two_color(spec, g, all, rng, options);
}

std::vector<int> cluster_to_potts(const Graph& g, std::span<const std::uint8_t> edge_config, double q,
                                  RngStream& rng) {
  if (!(q >= 2.0) || q != std::floor(q)) {
    throw ModelError("Potts colors need an integer q >= 2, got " + std::to_string(q));
  }
  if (edge_config.size() != g.edge_count()) {
    throw GraphError(GraphError::Kind::length_mismatch, "edge configuration length does not match the graph");
  }
  DisjointSets sets(g.node_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (edge_config[e] != 0) sets.unite(g.edge(e).u, g.edge(e).v);
  }
  const auto colors = static_cast<std::size_t>(q);
  std::vector<int> root_color(g.node_count(), 0);
  std::vector<int> out(g.node_count(), 0);
  for (Node v = 0; v < g.node_count(); ++v) {
    const auto root = sets.find(v);
    if (root_color[root] == 0) root_color[root] = static_cast<int>(rng.uniform_index(colors)) + 1;
    out[v] = root_color[root];
  }
  return out;
}

}  // namespace prar

#include "prar/engine.hpp"

#include <algorithm>

namespace prar {

Resolution::Resolution(std::size_t dims) : labels_(dims, 0.0), rank_(dims, kUnresolved), in_progress_(dims, 0) {
  order_.reserve(dims);
}

void Resolution::begin(Dim d) { in_progress_[d] = 1; }

void Resolution::commit(Dim d, Label x) {
  in_progress_[d] = 0;
  labels_[d] = x;
  rank_[d] = order_.size();
  order_.push_back(d);
}

void Resolution::rollback(std::size_t rank_floor) {
  while (order_.size() > rank_floor) {
    rank_[order_.back()] = kUnresolved;
    order_.pop_back();
  }
}

Step ModelContract::begin(Attempt& a, const Resolution& r, RngStream& rng) const {
  a.u = rng.uniform();
  if (a.u < unconditional_accept_prob(a.dim, a.value, r, a.rank_floor)) return Step::accept();
  a.frontier = dependency_frontier(a.dim, a.value, r, a.rank_floor);
  a.cursor = 0;
  return resume(a, r, rng);
}

Step ModelContract::resume(Attempt& a, const Resolution& r, RngStream& /*rng*/) const {
  while (a.cursor < a.frontier.size()) {
    const Dim next = a.frontier[a.cursor];
    if (!r.resolved(next)) return Step::need(next);
    ++a.cursor;
  }
  return Step::decide(a.u < accept_prob(a.dim, a.value, r, a.rank_floor));
}

std::vector<Label> PartialSample::labels(std::span<const Dim> dims) const {
  std::vector<Label> out;
  out.reserve(dims.size());
  for (Dim d : dims) {
    if (!resolution.resolved(d)) throw std::logic_error("dimension " + std::to_string(d) + " is not resolved");
    out.push_back(resolution.label(d));
  }
  return out;
}

std::vector<Label> PartialSample::labels_all() const {
  std::vector<Dim> dims(resolution.size());
  for (Dim d = 0; d < dims.size(); ++d) dims[d] = d;
  return labels(dims);
}

namespace {

void check_budget(const RngStream& rng, const DrawCounter& start, std::uint64_t budget) {
  const DrawCounter used = rng.counter() - start;
  if (used.total() > budget) throw BudgetExceeded(budget, used);
}

}  // namespace

PartialSample prar_sample(const ModelContract& model, std::span<const Dim> targets, RngStream& rng,
                          const SamplerOptions& options) {
  const std::size_t dims = model.dimension_count();
  std::vector<Dim> wanted(targets.begin(), targets.end());
  std::sort(wanted.begin(), wanted.end());
  wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());
  if (!wanted.empty() && wanted.back() >= dims) {
    throw std::out_of_range("target dimension " + std::to_string(wanted.back()) + " exceeds the model's " +
                            std::to_string(dims) + " dimensions");
  }

  PartialSample out{Resolution(dims), SampleStats{}};
  Resolution& res = out.resolution;
  SampleStats& stats = out.stats;
  const DrawCounter start = rng.counter();

  // Explicit stack of attempts; frames are reused so their scratch buffers
  // keep their capacity across restarts.
  std::vector<Attempt> frames;
  std::size_t depth = 0;

  auto open_attempt = [&](Dim d) {
    if (depth == frames.size()) frames.emplace_back();
    Attempt& a = frames[depth++];
    a.reset(d, res.resolved_count());
    res.begin(d);
    stats.recursion_depth_max = std::max(stats.recursion_depth_max, depth);
    a.value = model.sample_marginal(d, rng);
    return model.begin(a, res, rng);
  };

  for (Dim target : wanted) {
    if (res.resolved(target)) continue;
    Step step = open_attempt(target);
    while (depth > 0) {
      check_budget(rng, start, options.draw_budget);
      switch (step.kind) {
        case Step::Kind::need:
          if (!res.open(step.dim)) {
            throw std::logic_error("model requested dimension " + std::to_string(step.dim) +
                                   " which is not open");
          }
          step = open_attempt(step.dim);
          break;
        case Step::Kind::reject:
          if (!options.skip_rejection) {
            Attempt& a = frames[depth - 1];
            res.rollback(a.rank_floor);
            if (depth == 1) ++stats.attempts;
            a.reset(a.dim, a.rank_floor);
            a.value = model.sample_marginal(a.dim, rng);
            step = model.begin(a, res, rng);
            break;
          }
          [[fallthrough]];
        case Step::Kind::accept: {
          const Attempt& a = frames[depth - 1];
          res.commit(a.dim, a.value);
          --depth;
          if (depth > 0) step = model.resume(frames[depth - 1], res, rng);
          break;
        }
      }
    }
  }
  stats.draws = rng.counter() - start;
  return out;
}

PartialSample prar_sample_all(const ModelContract& model, RngStream& rng, const SamplerOptions& options) {
  std::vector<Dim> all(model.dimension_count());
  for (Dim d = 0; d < all.size(); ++d) all[d] = d;
  return prar_sample(model, all, rng, options);
}

FullSample plain_ar_sample(const ModelContract& model, RngStream& rng, const SamplerOptions& options) {
  FullSample out;
  const DrawCounter start = rng.counter();
  out.stats.recursion_depth_max = 1;
  for (;;) {
    out.config = model.sample_full(rng);
    const double u = rng.uniform();
    if (options.skip_rejection || u < model.full_accept_prob(out.config)) break;
    ++out.stats.attempts;
    check_budget(rng, start, options.draw_budget);
  }
  out.stats.draws = rng.counter() - start;
  return out;
}

}  // namespace prar

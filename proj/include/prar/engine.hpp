#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "prar/random.hpp"

namespace prar {

using Dim = std::uint32_t;
using Label = double;

// Raised when a sample consumes more primitive draws than its budget allows.
// Usually means the parameters are far above the critical value.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::uint64_t budget, const DrawCounter& used)
      : std::runtime_error("draw budget of " + std::to_string(budget) + " exceeded"), budget_(budget), used_(used) {}
  std::uint64_t budget() const noexcept { return budget_; }
  const DrawCounter& used() const noexcept { return used_; }

 private:
  std::uint64_t budget_;
  DrawCounter used_;
};

inline constexpr std::uint64_t kDefaultDrawBudget = 1'000'000'000;

struct SampleStats {
  // 1 + number of restarts of the outermost acceptance test.
  std::uint64_t attempts = 1;
  std::size_t recursion_depth_max = 0;
  DrawCounter draws;
};

// Resolved labels plus the bookkeeping the recursion needs.
//
// Each resolved dimension has a rank, its position in the resolution order.
// An attempt opened when `rank_floor` dimensions were resolved sees the
// dimensions that are unresolved and not in progress, plus those resolved at
// rank >= rank_floor (the ones resolved inside its own subtree). Everything
// resolved before it, and every attempt still in progress above it, lies
// outside the dimension set its acceptance test ranges over.
class Resolution {
 public:
  explicit Resolution(std::size_t dims);

  std::size_t size() const noexcept { return labels_.size(); }
  bool resolved(Dim d) const { return rank_[d] != kUnresolved; }
  bool in_progress(Dim d) const { return in_progress_[d] != 0; }
  bool open(Dim d) const { return !resolved(d) && !in_progress(d); }
  Label label(Dim d) const { return labels_[d]; }
  std::size_t rank(Dim d) const { return rank_[d]; }

  bool visible(Dim d, std::size_t rank_floor) const {
    return !in_progress(d) && (!resolved(d) || rank_[d] >= rank_floor);
  }
  bool visible_resolved(Dim d, std::size_t rank_floor) const { return resolved(d) && rank_[d] >= rank_floor; }

  // Dimensions in resolution order.
  std::span<const Dim> order() const noexcept { return order_; }
  std::size_t resolved_count() const noexcept { return order_.size(); }

  void begin(Dim d);
  void commit(Dim d, Label x);
  // Forgets every resolution with rank >= rank_floor.
  void rollback(std::size_t rank_floor);
  // Abandons an in-progress dimension without resolving it.

 private:
  static constexpr std::size_t kUnresolved = std::numeric_limits<std::size_t>::max();

  std::vector<Label> labels_;
  std::vector<std::size_t> rank_;
  std::vector<std::uint8_t> in_progress_;
  std::vector<Dim> order_;
};

// One acceptance test in flight: dimension, proposed label and whatever the
// model needs to resume the test after a requested dimension is resolved.
struct Attempt {
  Dim dim = 0;
  Label value = 0.0;
  std::size_t rank_floor = 0;
  double u = 0.0;
  std::size_t cursor = 0;
  std::size_t head = 0;
  std::vector<Dim> frontier;
  std::vector<std::uint32_t> queue;
  std::unordered_set<std::uint32_t> marks;

  void reset(Dim d, std::size_t floor) {
    dim = d;
    value = 0.0;
    rank_floor = floor;
    u = 0.0;
    cursor = 0;
    head = 0;
    frontier.clear();
    queue.clear();
    marks.clear();
  }
};

struct Step {
  enum class Kind { accept, reject, need };
  Kind kind;
  Dim dim = 0;

  static Step accept() { return {Kind::accept, 0}; }
  static Step reject() { return {Kind::reject, 0}; }
  static Step need(Dim d) { return {Kind::need, d}; }
  static Step decide(bool ok) { return ok ? accept() : reject(); }
};

// What the recursion needs from a model.
//
// The acceptance test for dimension d with label x compares a uniform U with
// the cross factor between d and the dimensions visible to the attempt. All
// models here have per-interaction factors bounded by 1, so M = 1.
//
// begin/resume drive one test and may ask for further dimensions. The default
// implementation is the single-uniform protocol: accept outright when
// U < unconditional_accept_prob, otherwise resolve dependency_frontier and
// compare U with accept_prob. Models with cheaper auxiliary-variable tests
// override both.
class ModelContract {
 public:
  virtual ~ModelContract() = default;

  virtual std::size_t dimension_count() const = 0;

  // Draws X(d) from the underlying measure's marginal.
  virtual Label sample_marginal(Dim d, RngStream& rng) const = 0;

  // Minimum over all completions of the visible dimensions of the cross
  // factor with X(d) = x.
  virtual double unconditional_accept_prob(Dim d, Label x, const Resolution& r, std::size_t rank_floor) const = 0;

  // Visible unresolved dimensions whose labels the test needs next. May be a
  // lazily expanded superset of the minimal set.
  virtual std::vector<Dim> dependency_frontier(Dim d, Label x, const Resolution& r, std::size_t rank_floor) const = 0;

  // Cross factor once the frontier is resolved.
  virtual double accept_prob(Dim d, Label x, const Resolution& r, std::size_t rank_floor) const = 0;

  virtual Step begin(Attempt& a, const Resolution& r, RngStream& rng) const;
  virtual Step resume(Attempt& a, const Resolution& r, RngStream& rng) const;

  // Whole-configuration view used by plain acceptance rejection.
  virtual std::vector<Label> sample_full(RngStream& rng) const = 0;
  virtual double full_accept_prob(std::span<const Label> config) const = 0;
};

struct SamplerOptions {
  std::uint64_t draw_budget = kDefaultDrawBudget;
  // Test hook: treat every rejection as an acceptance. Produces wrong output
  // on purpose so the exactness checks can be shown to detect it.
  bool skip_rejection = false;
};

struct PartialSample {
  Resolution resolution;
  SampleStats stats;

  // Labels of `dims` in the given order. Every entry must be resolved.
  std::vector<Label> labels(std::span<const Dim> dims) const;
  std::vector<Label> labels_all() const;
};

// Resolves every dimension of `targets` (ascending id order) within one draw
// from the model. The returned resolution may cover more dimensions.
PartialSample prar_sample(const ModelContract& model, std::span<const Dim> targets, RngStream& rng,
                          const SamplerOptions& options = {});
PartialSample prar_sample_all(const ModelContract& model, RngStream& rng, const SamplerOptions& options = {});

struct FullSample {
  std::vector<Label> config;
  SampleStats stats;
};

FullSample plain_ar_sample(const ModelContract& model, RngStream& rng, const SamplerOptions& options = {});

}  // namespace prar

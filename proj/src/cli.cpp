#include "prar/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

namespace prar {

Method parse_method(const std::string& text) {
  if (text == "auto") return Method::automatic;
  if (text == "prar") return Method::prar;
  if (text == "backbone") return Method::backbone;
  if (text == "ar") return Method::ar;
  throw std::invalid_argument("unknown method '" + text + "' (auto, prar, backbone, ar)");
}

std::string method_name(Method m) {
  switch (m) {
    case Method::automatic:
      return "auto";
    case Method::prar:
      return "prar";
    case Method::backbone:
      return "backbone";
    case Method::ar:
      return "ar";
  }
  return "?";
}

namespace {

bool two_color(const ModelSpec& spec) {
  return std::holds_alternative<HardcoreParams>(spec) || std::holds_alternative<StraussParams>(spec);
}

// Draws repeatedly from one model/graph/method with a cached contract.
class Sampler {
 public:
  Sampler(const ModelSpec& spec, const Graph& g, Method method, std::span<const Dim> targets, SamplerOptions options)
      : spec_(spec), graph_(g), method_(method), options_(options) {
    validate(spec, g);
    if (method_ == Method::automatic) method_ = two_color(spec) ? Method::backbone : Method::prar;
    const bool wilson = std::holds_alternative<WilsonParams>(spec);
    if (method_ == Method::backbone && !two_color(spec)) {
      throw ModelError("the backbone method only applies to hardcore and strauss");
    }
    if (!wilson) contract_ = make_contract(spec, g);
    const std::size_t dims = wilson ? g.node_count() : dimension_count(spec, g);
    if (targets.empty()) {
      targets_.resize(dims);
      std::iota(targets_.begin(), targets_.end(), Dim{0});
    } else {
      targets_.assign(targets.begin(), targets.end());
      for (Dim d : targets_) {
        if (d >= dims) throw std::out_of_range("target " + std::to_string(d) + " is not a dimension of the model");
      }
    }
  }

  Method method() const { return method_; }
  std::string method_label() const {
    return std::holds_alternative<WilsonParams>(spec_) ? "wilson" : method_name(method_);
  }
  std::span<const Dim> targets() const { return targets_; }

  Draw draw(RngStream& rng) const {
    Draw out;
    if (const auto* w = std::get_if<WilsonParams>(&spec_)) {
      const DrawCounter start = rng.counter();
      out.tree = wilson_sample(graph_, w->root, rng);
      out.stats.recursion_depth_max = 1;
      out.stats.draws = rng.counter() - start;
      return out;
    }
    switch (method_) {
      case Method::ar: {
        FullSample full = plain_ar_sample(*contract_, rng, options_);
        out.labels.reserve(targets_.size());
        for (Dim d : targets_) out.labels.push_back(full.config[d]);
        out.stats = full.stats;
        break;
      }
      case Method::backbone: {
        PartialSample part = backbone_sample_two_color(spec_, graph_, targets_, rng, options_);
        out.labels = part.labels(targets_);
        out.stats = part.stats;
        break;
      }
      default: {
        PartialSample part = prar_sample(*contract_, targets_, rng, options_);
        out.labels = part.labels(targets_);
        out.stats = part.stats;
        break;
      }
    }
    return out;
  }

 private:
  ModelSpec spec_;
  const Graph& graph_;
  Method method_;
  SamplerOptions options_;
  std::unique_ptr<ModelContract> contract_;
  std::vector<Dim> targets_;
};

SamplerOptions options_of(const RunConfig& cfg) {
  SamplerOptions o;
  o.draw_budget = cfg.budget;
  o.skip_rejection = cfg.inject_fault;
  return o;
}

void write_labels(std::ostream& out, const ModelSpec& spec, std::span<const Label> labels) {
  if (is_binary(spec)) {
    for (Label x : labels) out << (x != 0.0 ? '1' : '0');
  } else {
    for (std::size_t i = 0; i < labels.size(); ++i) out << (i ? " " : "") << labels[i];
  }
  out << '\n';
}

std::string fixed(double v, int digits = 6) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

}  // namespace

Draw draw_once(const ModelSpec& spec, const Graph& g, Method method, std::span<const Dim> targets, RngStream& rng,
               const SamplerOptions& options) {
  return Sampler(spec, g, method, targets, options).draw(rng);
}

int cmd_sample(const RunConfig& cfg, std::ostream& out, std::ostream& meta) {
  const Graph g = parse_graph_spec(cfg.graph);
  const Sampler sampler(cfg.model, g, cfg.method, cfg.targets, options_of(cfg));

  const auto old_precision = out.precision(17);
  DrawCounter draws;
  std::uint64_t attempts = 0;
  std::size_t depth = 0;
  std::uint64_t completed = 0;
  std::string status = "ok";
  for (std::uint64_t i = 0; i < cfg.samples; ++i) {
    RngStream rng(substream_seed(cfg.seed, i));
    try {
      const Draw d = sampler.draw(rng);
      if (d.tree) {
        if (i > 0) out << '\n';
        write_tree(out, *d.tree);
      } else {
        write_labels(out, cfg.model, d.labels);
      }
      attempts += d.stats.attempts;
      depth = std::max(depth, d.stats.recursion_depth_max);
      ++completed;
    } catch (const BudgetExceeded& e) {
      draws += e.used();
      status = "budget_exceeded";
      break;
    }
    draws += rng.counter();
  }
  out.precision(old_precision);

  meta << "model=" << format_model_spec(cfg.model) << '\n'
       << "graph=" << cfg.graph << '\n'
       << "method=" << sampler.method_label() << '\n'
       << "seed=" << cfg.seed << '\n'
       << "samples=" << cfg.samples << '\n'
       << "completed=" << completed << '\n'
       << "nodes=" << g.node_count() << '\n'
       << "edges=" << g.edge_count() << '\n'
       << "attempts_total=" << attempts << '\n'
       << "recursion_depth_max=" << depth << '\n'
       << "bernoulli_draws=" << draws.bernoulli_draws << '\n'
       << "uniform_draws=" << draws.uniform_draws << '\n'
       << "normal_draws=" << draws.normal_draws << '\n'
       << "status=" << status << '\n';
  return status == "ok" ? 0 : 3;
}

CheckReport cmd_check(const RunConfig& cfg, const CheckThresholds& thresholds, std::ostream* oracle_dump) {
  const Graph g = parse_graph_spec(cfg.graph);
  const Sampler sampler(cfg.model, g, cfg.method, cfg.targets, options_of(cfg));
  CheckReport report;
  std::ostringstream summary;

  if (const auto* w = std::get_if<WilsonParams>(&cfg.model)) {
    const auto trees = enumerate_rooted_trees(g, w->root);
    std::map<std::vector<Node>, std::size_t> index;
    for (std::size_t i = 0; i < trees.size(); ++i) index.emplace(trees[i].parent, i);
    std::vector<std::uint64_t> counts(trees.size(), 0);
    for (std::uint64_t i = 0; i < cfg.samples; ++i) {
      RngStream rng(substream_seed(cfg.seed, i));
      const Draw d = sampler.draw(rng);
      auto it = index.find(d.tree->parent);
      if (it == index.end()) throw std::logic_error("sampler produced a tree outside the enumeration");
      ++counts[it->second];
    }
    const std::vector<double> expected(trees.size(), 1.0 / static_cast<double>(trees.size()));
    std::vector<double> freq(trees.size());
    for (std::size_t i = 0; i < trees.size(); ++i) {
      freq[i] = static_cast<double>(counts[i]) / static_cast<double>(cfg.samples);
    }
    report.tv = tv_distance(freq, expected);
    report.chi = chi_square(counts, expected, cfg.samples);
    report.pass = *report.tv < thresholds.tv_max && report.chi->p_value > thresholds.p_min;
    summary << "trees=" << trees.size() << " matrix_tree=" << matrix_tree_count(g);
    if (oracle_dump) {
      for (std::size_t i = 0; i < trees.size(); ++i) {
        write_tree(*oracle_dump, trees[i]);
        *oracle_dump << "probability " << std::setprecision(17) << expected[i] << "\n\n";
      }
    }
  } else if (const auto* an = std::get_if<AutonormalParams>(&cfg.model)) {
    const NodeMoments oracle = autonormal_moments_numeric(*an, g);
    const auto targets = sampler.targets();
    std::vector<double> sum(targets.size(), 0.0);
    std::vector<double> sum2(targets.size(), 0.0);
    for (std::uint64_t i = 0; i < cfg.samples; ++i) {
      RngStream rng(substream_seed(cfg.seed, i));
      const Draw d = sampler.draw(rng);
      for (std::size_t k = 0; k < targets.size(); ++k) {
        sum[k] += d.labels[k];
        sum2[k] += d.labels[k] * d.labels[k];
      }
    }
    report.pass = true;
    const double n = static_cast<double>(cfg.samples);
    for (std::size_t k = 0; k < targets.size(); ++k) {
      const double mean = sum[k] / n;
      const double var = std::max(0.0, sum2[k] / n - mean * mean) * n / std::max(1.0, n - 1.0);
      const double se = std::sqrt(var / n);
      report.sample_mean.push_back(mean);
      report.oracle_mean.push_back(oracle.mean[targets[k]]);
      report.standard_error.push_back(se);
      if (!(std::abs(mean - oracle.mean[targets[k]]) <= thresholds.standard_errors * se)) report.pass = false;
    }
    summary << "quadrature moments";
    if (oracle_dump) {
      for (std::size_t v = 0; v < oracle.mean.size(); ++v) {
        *oracle_dump << v << ' ' << std::setprecision(17) << oracle.mean[v] << ' ' << oracle.variance[v] << '\n';
      }
    }
  } else {
    const OracleDistribution full = enumerate_distribution(cfg.model, g);
    const auto targets = sampler.targets();
    // Project the oracle onto the target dimensions, in target order.
    OracleDistribution oracle;
    oracle.dims = targets.size();
    oracle.support.resize(std::size_t{1} << targets.size());
    std::iota(oracle.support.begin(), oracle.support.end(), ConfigKey{0});
    oracle.probs.assign(oracle.support.size(), 0.0);
    for (std::size_t i = 0; i < full.support.size(); ++i) {
      ConfigKey key = 0;
      for (std::size_t k = 0; k < targets.size(); ++k) {
        if ((full.support[i] >> targets[k]) & 1U) key |= ConfigKey{1} << k;
      }
      oracle.probs[key] += full.probs[i];
    }
    Histogram hist(targets.size());
    for (std::uint64_t i = 0; i < cfg.samples; ++i) {
      RngStream rng(substream_seed(cfg.seed, i));
      hist.add(sampler.draw(rng).labels);
    }
    report.tv = tv_distance(hist.frequencies(), oracle.probs);
    report.chi = chi_square_against(hist, oracle);
    report.pass = *report.tv < thresholds.tv_max && report.chi->p_value > thresholds.p_min;
    summary << "enumeration over " << oracle.support.size() << " configurations";
    if (oracle_dump) write_oracle(*oracle_dump, oracle);
  }

  summary << " model=" << format_model_spec(cfg.model) << " graph=" << cfg.graph
          << " method=" << sampler.method_label() << " N=" << cfg.samples;
  report.summary = summary.str();
  return report;
}

void render_check(std::ostream& out, const CheckReport& report) {
  out << report.summary << '\n';
  if (report.tv) out << "tv " << fixed(*report.tv) << '\n';
  if (report.chi) {
    out << "chi_square " << fixed(report.chi->statistic) << " df " << report.chi->degrees_of_freedom << " p "
        << fixed(report.chi->p_value) << '\n';
  }
  for (std::size_t k = 0; k < report.sample_mean.size(); ++k) {
    out << "mean[" << k << "] sample " << fixed(report.sample_mean[k], 8) << " oracle "
        << fixed(report.oracle_mean[k], 8) << " se " << fixed(report.standard_error[k], 4) << '\n';
  }
  out << (report.pass ? "PASS" : "FAIL") << '\n';
}

void render_threshold(std::ostream& out, const ModelSpec& spec, const ThresholdReport& report) {
  out << "model " << format_model_spec(spec) << '\n';
  out << "delta " << report.delta << '\n';
  out << "gamma " << fixed(report.gamma, 8) << '\n';
  out << "subcritical " << (report.subcritical ? "yes" : "no") << '\n';
  out << "cost_bound " << (report.cost_bound ? fixed(*report.cost_bound, 8) : std::string("n/a")) << '\n';
  if (report.critical_lambda) out << "critical_lambda " << fixed(*report.critical_lambda, 8) << '\n';
  for (const auto& [name, value] : report.extras) out << name << ' ' << fixed(value, 8) << '\n';
  if (std::holds_alternative<HardcoreParams>(spec)) {
    out << "# delta lambda_c_rr lambda_c_coa lambda_c_prar(published) lambda_c_prar(computed) 1.13/(delta-2)\n";
    for (const auto& row : reference_critical_lambdas()) {
      out << row.delta << ' ' << row.randomness_recycler << ' ' << row.clan_of_ancestors << ' ' << row.prar << ' '
          << fixed(critical_lambda_hardcore(row.delta), 8) << ' '
          << fixed(1.13 / static_cast<double>(row.delta - 2), 8) << '\n';
    }
  }
}

Graph bench_graph(const std::string& family, std::size_t size) {
  if (family == "cycle") return make_cycle(size);
  if (family == "path") return make_path(size);
  if (family == "complete") return make_complete(size);
  if (family == "grid") {
    const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(size))));
    return make_grid(std::max<std::size_t>(side, 1), std::max<std::size_t>(side, 1));
  }
  throw GraphError(GraphError::Kind::bad_generator, "unknown bench family '" + family + "'");
}

BenchReport cmd_bench(const BenchConfig& cfg) {
  if (cfg.replications < 1) throw std::invalid_argument("bench needs at least one replication");
  for (std::size_t i = 1; i < cfg.sizes.size(); ++i) {
    if (cfg.sizes[i] <= cfg.sizes[i - 1]) throw std::invalid_argument("bench sizes must be strictly increasing");
  }
  BenchReport report;
  report.model = model_name(cfg.model);
  report.family = cfg.family;
  SamplerOptions options;
  options.draw_budget = cfg.budget;

  struct RepResult {
    std::uint64_t draws = 0;
    std::uint64_t attempts = 0;
    bool exceeded = false;
  };

  for (std::size_t size : cfg.sizes) {
    const Graph g = bench_graph(cfg.family, size);
    const ThresholdReport threshold = subcritical_check(cfg.model, g);
    const Sampler sampler(cfg.model, g, cfg.method, {}, options);
    const std::size_t dims = std::holds_alternative<WilsonParams>(cfg.model) ? g.node_count()
                                                                             : dimension_count(cfg.model, g);

    std::vector<RepResult> reps(cfg.replications);
    auto run_range = [&](std::size_t first, std::size_t step) {
      for (std::size_t r = first; r < reps.size(); r += step) {
        RngStream rng(substream_seed(cfg.seed, r));
        try {
          const Draw d = sampler.draw(rng);
          reps[r].attempts = d.stats.attempts;
          reps[r].draws = d.stats.draws.total();
        } catch (const BudgetExceeded& e) {
          reps[r].exceeded = true;
          reps[r].draws = e.used().total();
        }
      }
    };
    const auto t0 = std::chrono::steady_clock::now();
    const unsigned workers = std::max(1U, std::min<unsigned>(cfg.threads, static_cast<unsigned>(reps.size())));
    if (workers == 1) {
      run_range(0, 1);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run_range, w, workers);
      for (auto& t : pool) t.join();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    BenchRecord rec;
    rec.n = g.node_count();
    rec.m = g.edge_count();
    rec.delta = g.max_degree();
    rec.gamma = threshold.gamma;
    rec.subcritical = threshold.subcritical;
    rec.replications = cfg.replications;
    rec.seconds = seconds;
    double per_dim_sum = 0.0;
    double per_dim_sum2 = 0.0;
    double attempts = 0.0;
    for (const auto& r : reps) {
      rec.draws_total += r.draws;
      rec.budget_exceeded = rec.budget_exceeded || r.exceeded;
      const double per_dim = static_cast<double>(r.draws) / static_cast<double>(std::max<std::size_t>(dims, 1));
      per_dim_sum += per_dim;
      per_dim_sum2 += per_dim * per_dim;
      attempts += static_cast<double>(r.attempts);
    }
    const double R = static_cast<double>(cfg.replications);
    rec.draws_per_dim = per_dim_sum / R;
    rec.attempts_mean = attempts / R;
    if (cfg.replications > 1) {
      const double var = std::max(0.0, (per_dim_sum2 - R * rec.draws_per_dim * rec.draws_per_dim) / (R - 1.0));
      rec.draws_per_dim_se = std::sqrt(var / R);
    }
    report.records.push_back(rec);
    report.thresholds.push_back(threshold);
  }
  return report;
}

void write_bench_csv(std::ostream& out, const BenchReport& report) {
  out << "model,n,m,delta,gamma,subcritical,N,draws_total,draws_per_dim,attempts_mean,seconds\n";
  const auto old = out.precision(17);
  for (const auto& r : report.records) {
    out << report.model << ',' << r.n << ',' << r.m << ',' << r.delta << ',' << r.gamma << ','
        << (r.subcritical ? 1 : 0) << ',' << r.replications << ',' << r.draws_total << ',' << r.draws_per_dim << ','
        << r.attempts_mean << ',' << r.seconds << '\n';
  }
  for (const auto& r : report.records) {
    if (r.budget_exceeded) out << "# draw budget exceeded at n=" << r.n << '\n';
  }
  out.precision(old);
}

}  // namespace prar

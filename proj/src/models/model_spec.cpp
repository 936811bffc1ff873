#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "prar/models.hpp"

namespace prar {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double parse_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw ModelError("parameter " + key + " has invalid value '" + text + "'");
  return value;
}

std::map<std::string, std::string> parse_params(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ModelError("model parameter '" + item + "' is not key=value");
    const std::string key = item.substr(0, eq);
    if (!out.emplace(key, item.substr(eq + 1)).second) throw ModelError("parameter " + key + " given twice");
  }
  return out;
}

class ParamReader {
 public:
  ParamReader(std::string model, std::map<std::string, std::string> params)
      : model_(std::move(model)), params_(std::move(params)) {}

  double number(const std::string& key, std::optional<double> fallback = std::nullopt) {
    auto it = params_.find(key);
    if (it == params_.end()) {
      if (fallback) return *fallback;
      throw ModelError(model_ + " needs parameter " + key);
    }
    const double v = parse_double(key, it->second);
    params_.erase(it);
    return v;
  }

  std::vector<double> list(const std::string& key, std::vector<double> fallback) {
    auto it = params_.find(key);
    if (it == params_.end()) return fallback;
    std::vector<double> out;
    std::stringstream in(it->second);
    std::string item;
    while (std::getline(in, item, '/')) out.push_back(parse_double(key, item));
    params_.erase(it);
    return out;
  }

  void finish() const {
    if (!params_.empty()) throw ModelError(model_ + " does not take parameter " + params_.begin()->first);
  }

 private:
  std::string model_;
  std::map<std::string, std::string> params_;
};

// Shortest text that round-trips to v.
std::string fmt(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ModelError(message);
}

bool is_label_bit(Label x) { return x == 0.0 || x == 1.0; }

}  // namespace

std::string model_name(const ModelSpec& spec) {
  return std::visit(overloaded{[](const HardcoreParams&) { return std::string("hardcore"); },
                               [](const StraussParams&) { return std::string("strauss"); },
                               [](const AutonormalParams&) { return std::string("autonormal"); },
                               [](const RandomClusterParams&) { return std::string("cluster"); },
                               [](const WilsonParams&) { return std::string("wilson"); }},
                    spec);
}

ModelSpec parse_model_spec(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  ParamReader params(name, colon == std::string::npos ? std::map<std::string, std::string>{}
                                                      : parse_params(text.substr(colon + 1)));
  ModelSpec spec;
  if (name == "hardcore") {
    spec = HardcoreParams{params.number("lambda")};
  } else if (name == "strauss") {
    const double lambda = params.number("lambda");
    spec = StraussParams{lambda, params.number("alpha")};
  } else if (name == "autonormal") {
    const double J = params.number("J");
    const double beta = params.number("beta");
    spec = AutonormalParams{J, beta, params.list("y", {0.5})};
  } else if (name == "cluster" || name == "random_cluster") {
    const double p = params.number("p");
    spec = RandomClusterParams{p, params.number("q")};
  } else if (name == "wilson") {
    const double root = params.number("root", 0.0);
    require(root >= 0 && root == std::floor(root), "wilson root must be a node id");
    spec = WilsonParams{static_cast<Node>(root)};
  } else {
    throw ModelError("unknown model '" + name + "'");
  }
  params.finish();
  return spec;
}

std::string format_model_spec(const ModelSpec& spec) {
  return std::visit(
      overloaded{
          [](const HardcoreParams& m) { return "hardcore:lambda=" + fmt(m.lambda); },
          [](const StraussParams& m) { return "strauss:lambda=" + fmt(m.lambda) + ",alpha=" + fmt(m.alpha); },
          [](const AutonormalParams& m) {
            std::string ys;
            for (std::size_t i = 0; i < m.y.size(); ++i) ys += (i ? "/" : "") + fmt(m.y[i]);
            return "autonormal:J=" + fmt(m.J) + ",beta=" + fmt(m.beta) + ",y=" + ys;
          },
          [](const RandomClusterParams& m) { return "cluster:p=" + fmt(m.p) + ",q=" + fmt(m.q); },
          [](const WilsonParams& m) { return "wilson:root=" + std::to_string(m.root); }},
      spec);
}

void validate(const ModelSpec& spec, const Graph& g) {
  std::visit(overloaded{
                 [](const HardcoreParams& m) {
                   require(m.lambda >= 0 && std::isfinite(m.lambda), "hardcore lambda must be finite and >= 0");
                 },
                 [](const StraussParams& m) {
                   require(m.lambda >= 0 && std::isfinite(m.lambda), "strauss lambda must be finite and >= 0");
                   require(m.alpha >= 0 && m.alpha <= 1, "strauss alpha must lie in [0,1]");
                 },
                 [&](const AutonormalParams& m) {
                   require(m.J > 0 && std::isfinite(m.J), "autonormal J must be positive");
                   require(m.beta >= 0 && std::isfinite(m.beta), "autonormal beta must be >= 0");
                   require(m.y.size() == 1 || m.y.size() == g.node_count(),
                           "autonormal y needs one value or one per node");
                   for (double v : m.y) require(v >= 0 && v <= 1, "autonormal y values must lie in [0,1]");
                 },
                 [](const RandomClusterParams& m) {
                   require(m.p > 0 && m.p < 1, "random cluster p must lie in (0,1)");
                   require(m.q >= 1 && std::isfinite(m.q), "random cluster q must be >= 1");
                 },
                 [&](const WilsonParams& m) {
                   require(m.root < g.node_count(), "wilson root is not a node of the graph");
                 }},
             spec);
}

bool is_binary(const ModelSpec& spec) {
  return std::holds_alternative<HardcoreParams>(spec) || std::holds_alternative<StraussParams>(spec) ||
         std::holds_alternative<RandomClusterParams>(spec);
}

bool is_edge_model(const ModelSpec& spec) { return std::holds_alternative<RandomClusterParams>(spec); }

std::size_t dimension_count(const ModelSpec& spec, const Graph& g) {
  return is_edge_model(spec) ? g.edge_count() : g.node_count();
}

double weight(const ModelSpec& spec, const Graph& g, std::span<const Label> config) {
  if (std::holds_alternative<WilsonParams>(spec)) throw ModelError("wilson trees have no label-vector weight");
  if (config.size() != dimension_count(spec, g)) {
    throw ModelError("configuration has " + std::to_string(config.size()) + " labels, model expects " +
                     std::to_string(dimension_count(spec, g)));
  }
  for (Label x : config) {
    if (is_binary(spec) ? !is_label_bit(x) : !(x >= 0.0 && x <= 1.0)) {
      throw ModelError("label out of range for " + model_name(spec));
    }
  }
  return std::visit(overloaded{[&](const HardcoreParams&) {
                                 for (const auto& e : g.edges()) {
                                   if (config[e.u] != 0 && config[e.v] != 0) return 0.0;
                                 }
                                 return 1.0;
                               },
                               [&](const StraussParams& m) {
                                 std::size_t pairs = 0;
                                 for (const auto& e : g.edges()) pairs += (config[e.u] != 0 && config[e.v] != 0);
                                 return std::pow(m.alpha, static_cast<double>(pairs));
                               },
                               [&](const AutonormalParams& m) {
                                 double s = 0.0;
                                 for (const auto& e : g.edges()) {
                                   const double d = config[e.u] - config[e.v];
                                   s += d * d;
                                 }
                                 return std::exp(-m.beta * s);
                               },
                               [&](const RandomClusterParams& m) {
                                 std::vector<std::uint8_t> bits(config.size());
                                 for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = config[i] != 0;
                                 return std::pow(m.q, static_cast<double>(count_components(g, bits)));
                               },
                               [](const WilsonParams&) { return 0.0; }},
                    spec);
}

std::vector<Label> mu_sample(const ModelSpec& spec, const Graph& g, RngStream& rng) {
  validate(spec, g);
  return make_contract(spec, g)->sample_full(rng);
}

std::unique_ptr<ModelContract> make_contract(const ModelSpec& spec, const Graph& g) {
  validate(spec, g);
  return std::visit(
      overloaded{
          [&](const HardcoreParams& m) -> std::unique_ptr<ModelContract> {
            return std::make_unique<HardcoreContract>(g, m);
          },
          [&](const StraussParams& m) -> std::unique_ptr<ModelContract> {
            return std::make_unique<StraussContract>(g, m);
          },
          [&](const AutonormalParams& m) -> std::unique_ptr<ModelContract> {
            return std::make_unique<AutonormalContract>(g, m);
          },
          [&](const RandomClusterParams& m) -> std::unique_ptr<ModelContract> {
            return std::make_unique<RandomClusterContract>(g, m);
          },
          [](const WilsonParams&) -> std::unique_ptr<ModelContract> {
            throw ModelError("wilson trees are sampled by wilson_sample, not by a label contract");
          }},
      spec);
}

}  // namespace prar

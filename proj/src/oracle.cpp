#include "prar/oracle.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>

namespace prar {

ConfigKey encode_config(std::span<const Label> labels) {
  if (labels.size() > 64) throw OracleError("configurations wider than 64 labels have no integer key");
  ConfigKey key = 0;
  for (std::size_t d = 0; d < labels.size(); ++d) {
    if (labels[d] != 0.0) key |= ConfigKey{1} << d;
  }
  return key;
}

std::string config_bits(ConfigKey key, std::size_t dims) {
  std::string s(dims, '0');
  for (std::size_t d = 0; d < dims; ++d) {
    if ((key >> d) & 1U) s[d] = '1';
  }
  return s;
}

double OracleDistribution::marginal_one(std::size_t d) const {
  double p = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    if ((support[i] >> d) & 1U) p += probs[i];
  }
  return p;
}

OracleDistribution enumerate_distribution(const ModelSpec& spec, const Graph& g) {
  if (!is_binary(spec)) throw OracleError("enumeration needs a binary model, got " + model_name(spec));
  validate(spec, g);
  const std::size_t dims = dimension_count(spec, g);
  if (dims > kMaxEnumeratedDims) {
    throw OracleError("enumeration is capped at " + std::to_string(kMaxEnumeratedDims) + " dimensions, model has " +
                      std::to_string(dims));
  }

  OracleDistribution out;
  out.dims = dims;
  const std::size_t states = std::size_t{1} << dims;
  out.support.resize(states);
  out.probs.resize(states);
  std::iota(out.support.begin(), out.support.end(), ConfigKey{0});

  std::vector<Label> labels(dims);
  double total = 0.0;
  for (std::size_t key = 0; key < states; ++key) {
    std::size_t ones = 0;
    for (std::size_t d = 0; d < dims; ++d) {
      labels[d] = static_cast<Label>((key >> d) & 1U);
      ones += (key >> d) & 1U;
    }
    double base = 0.0;
    if (const auto* hc = std::get_if<HardcoreParams>(&spec)) {
      base = std::pow(hc->lambda, static_cast<double>(ones));
    } else if (const auto* st = std::get_if<StraussParams>(&spec)) {
      base = std::pow(st->lambda, static_cast<double>(ones));
    } else {
      const auto& rc = std::get<RandomClusterParams>(spec);
      base = std::pow(rc.p, static_cast<double>(ones)) * std::pow(1.0 - rc.p, static_cast<double>(dims - ones));
    }
    out.probs[key] = base * weight(spec, g, labels);
    total += out.probs[key];
  }
  for (auto& p : out.probs) p /= total;
  return out;
}

void write_oracle(std::ostream& out, const OracleDistribution& dist) {
  const auto old = out.precision(17);
  for (std::size_t i = 0; i < dist.support.size(); ++i) {
    out << config_bits(dist.support[i], dist.dims) << ' ' << dist.probs[i] << '\n';
  }
  out.precision(old);
}

Histogram::Histogram(std::size_t dims) : dims_(dims) {
  if (dims > kMaxEnumeratedDims) throw OracleError("histograms are capped at " + std::to_string(kMaxEnumeratedDims) + " dimensions");
  counts_.assign(std::size_t{1} << dims, 0);
}

void Histogram::add(std::span<const Label> labels) {
  if (labels.size() != dims_) throw OracleError("sample width does not match the histogram");
  add_key(encode_config(labels));
}

void Histogram::add_key(ConfigKey key) {
  ++counts_.at(key);
  ++total_;
}

std::vector<double> Histogram::frequencies() const {
  std::vector<double> f(counts_.size(), 0.0);
  if (total_ == 0) return f;
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = static_cast<double>(counts_[i]) / static_cast<double>(total_);
  return f;
}

double tv_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw OracleError("distributions have " + std::to_string(a.size()) + " and " + std::to_string(b.size()) +
                      " cells");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return 0.5 * sum;
}

ChiSquareResult chi_square(std::span<const std::uint64_t> observed, std::span<const double> expected, std::uint64_t n) {
  if (observed.size() != expected.size()) throw OracleError("observed and expected cell counts differ");
  const std::uint64_t total = std::accumulate(observed.begin(), observed.end(), std::uint64_t{0});
  if (total != n) throw OracleError("observed counts sum to " + std::to_string(total) + ", not " + std::to_string(n));
  ChiSquareResult out;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (!(expected[i] > 0.0)) throw OracleError("expected probability of cell " + std::to_string(i) + " is zero");
    const double e = expected[i] * static_cast<double>(n);
    const double diff = static_cast<double>(observed[i]) - e;
    out.statistic += diff * diff / e;
  }
  out.degrees_of_freedom = observed.empty() ? 0 : observed.size() - 1;
  out.p_value = out.degrees_of_freedom == 0
                    ? 1.0
                    : boost::math::gamma_q(0.5 * static_cast<double>(out.degrees_of_freedom), 0.5 * out.statistic);
  return out;
}

ChiSquareResult chi_square_against(const Histogram& h, const OracleDistribution& oracle) {
  if (h.counts().size() != oracle.probs.size()) throw OracleError("histogram and oracle supports differ");
  std::vector<std::uint64_t> observed;
  std::vector<double> expected;
  std::uint64_t stray = 0;
  for (std::size_t i = 0; i < oracle.probs.size(); ++i) {
    if (oracle.probs[i] > 0.0) {
      observed.push_back(h.counts()[i]);
      expected.push_back(oracle.probs[i]);
    } else {
      stray += h.counts()[i];
    }
  }
  if (stray > 0) {
    return {std::numeric_limits<double>::infinity(), 0.0, observed.empty() ? 0 : observed.size() - 1};
  }
  return chi_square(observed, expected, h.total());
}

NodeMoments autonormal_moments_grid(const AutonormalParams& params, const Graph& g, std::size_t points) {
  const std::size_t n = g.node_count();
  if (n == 0 || n > kMaxQuadratureNodes) {
    throw OracleError("quadrature handles 1 to " + std::to_string(kMaxQuadratureNodes) + " nodes");
  }
  validate(params, g);
  std::vector<double> t(points);
  for (std::size_t k = 0; k < points; ++k) t[k] = (static_cast<double>(k) + 0.5) / static_cast<double>(points);

  std::array<std::vector<double>, 3> node_factor;
  for (std::size_t v = 0; v < 3; ++v) {
    if (v >= n) {
      node_factor[v].assign(1, 1.0);
      continue;
    }
    const double y = params.y.size() == 1 ? params.y[0] : params.y[v];
    node_factor[v].resize(points);
    for (std::size_t k = 0; k < points; ++k) node_factor[v][k] = std::exp(-params.J * (t[k] - y) * (t[k] - y));
  }
  std::vector<double> pair(points * points);
  for (std::size_t a = 0; a < points; ++a) {
    for (std::size_t b = 0; b < points; ++b) {
      const double d = t[a] - t[b];
      pair[a * points + b] = std::exp(-params.beta * d * d);
    }
  }
  const bool e01 = n > 1 && g.adjacent(0, 1);
  const bool e02 = n > 2 && g.adjacent(0, 2);
  const bool e12 = n > 2 && g.adjacent(1, 2);
  auto at = [&](std::size_t k) { return k < points ? t[k] : 0.0; };

  const std::size_t na = node_factor[0].size();
  const std::size_t nb = node_factor[1].size();
  const std::size_t nc = node_factor[2].size();
  // long double sums: up to 8e8 terms at the finest grid.
  long double z = 0;
  std::array<long double, 3> m1{};
  std::array<long double, 3> m2{};
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t b = 0; b < nb; ++b) {
      const double wab = node_factor[0][a] * node_factor[1][b] * (e01 ? pair[a * points + b] : 1.0);
      long double s = 0;
      long double sc = 0;
      long double sc2 = 0;
      for (std::size_t c = 0; c < nc; ++c) {
        const double w = wab * node_factor[2][c] * (e02 ? pair[a * points + c] : 1.0) *
                         (e12 ? pair[b * points + c] : 1.0);
        s += w;
        sc += w * at(c);
        sc2 += w * at(c) * at(c);
      }
      z += s;
      m1[0] += s * at(a);
      m2[0] += s * at(a) * at(a);
      m1[1] += s * at(b);
      m2[1] += s * at(b) * at(b);
      m1[2] += sc;
      m2[2] += sc2;
    }
  }
  NodeMoments out;
  for (std::size_t v = 0; v < n; ++v) {
    const double mean = static_cast<double>(m1[v] / z);
    out.mean.push_back(mean);
    out.variance.push_back(static_cast<double>(m2[v] / z) - mean * mean);
  }
  return out;
}

NodeMoments autonormal_moments_numeric(const AutonormalParams& params, const Graph& g, std::size_t points_per_axis) {
  if (points_per_axis < 400) throw OracleError("quadrature needs at least 400 points per axis");
  NodeMoments coarse = autonormal_moments_grid(params, g, points_per_axis);
  for (int round = 0; round < 4; ++round) {
    points_per_axis *= 2;
    NodeMoments fine = autonormal_moments_grid(params, g, points_per_axis);
    double change = 0.0;
    for (std::size_t v = 0; v < fine.mean.size(); ++v) {
      change = std::max({change, std::abs(fine.mean[v] - coarse.mean[v]),
                         std::abs(fine.variance[v] - coarse.variance[v])});
    }
    if (change < 1e-4) return fine;
    coarse = std::move(fine);
  }
  throw OracleError("quadrature did not settle to 1e-4 under grid refinement");
}

std::vector<RootedTree> enumerate_rooted_trees(const Graph& g, Node root) {
  const std::size_t n = g.node_count();
  if (n > kMaxTreeEnumerationNodes) {
    throw OracleError("tree enumeration is capped at " + std::to_string(kMaxTreeEnumerationNodes) + " nodes");
  }
  if (root >= n) throw OracleError("root is not a node of the graph");

  std::vector<RootedTree> out;
  RootedTree current{root, std::vector<Node>(n, RootedTree::kNoParent)};
  std::vector<Node> order;
  for (Node v = 0; v < n; ++v) {
    if (v != root) order.push_back(v);
  }

  // Closes a cycle if walking parents from v comes back to v.
  auto closes_cycle = [&](Node v) {
    Node cur = current.parent[v];
    for (std::size_t steps = 0; steps < n; ++steps) {
      if (cur == v) return true;
      if (cur == root || current.parent[cur] == RootedTree::kNoParent) return false;
      cur = current.parent[cur];
    }
    return true;
  };

  // Iterative depth-first search over parent choices.
  std::vector<std::size_t> choice(order.size(), 0);
  std::size_t level = 0;
  if (order.empty()) {
    out.push_back(current);
    return out;
  }
  for (;;) {
    const Node v = order[level];
    const auto incident = g.incident(v);
    bool placed = false;
    while (choice[level] < incident.size()) {
      current.parent[v] = incident[choice[level]++].neighbor;
      if (!closes_cycle(v)) {
        placed = true;
        break;
      }
    }
    if (placed) {
      if (level + 1 == order.size()) {
        out.push_back(current);
        continue;
      }
      ++level;
      choice[level] = 0;
      continue;
    }
    current.parent[v] = RootedTree::kNoParent;
    if (level == 0) break;
    --level;
  }
  return out;
}

std::uint64_t matrix_tree_count(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n <= 1) return 1;
  const std::size_t k = n - 1;
  // Reduced Laplacian: drop node n-1.
  std::vector<__int128> m(k * k, 0);
  for (std::size_t v = 0; v < k; ++v) m[v * k + v] = static_cast<__int128>(g.degree(static_cast<Node>(v)));
  for (const auto& e : g.edges()) {
    if (e.u < k && e.v < k) {
      m[e.u * k + e.v] -= 1;
      m[e.v * k + e.u] -= 1;
    }
  }
  // Fraction-free Bareiss elimination.
  __int128 prev = 1;
  int sign = 1;
  for (std::size_t p = 0; p < k; ++p) {
    if (m[p * k + p] == 0) {
      std::size_t swap_row = p + 1;
      while (swap_row < k && m[swap_row * k + p] == 0) ++swap_row;
      if (swap_row == k) return 0;
      for (std::size_t c = 0; c < k; ++c) std::swap(m[p * k + c], m[swap_row * k + c]);
      sign = -sign;
    }
    for (std::size_t i = p + 1; i < k; ++i) {
      for (std::size_t j = p + 1; j < k; ++j) {
        m[i * k + j] = (m[i * k + j] * m[p * k + p] - m[i * k + p] * m[p * k + j]) / prev;
      }
      m[i * k + p] = 0;
    }
    prev = m[p * k + p];
  }
  const __int128 det = sign * m[(k - 1) * k + (k - 1)];
  return static_cast<std::uint64_t>(det < 0 ? -det : det);
}

}  // namespace prar

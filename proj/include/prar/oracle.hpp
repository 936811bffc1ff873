#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "prar/graph.hpp"
#include "prar/models.hpp"
#include "prar/wilson.hpp"

namespace prar {

class OracleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kMaxEnumeratedDims = 22;
inline constexpr std::size_t kMaxQuadratureNodes = 3;
inline constexpr std::size_t kMaxTreeEnumerationNodes = 10;

// Configurations of binary labels are keyed by an integer whose bit d is the
// label of dimension d. The canonical order is ascending key, and the
// printable form lists dimension 0 first ("01" means x(0)=0, x(1)=1).
using ConfigKey = std::uint64_t;

ConfigKey encode_config(std::span<const Label> labels);
std::string config_bits(ConfigKey key, std::size_t dims);

// Exact normalized distribution over every configuration of a small binary
// model. support[i] == i; zero-probability configurations are listed.
struct OracleDistribution {
  std::size_t dims = 0;
  std::vector<ConfigKey> support;
  std::vector<double> probs;

  double marginal_one(std::size_t d) const;
};

OracleDistribution enumerate_distribution(const ModelSpec& spec, const Graph& g);

// "config_bits probability" per line in canonical order.
void write_oracle(std::ostream& out, const OracleDistribution& dist);

// Counts of sampled configurations aligned with an oracle's support.
class Histogram {
 public:
  explicit Histogram(std::size_t dims);

  void add(std::span<const Label> labels);
  void add_key(ConfigKey key);

  std::size_t dims() const noexcept { return dims_; }
  std::uint64_t total() const noexcept { return total_; }
  std::span<const std::uint64_t> counts() const noexcept { return counts_; }
  std::vector<double> frequencies() const;

 private:
  std::size_t dims_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

// Half the L1 distance. Throws OracleError when the lengths differ.
double tv_distance(std::span<const double> a, std::span<const double> b);

struct ChiSquareResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t degrees_of_freedom = 0;
};

// Pearson goodness of fit with cells - 1 degrees of freedom. Every expected
// probability must be positive and the counts must sum to n.
ChiSquareResult chi_square(std::span<const std::uint64_t> observed, std::span<const double> expected, std::uint64_t n);

// Chi-square over the positive-probability cells of an oracle. Mass observed
// on a zero-probability cell yields p_value 0.
ChiSquareResult chi_square_against(const Histogram& h, const OracleDistribution& oracle);

struct NodeMoments {
  std::vector<double> mean;
  std::vector<double> variance;
};

// Moments of the normalized autonormal joint density on [0,1]^V by midpoint
// tensor quadrature. Starts at 400 points per axis and doubles until the
// means and variances move by less than 1e-4.
NodeMoments autonormal_moments_numeric(const AutonormalParams& params, const Graph& g,
                                       std::size_t points_per_axis = 400);

// Same rule at one fixed resolution, no refinement.
NodeMoments autonormal_moments_grid(const AutonormalParams& params, const Graph& g, std::size_t points_per_axis);

// Every rooted spanning tree, ordered by parent vector.
std::vector<RootedTree> enumerate_rooted_trees(const Graph& g, Node root);

// Number of spanning trees by the matrix-tree theorem (exact integer
// determinant of the reduced Laplacian).
std::uint64_t matrix_tree_count(const Graph& g);

}  // namespace prar

#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace prar {

// Counts of primitive random draws. This is the cost unit reported by the
// samplers and the benchmark.
struct DrawCounter {
  std::uint64_t bernoulli_draws = 0;
  std::uint64_t uniform_draws = 0;
  std::uint64_t normal_draws = 0;

  std::uint64_t total() const noexcept { return bernoulli_draws + uniform_draws + normal_draws; }

  friend DrawCounter operator-(const DrawCounter& a, const DrawCounter& b) {
    return {a.bernoulli_draws - b.bernoulli_draws, a.uniform_draws - b.uniform_draws,
            a.normal_draws - b.normal_draws};
  }
  DrawCounter& operator+=(const DrawCounter& o) {
    bernoulli_draws += o.bernoulli_draws;
    uniform_draws += o.uniform_draws;
    normal_draws += o.normal_draws;
    return *this;
  }
  friend bool operator==(const DrawCounter&, const DrawCounter&) = default;
};

// Seeded random stream with draw accounting.
//
// The engine is std::mt19937_64 (MT19937-64, whose output sequence is fixed
// by the C++ standard). Variates are derived from its raw 64-bit output by
// the conversions below rather than by <random> distributions, whose
// algorithms are implementation-defined:
//   uniform     (x >> 11) * 2^-53
//   normal      Marsaglia polar method on uniforms built the same way
// Changing any of these changes every golden value; bump kStreamVersion.
//
// A stream is single-owner. Distinct streams may be used from distinct
// threads.
class RngStream {
 public:
  static constexpr int kStreamVersion = 1;

  explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  const DrawCounter& counter() const noexcept { return counter_; }

  // 1 with probability p. Throws std::domain_error when p is outside [0,1].
  bool bernoulli(double p);

  // Uniform on [0,1).
  double uniform();

  // Uniform on {0, ..., k-1}; counted as one uniform draw. k must be positive.
  std::size_t uniform_index(std::size_t k);

  // Standard normal; counted as one normal draw.
  double normal();

  // N(mean, variance) conditioned on [0,1]. Every proposal, accepted or not,
  // is counted as a normal draw.
  double truncated_normal(double mean, double variance);

 private:
  double raw_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double raw_normal();
  double tail_proposal_truncated(double lo, double hi);

  std::uint64_t seed_;
  std::mt19937_64 engine_;
  DrawCounter counter_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Seed of the replication-th substream derived from a root seed.
constexpr std::uint64_t substream_seed(std::uint64_t root_seed, std::uint64_t replication) noexcept {
  return root_seed + replication;
}

}  // namespace prar

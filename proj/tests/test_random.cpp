#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "prar/random.hpp"

using namespace prar;

TEST_CASE("bernoulli edge cases and mean") {
  RngStream rng(1);
  for (int i = 0; i < 1000; ++i) {
    CHECK_FALSE(rng.bernoulli(0.0));
    CHECK(rng.bernoulli(1.0));
  }
  CHECK_THROWS_AS(rng.bernoulli(1.5), std::domain_error);
  CHECK_THROWS_AS(rng.bernoulli(-0.1), std::domain_error);

  RngStream fair(2);
  const int n = 1'000'000;
  int ones = 0;
  for (int i = 0; i < n; ++i) ones += fair.bernoulli(0.5);
  CHECK(std::abs(ones / double(n) - 0.5) < 0.002);
  CHECK(fair.counter().bernoulli_draws == static_cast<std::uint64_t>(n));
}

TEST_CASE("uniform range, mean and determinism") {
  RngStream rng(3);
  const int n = 1'000'000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / n - 0.5) < 0.0015);
  CHECK(rng.counter().uniform_draws == static_cast<std::uint64_t>(n));

  RngStream a(42);
  RngStream b(42);
  for (int i = 0; i < 1000; ++i) {
    REQUIRE(a.uniform() == b.uniform());
    REQUIRE(a.normal() == b.normal());
  }
  CHECK(a.counter() == b.counter());
}

TEST_CASE("substreams are distinct and uncorrelated") {
  RngStream a(substream_seed(10, 0));
  RngStream b(substream_seed(10, 1));
  const int n = 100'000;
  double sa = 0, sb = 0, sab = 0, saa = 0, sbb = 0;
  int equal = 0;
  for (int i = 0; i < n; ++i) {
    const double x = a.uniform();
    const double y = b.uniform();
    equal += x == y;
    sa += x;
    sb += y;
    sab += x * y;
    saa += x * x;
    sbb += y * y;
  }
  CHECK(equal == 0);
  const double cov = sab / n - (sa / n) * (sb / n);
  const double corr = cov / std::sqrt((saa / n - sa * sa / n / n) * (sbb / n - sb * sb / n / n));
  CHECK(std::abs(corr) < 0.02);
}

TEST_CASE("uniform_index covers its range evenly") {
  RngStream rng(5);
  int counts[4] = {0, 0, 0, 0};
  const int n = 400'000;
  for (int i = 0; i < n; ++i) ++counts[rng.uniform_index(4)];
  for (int c : counts) CHECK(std::abs(c / double(n) - 0.25) < 0.003);
  CHECK(rng.counter().uniform_draws == static_cast<std::uint64_t>(n));
}

TEST_CASE("normal moments") {
  RngStream rng(6);
  const int n = 400'000;
  double s = 0, s2 = 0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    s += z;
    s2 += z * z;
  }
  CHECK(std::abs(s / n) < 0.01);
  CHECK(std::abs(s2 / n - 1.0) < 0.01);
  CHECK(rng.counter().normal_draws == static_cast<std::uint64_t>(n));
}

TEST_CASE("truncated normal") {
  RngStream rng(7);
  CHECK_THROWS_AS(rng.truncated_normal(0.5, 0.0), std::domain_error);

  SUBCASE("degenerate concentration") {
    for (int i = 0; i < 1000; ++i) REQUIRE(std::abs(rng.truncated_normal(0.5, 1e-8) - 0.5) < 1e-3);
  }
  SUBCASE("symmetric window") {
    const int n = 100'000;
    double s = 0;
    for (int i = 0; i < n; ++i) s += rng.truncated_normal(0.5, 0.25);
    CHECK(std::abs(s / n - 0.5) < 0.005);
  }
  SUBCASE("mean far outside the window") {
    // Midpoint quadrature of x * exp(-(x-2)^2 / 0.02) over [0,1].
    const int grid = 200'000;
    double mass = 0, first = 0;
    for (int k = 0; k < grid; ++k) {
      const double x = (k + 0.5) / grid;
      const double w = std::exp(-(x - 2.0) * (x - 2.0) / 0.02);
      mass += w;
      first += x * w;
    }
    const double oracle = first / mass;
    const int n = 100'000;
    double s = 0;
    for (int i = 0; i < n; ++i) {
      const double x = rng.truncated_normal(2.0, 0.01);
      REQUIRE(x >= 0.0);
      REQUIRE(x <= 1.0);
      s += x;
    }
    CHECK(oracle > 0.98);
    CHECK(std::abs(s / n - oracle) < 5e-4);
  }
}

#include "prar/random.hpp"

#include <cmath>
#include <string>

namespace prar {

bool RngStream::bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("bernoulli probability " + std::to_string(p) + " is outside [0,1]");
  }
  ++counter_.bernoulli_draws;
  return raw_unit() < p;
}

double RngStream::uniform() {
  ++counter_.uniform_draws;
  return raw_unit();
}

std::size_t RngStream::uniform_index(std::size_t k) {
  if (k == 0) throw std::domain_error("uniform_index needs a positive range");
  ++counter_.uniform_draws;
  const auto i = static_cast<std::size_t>(raw_unit() * static_cast<double>(k));
  return i < k ? i : k - 1;
}

double RngStream::raw_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double x = 0.0;
  double y = 0.0;
  double s = 0.0;
  do {
    x = 2.0 * raw_unit() - 1.0;
    y = 2.0 * raw_unit() - 1.0;
    s = x * x + y * y;
  } while (s >= 1.0 || s == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = y * scale;
  has_spare_ = true;
  return x * scale;
}

double RngStream::normal() {
  ++counter_.normal_draws;
  return raw_normal();
}

// Standard normal conditioned on [lo, hi] with lo >= 0 or lo <= 0 <= hi.
// Narrow windows use a uniform proposal; windows in the tail use the
// translated-exponential proposal of Robert (1995); everything else falls
// back to plain rejection from the untruncated normal.
double RngStream::tail_proposal_truncated(double lo, double hi) {
  if (lo <= 0.0) {
    if (hi - lo >= 1.0) {
      for (;;) {
        const double z = normal();
        if (z >= lo && z <= hi) return z;
      }
    }
    for (;;) {
      ++counter_.normal_draws;
      const double z = lo + (hi - lo) * raw_unit();
      if (raw_unit() <= std::exp(-0.5 * z * z)) return z;
    }
  }
  if (hi * hi - lo * lo < 2.0) {
    for (;;) {
      ++counter_.normal_draws;
      const double z = lo + (hi - lo) * raw_unit();
      if (raw_unit() <= std::exp(0.5 * (lo * lo - z * z))) return z;
    }
  }
  const double rate = 0.5 * (lo + std::sqrt(lo * lo + 4.0));
  for (;;) {
    ++counter_.normal_draws;
    const double z = lo - std::log1p(-raw_unit()) / rate;
    if (z > hi) continue;
    const double d = z - rate;
    if (raw_unit() <= std::exp(-0.5 * d * d)) return z;
  }
}

double RngStream::truncated_normal(double mean, double variance) {
  if (!(variance > 0.0) || !std::isfinite(variance)) {
    throw std::domain_error("truncated_normal variance must be positive, got " + std::to_string(variance));
  }
  const double sd = std::sqrt(variance);
  double lo = (0.0 - mean) / sd;
  double hi = (1.0 - mean) / sd;
  double sign = 1.0;
  if (hi < 0.0) {
    sign = -1.0;
    const double t = lo;
    lo = -hi;
    hi = -t;
  }
  const double z = sign * tail_proposal_truncated(lo, hi);
  const double x = mean + sd * z;
  return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x);
}

}  // namespace prar

#include <array>
#include <cmath>
#include <limits>

#include "prar/models.hpp"

namespace prar {

namespace {

constexpr std::array<CriticalLambdaRow, 3> kReferenceRows{{
    {3, 0.2, 0.5, 1.13224},
    {4, 0.142857, 0.333, 0.57833},
    {5, 0.111111, 0.25, 0.29315},
}};

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

double gamma_hardcore(double lambda, std::size_t delta) {
  if (delta < 2) return 0.0;
  const double active = lambda / (1.0 + lambda);
  // Probability a neighbor resolves to 1 is at least lambda / (1+lambda)^Delta.
  const double miss = 1.0 - lambda / std::pow(1.0 + lambda, static_cast<double>(delta));
  double sum = 0.0;
  double term = 1.0;
  for (std::size_t i = 1; i + 1 <= delta; ++i) {
    sum += term;
    term *= miss;
  }
  return active * sum;
}

double critical_lambda_hardcore(std::size_t delta) {
  if (delta < 2) throw ModelError("critical lambda needs a maximum degree of at least 2");
  if (delta == 2) return std::numeric_limits<double>::infinity();
  double lo = 0.0;
  double hi = 1.0;
  while (gamma_hardcore(hi, delta) < 1.0) {
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    (gamma_hardcore(mid, delta) < 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::optional<double> hardcore_cost_bound(double lambda, std::size_t delta) {
  const double gamma = gamma_hardcore(lambda, delta);
  if (!(gamma < 1.0)) return std::nullopt;
  const double d = static_cast<double>(delta);
  return 1.0 + lambda * d * (d - 1.0) / (1.0 - gamma);
}

ThresholdReport subcritical_check(const ModelSpec& spec, std::size_t delta) {
  ThresholdReport report;
  report.model = model_name(spec);
  report.delta = delta;
  const double branches = delta >= 1 ? static_cast<double>(delta - 1) : 0.0;
  std::visit(overloaded{
                 [&](const HardcoreParams& m) {
                   report.gamma = gamma_hardcore(m.lambda, delta);
                   report.subcritical = report.gamma < 1.0;
                   report.cost_bound = hardcore_cost_bound(m.lambda, delta);
                   if (delta >= 2) report.critical_lambda = critical_lambda_hardcore(delta);
                 },
                 [&](const StraussParams& m) {
                   const double spread = m.alpha * branches;
                   report.gamma = m.lambda / (1.0 + m.lambda) * spread;
                   report.subcritical = spread <= 1.0 || m.lambda < 1.0 / (spread - 1.0);
                   report.extras.emplace_back("alpha_branching", spread);
                   if (spread > 1.0) report.extras.emplace_back("lambda_limit", 1.0 / (spread - 1.0));
                 },
                 [&](const AutonormalParams& m) {
                   report.gamma = branches * (1.0 - std::exp(-m.beta));
                   report.subcritical = report.gamma < 1.0;
                   const double lemma_gamma = branches * std::exp(-m.beta);
                   report.extras.emplace_back("lemma_gamma", lemma_gamma);
                   report.extras.emplace_back("intro_margin", lemma_gamma - m.beta);
                 },
                 [&](const RandomClusterParams& m) {
                   report.gamma = static_cast<double>(delta) * m.p;
                   report.subcritical = report.gamma < 1.0;
                   report.extras.emplace_back("drift", report.gamma - 1.0);
                 },
                 [&](const WilsonParams&) {
                   report.gamma = 0.0;
                   report.subcritical = true;
                 }},
             spec);
  return report;
}

ThresholdReport subcritical_check(const ModelSpec& spec, const Graph& g) {
  validate(spec, g);
  return subcritical_check(spec, g.max_degree());
}

std::span<const CriticalLambdaRow> reference_critical_lambdas() { return kReferenceRows; }

}  // namespace prar

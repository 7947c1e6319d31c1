#include "nfprop/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace nfprop {

std::size_t sample_size(std::size_t n, double epsilon) {
  if (n < 2) throw std::invalid_argument("sample_size needs n >= 2");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  double raw = std::ceil(std::log(static_cast<double>(n)) / (epsilon * epsilon));
  if (raw < 1.0) return 1;
  if (raw >= static_cast<double>(n)) return n;
  return static_cast<std::size_t>(raw);
}

DistanceMetrics metrics_from_counts(const CollisionCounts& c, double tau, Provenance provenance) {
  if (!(tau > 0.0 && tau <= 1.0)) throw std::invalid_argument("tau must lie in (0, 1]");

  DistanceMetrics m;
  provenance.s = c.s;
  provenance.n = c.n;
  m.provenance = std::move(provenance);
  m.diameter = c.max_hop();

  const auto cumulative = c.cumulative();
  const std::uint64_t total = cumulative.empty() ? 0 : cumulative.back();
  const double scale = c.s == 0 ? 0.0 : static_cast<double>(c.n) / static_cast<double>(c.s);

  m.neighborhood_function.reserve(cumulative.size());
  for (auto v : cumulative) m.neighborhood_function.push_back(scale * static_cast<double>(v));
  m.reachable_pairs = scale * static_cast<double>(total);

  if (total > 0) {
    // Integer accumulation keeps the exact-mode numerator exact.
    std::uint64_t weighted = 0;
    for (std::size_t i = 0; i < c.count_all.size(); ++i) weighted += (i + 1) * c.count_all[i];
    m.avg_distance = static_cast<double>(weighted) / static_cast<double>(total);

    const double threshold = tau * static_cast<double>(total);
    for (std::size_t i = 0; i < cumulative.size(); ++i) {
      if (static_cast<double>(cumulative[i]) >= threshold) {
        m.effective_diameter = static_cast<std::uint32_t>(i + 1);
        break;
      }
    }
  }

  if (c.n > 1 && c.s > 0)
    m.connectivity_rate = static_cast<double>(total) / (static_cast<double>(c.s) * static_cast<double>(c.n - 1));
  return m;
}

namespace {

std::optional<double> relative(std::optional<double> exact, std::optional<double> est) {
  if (!exact || !est || *exact == 0.0) return std::nullopt;
  return (*exact - *est) / *exact;
}

std::optional<double> widen(std::optional<std::uint32_t> v) {
  if (!v) return std::nullopt;
  return static_cast<double>(*v);
}

}  // namespace

Residuals residuals(const DistanceMetrics& exact, const DistanceMetrics& est) {
  if (exact.provenance.n != est.provenance.n)
    throw std::invalid_argument("residuals need metrics from the same graph");
  Residuals r;
  r.avg_distance = relative(exact.avg_distance, est.avg_distance);
  r.effective_diameter = relative(widen(exact.effective_diameter), widen(est.effective_diameter));
  r.diameter = relative(static_cast<double>(exact.diameter), static_cast<double>(est.diameter));
  r.reachable_pairs = relative(exact.reachable_pairs, est.reachable_pairs);
  r.connectivity_rate = relative(exact.connectivity_rate, est.connectivity_rate);
  return r;
}

ErrorBounds error_bounds(std::size_t n, std::size_t s, double alpha_hat, std::uint32_t diameter_hat,
                         double tau) {
  if (n < 2) throw std::invalid_argument("error_bounds needs n >= 2");
  if (s < 1) throw std::invalid_argument("error_bounds needs s >= 1");
  if (!(tau > 0.0 && tau <= 1.0)) throw std::invalid_argument("tau must lie in (0, 1]");
  ErrorBounds b;
  b.epsilon = std::sqrt(std::log(static_cast<double>(n)) / static_cast<double>(s));
  b.connectivity_rate = b.epsilon;
  if (alpha_hat <= 0.0) {
    b.vacuous = true;
    return b;
  }
  b.avg_distance = b.epsilon * diameter_hat / alpha_hat;
  b.effective_diameter = b.epsilon / (alpha_hat * tau);
  b.diameter = b.epsilon / alpha_hat;
  return b;
}

}  // namespace nfprop

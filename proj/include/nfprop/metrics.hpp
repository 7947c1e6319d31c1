#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nfprop/counts.hpp"

namespace nfprop {

struct Provenance {
  std::string mode;  // "p", "s", "exact", "bfs", "progressive", ...
  std::uint64_t s = 0;
  std::uint64_t n = 0;
  std::optional<std::uint64_t> rng_seed;
};

/// Distance metrics over ordered pairs (u, v), u != v. Undefined values are
/// std::nullopt.
struct DistanceMetrics {
  std::optional<double> avg_distance;
  std::optional<std::uint32_t> effective_diameter;
  std::uint32_t diameter = 0;
  double reachable_pairs = 0.0;
  double connectivity_rate = 0.0;
  /// neighborhood_function[r - 1]: estimated pairs at distance <= r.
  std::vector<double> neighborhood_function;
  Provenance provenance;
};

struct Residuals {
  std::optional<double> avg_distance;
  std::optional<double> effective_diameter;
  std::optional<double> diameter;
  std::optional<double> reachable_pairs;
  std::optional<double> connectivity_rate;
};

/// Absolute error bounds holding with probability >= 1 - 2/n^2 when
/// s >= ln(n) / epsilon^2. The alpha-scaled bounds are empty when alpha_hat = 0.
struct ErrorBounds {
  double epsilon = 0.0;
  std::optional<double> avg_distance;
  std::optional<double> effective_diameter;
  std::optional<double> diameter;
  double connectivity_rate = 0.0;
  bool vacuous = false;
};

inline constexpr double kDefaultTau = 0.9;

/// ceil(ln(n) / epsilon^2) clamped to [1, n].
std::size_t sample_size(std::size_t n, double epsilon);

DistanceMetrics metrics_from_counts(const CollisionCounts& c, double tau = kDefaultTau,
                                    Provenance provenance = {});

/// Per-metric (exact - est) / exact; empty where the exact value is zero or
/// undefined, or the estimate is undefined.
Residuals residuals(const DistanceMetrics& exact, const DistanceMetrics& est);

ErrorBounds error_bounds(std::size_t n, std::size_t s, double alpha_hat, std::uint32_t diameter_hat,
                         double tau = kDefaultTau);

}  // namespace nfprop

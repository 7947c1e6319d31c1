#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "nfprop/counts.hpp"
#include "nfprop/graph.hpp"
#include "nfprop/metrics.hpp"
#include "nfprop/propagate.hpp"

namespace nfprop {

enum class Engine { kP, kS };

struct GraphOptions {
  std::string path;
  bool directed = false;
  std::size_t num_nodes = 0;  // pads isolated nodes when larger than the labels seen
};

struct EstimateOptions {
  GraphOptions graph;
  std::optional<std::size_t> seeds;
  std::optional<double> epsilon;
  Engine engine = Engine::kP;
  double tau = kDefaultTau;
  std::uint64_t rng_seed = 0;
  std::size_t trials = 1;
  Direction direction = Direction::kPullOut;
  int threads = 0;
};

struct ExactOptions {
  GraphOptions graph;
  bool use_bfs = false;
  bool verify = false;
  double tau = kDefaultTau;
  Direction direction = Direction::kPullOut;
  int threads = 0;
};

struct ProgressiveOptions {
  GraphOptions graph;
  std::vector<std::size_t> schedule{16, 64, 256};
  double stop_rel = 0.01;
  std::uint64_t rng_seed = 0;
  double tau = kDefaultTau;
  Direction direction = Direction::kPullOut;
  int threads = 0;
};

struct TrialRecord {
  std::optional<std::uint64_t> rng_seed;
  DistanceMetrics metrics;
  std::optional<Residuals> residuals;
  std::uint64_t edge_scans = 0;
};

struct RunReport {
  std::string command;
  std::string graph_path;
  std::size_t n = 0;
  std::size_t m = 0;
  bool directed = false;
  nlohmann::ordered_json config;
  std::vector<TrialRecord> trials;
  std::optional<DistanceMetrics> exact;
  std::optional<ErrorBounds> bounds;
  std::optional<bool> verified;
  std::vector<ProgressiveStep> progressive_steps;
  std::optional<std::size_t> progressive_used;
  std::optional<bool> progressive_converged;
  std::map<std::string, double> timing_ms;
};

/// Thrown when engines disagree under --verify.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

RunReport run_estimate(const EstimateOptions& opts);
RunReport run_compare(const EstimateOptions& opts);
RunReport run_exact(const ExactOptions& opts);
RunReport run_progressive(const ProgressiveOptions& opts);

nlohmann::ordered_json metrics_to_json(const DistanceMetrics& m);
nlohmann::ordered_json to_json(const RunReport& r);
/// One row per trial (or per step for progressive runs); undefined cells empty.
std::string to_csv(const RunReport& r);

}  // namespace nfprop

#include "nfprop/report.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <sstream>

#include "nfprop/oracle.hpp"

namespace nfprop {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

const char* direction_name(Direction d) { return d == Direction::kPullOut ? "out" : "in"; }

Graph load(const GraphOptions& g, RunReport& report) {
  auto t0 = Clock::now();
  Graph graph = load_edge_list(EdgeListSource{g.path}, g.directed, g.num_nodes);
  report.timing_ms["load"] = elapsed_ms(t0);
  report.graph_path = g.path;
  report.n = graph.num_nodes();
  report.m = graph.num_arcs();
  report.directed = graph.directed();
  return graph;
}

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json residuals_to_json(const Residuals& r) {
  Json j;
  j["avg_distance"] = optional_json(r.avg_distance);
  j["effective_diameter"] = optional_json(r.effective_diameter);
  j["diameter"] = optional_json(r.diameter);
  j["reachable_pairs"] = optional_json(r.reachable_pairs);
  j["connectivity_rate"] = optional_json(r.connectivity_rate);
  return j;
}

Json bounds_to_json(const ErrorBounds& b) {
  Json j;
  j["epsilon"] = b.epsilon;
  j["avg_distance"] = optional_json(b.avg_distance);
  j["effective_diameter"] = optional_json(b.effective_diameter);
  j["diameter"] = optional_json(b.diameter);
  j["connectivity_rate"] = b.connectivity_rate;
  j["vacuous"] = b.vacuous;
  return j;
}

// Mean and sample standard deviation over the defined values.
Json summarize(const std::vector<std::optional<double>>& values) {
  double sum = 0.0;
  std::size_t k = 0;
  for (auto& v : values)
    if (v) sum += *v, ++k;
  Json j;
  if (k == 0) {
    j["mean"] = nullptr;
    j["stddev"] = nullptr;
    return j;
  }
  const double mean = sum / static_cast<double>(k);
  j["mean"] = mean;
  if (k < 2) {
    j["stddev"] = nullptr;
    return j;
  }
  double ss = 0.0;
  for (auto& v : values)
    if (v) ss += (*v - mean) * (*v - mean);
  j["stddev"] = std::sqrt(ss / static_cast<double>(k - 1));
  return j;
}

std::optional<double> widen(std::optional<std::uint32_t> v) {
  if (!v) return std::nullopt;
  return static_cast<double>(*v);
}

struct MetricColumn {
  const char* name;
  std::optional<double> (*metric)(const DistanceMetrics&);
  std::optional<double> (*residual)(const Residuals&);
};

const MetricColumn kColumns[] = {
    {"avg_distance", [](const DistanceMetrics& m) { return m.avg_distance; },
     [](const Residuals& r) { return r.avg_distance; }},
    {"effective_diameter", [](const DistanceMetrics& m) { return widen(m.effective_diameter); },
     [](const Residuals& r) { return r.effective_diameter; }},
    {"diameter", [](const DistanceMetrics& m) { return std::optional<double>(m.diameter); },
     [](const Residuals& r) { return r.diameter; }},
    {"reachable_pairs", [](const DistanceMetrics& m) { return std::optional<double>(m.reachable_pairs); },
     [](const Residuals& r) { return r.reachable_pairs; }},
    {"connectivity_rate", [](const DistanceMetrics& m) { return std::optional<double>(m.connectivity_rate); },
     [](const Residuals& r) { return r.connectivity_rate; }},
};

Json base_config(const GraphOptions& g, double tau, Direction dir) {
  Json c;
  c["directed"] = g.directed;
  c["tau"] = tau;
  c["direction"] = direction_name(dir);
  return c;
}

void validate_tau(double tau) {
  if (!(tau > 0.0 && tau <= 1.0)) throw std::invalid_argument("tau must lie in (0, 1]");
}

// Resolves the seed count for one graph; zero means the graph is empty.
std::size_t resolve_seed_count(const EstimateOptions& opts, std::size_t n) {
  if (n == 0) return 0;
  if (opts.seeds) return *opts.seeds;
  if (opts.epsilon) return n < 2 ? n : sample_size(n, *opts.epsilon);
  throw std::invalid_argument("one of seeds or epsilon is required");
}

RunReport estimate_trials(const EstimateOptions& opts, const char* command, Graph& g) {
  validate_tau(opts.tau);
  if (opts.trials == 0) throw std::invalid_argument("trials must be >= 1");
  RunReport report;
  report.command = command;
  g = load(opts.graph, report);
  const std::string mode = opts.engine == Engine::kP ? "p" : "s";

  const std::size_t s = resolve_seed_count(opts, g.num_nodes());
  report.config = base_config(opts.graph, opts.tau, opts.direction);
  report.config["mode"] = mode;
  report.config["seeds"] = s;
  report.config["epsilon"] = optional_json(opts.epsilon);
  report.config["rng_seed"] = opts.rng_seed;
  report.config["trials"] = opts.trials;

  auto t0 = Clock::now();
  for (std::size_t t = 0; t < opts.trials; ++t) {
    const std::uint64_t seed = opts.rng_seed + t;
    CollisionCounts counts;
    if (s > 0) {
      SeedSet seeds = sample_seeds(g, s, seed);
      counts = opts.engine == Engine::kP ? propagate_p(g, seeds, opts.direction, opts.threads)
                                         : propagate_s(g, seeds, opts.direction, opts.threads);
    }
    counts.n = g.num_nodes();
    counts.s = s;
    TrialRecord rec;
    rec.rng_seed = seed;
    rec.metrics = metrics_from_counts(counts, opts.tau, {mode, 0, 0, seed});
    rec.edge_scans = counts.edge_scans;
    report.trials.push_back(std::move(rec));
  }
  report.timing_ms["estimate"] = elapsed_ms(t0);

  if (g.num_nodes() >= 2 && s >= 1) {
    const auto& first = report.trials.front().metrics;
    report.bounds = error_bounds(g.num_nodes(), s, first.connectivity_rate, first.diameter, opts.tau);
  }
  return report;
}

}  // namespace

RunReport run_estimate(const EstimateOptions& opts) {
  Graph g;
  return estimate_trials(opts, "estimate", g);
}

RunReport run_compare(const EstimateOptions& opts) {
  Graph g;
  RunReport report = estimate_trials(opts, "compare", g);
  auto t0 = Clock::now();
  CollisionCounts exact = propagate_exact(g, opts.direction, opts.threads);
  exact.n = g.num_nodes();
  exact.s = g.num_nodes();
  report.exact = metrics_from_counts(exact, opts.tau, {"exact", 0, 0, std::nullopt});
  report.timing_ms["exact"] = elapsed_ms(t0);
  for (auto& t : report.trials) t.residuals = residuals(*report.exact, t.metrics);
  return report;
}

RunReport run_exact(const ExactOptions& opts) {
  validate_tau(opts.tau);
  RunReport report;
  report.command = "exact";
  Graph g = load(opts.graph, report);
  report.config = base_config(opts.graph, opts.tau, opts.direction);
  report.config["engine"] = opts.use_bfs ? "bfs" : "propagate";
  report.config["verify"] = opts.verify;

  auto via_propagate = [&] {
    CollisionCounts c = propagate_exact(g, opts.direction, opts.threads);
    c.n = c.s = g.num_nodes();
    return c;
  };
  auto via_bfs = [&] {
    ExactNeighborhoodFunction nf = exact_nf(g, opts.direction, opts.threads);
    CollisionCounts c;
    c.n = c.s = g.num_nodes();
    std::uint64_t prev = 0;
    for (auto v : nf.counts_by_hop) c.count_all.push_back(v - prev), prev = v;
    return c;
  };

  auto t0 = Clock::now();
  CollisionCounts primary = opts.use_bfs ? via_bfs() : via_propagate();
  report.timing_ms["exact"] = elapsed_ms(t0);
  if (opts.verify) {
    t0 = Clock::now();
    CollisionCounts other = opts.use_bfs ? via_propagate() : via_bfs();
    report.timing_ms["verify"] = elapsed_ms(t0);
    if (!(other == primary)) throw VerificationError("propagate and BFS engines disagree");
    report.verified = true;
  }
  TrialRecord rec;
  rec.metrics = metrics_from_counts(primary, opts.tau, {opts.use_bfs ? "bfs" : "exact", 0, 0, std::nullopt});
  rec.edge_scans = primary.edge_scans;
  report.trials.push_back(std::move(rec));
  return report;
}

RunReport run_progressive(const ProgressiveOptions& opts) {
  validate_tau(opts.tau);
  RunReport report;
  report.command = "progressive";
  Graph g = load(opts.graph, report);
  const auto schedule = clamp_schedule(opts.schedule, g.num_nodes());
  report.config = base_config(opts.graph, opts.tau, opts.direction);
  report.config["schedule"] = schedule;
  report.config["stop_rel"] = opts.stop_rel;
  report.config["rng_seed"] = opts.rng_seed;

  auto t0 = Clock::now();
  TrialRecord rec;
  rec.rng_seed = opts.rng_seed;
  if (schedule.empty()) {
    CollisionCounts empty;
    rec.metrics = metrics_from_counts(empty, opts.tau, {"progressive", 0, 0, opts.rng_seed});
    report.progressive_used = 0;
    report.progressive_converged = false;
  } else {
    ProgressiveResult res = propagate_progressive(g, schedule, opts.stop_rel, opts.rng_seed,
                                                  opts.direction, opts.tau, opts.threads);
    rec.metrics = res.steps.back().metrics;
    rec.edge_scans = res.counts.edge_scans;
    report.progressive_steps = std::move(res.steps);
    report.progressive_used = res.used;
    report.progressive_converged = res.converged;
  }
  report.timing_ms["progressive"] = elapsed_ms(t0);
  report.trials.push_back(std::move(rec));
  return report;
}

Json metrics_to_json(const DistanceMetrics& m) {
  Json j;
  j["avg_distance"] = optional_json(m.avg_distance);
  j["effective_diameter"] = optional_json(m.effective_diameter);
  j["diameter"] = m.diameter;
  j["reachable_pairs"] = m.reachable_pairs;
  j["connectivity_rate"] = m.connectivity_rate;
  j["neighborhood_function"] = m.neighborhood_function;
  Json p;
  p["mode"] = m.provenance.mode;
  p["seeds"] = m.provenance.s;
  p["n"] = m.provenance.n;
  p["rng_seed"] = optional_json(m.provenance.rng_seed);
  j["provenance"] = std::move(p);
  // No pairs means nothing to average over; keep the defined-ness explicit.
  if (m.provenance.n == 0) {
    j["diameter"] = nullptr;
    j["reachable_pairs"] = nullptr;
    j["connectivity_rate"] = nullptr;
  }
  return j;
}

Json to_json(const RunReport& r) {
  Json j;
  j["command"] = r.command;
  j["graph"] = {{"path", r.graph_path}, {"n", r.n}, {"m", r.m}, {"directed", r.directed}};
  j["config"] = r.config;

  Json trials = Json::array();
  for (const auto& t : r.trials) {
    Json row;
    row["rng_seed"] = optional_json(t.rng_seed);
    row["metrics"] = metrics_to_json(t.metrics);
    if (t.residuals) row["residuals"] = residuals_to_json(*t.residuals);
    row["edge_scans"] = t.edge_scans;
    trials.push_back(std::move(row));
  }
  j["trials"] = std::move(trials);

  if (r.trials.size() > 1) {
    Json agg;
    for (const auto& col : kColumns) {
      std::vector<std::optional<double>> vals;
      for (const auto& t : r.trials) vals.push_back(col.metric(t.metrics));
      agg[col.name] = summarize(vals);
    }
    j["aggregate"] = std::move(agg);
    if (r.trials.front().residuals) {
      Json ragg;
      for (const auto& col : kColumns) {
        std::vector<std::optional<double>> vals;
        for (const auto& t : r.trials) vals.push_back(col.residual(*t.residuals));
        ragg[col.name] = summarize(vals);
      }
      j["residual_aggregate"] = std::move(ragg);
    }
  }
  if (r.exact) j["exact"] = metrics_to_json(*r.exact);
  if (r.bounds) j["error_bounds"] = bounds_to_json(*r.bounds);
  if (r.verified) j["verified"] = *r.verified;
  if (r.progressive_used) {
    Json steps = Json::array();
    for (const auto& s : r.progressive_steps)
      steps.push_back({{"seeds", s.seeds}, {"metrics", metrics_to_json(s.metrics)}});
    j["progressive"] = {{"steps", std::move(steps)},
                        {"used", *r.progressive_used},
                        {"converged", r.progressive_converged.value_or(false)}};
  }
  Json timing;
  for (const auto& [phase, ms] : r.timing_ms) timing[phase] = ms;
  j["timing_ms"] = std::move(timing);
  return j;
}

namespace {

std::string cell(std::optional<double> v) {
  if (!v) return {};
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, *v);
  return std::string(buf, ptr);
}

void csv_metrics(std::ostringstream& out, const DistanceMetrics& m) {
  const bool empty = m.provenance.n == 0;
  for (const auto& col : kColumns) {
    auto v = col.metric(m);
    out << ',' << (empty ? std::string() : cell(v));
  }
}

}  // namespace

std::string to_csv(const RunReport& r) {
  std::ostringstream out;
  const bool with_residuals = !r.trials.empty() && r.trials.front().residuals.has_value();
  if (!r.progressive_steps.empty()) {
    out << "step,seeds";
    for (const auto& col : kColumns) out << ',' << col.name;
    out << '\n';
    for (std::size_t i = 0; i < r.progressive_steps.size(); ++i) {
      out << i << ',' << r.progressive_steps[i].seeds;
      csv_metrics(out, r.progressive_steps[i].metrics);
      out << '\n';
    }
    return out.str();
  }
  out << "trial,rng_seed,seeds";
  for (const auto& col : kColumns) out << ',' << col.name;
  if (with_residuals)
    for (const auto& col : kColumns) out << ",residual_" << col.name;
  out << '\n';
  for (std::size_t i = 0; i < r.trials.size(); ++i) {
    const auto& t = r.trials[i];
    out << i << ',' << (t.rng_seed ? std::to_string(*t.rng_seed) : std::string()) << ','
        << t.metrics.provenance.s;
    csv_metrics(out, t.metrics);
    if (with_residuals)
      for (const auto& col : kColumns) out << ',' << cell(col.residual(*t.residuals));
    out << '\n';
  }
  return out.str();
}

}  // namespace nfprop

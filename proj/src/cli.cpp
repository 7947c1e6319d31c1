#include "nfprop/cli.hpp"

#include <ostream>

#include "CLI11.hpp"
#include "nfprop/metrics.hpp"
#include "nfprop/report.hpp"

namespace nfprop {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonFlags {
  std::string graph;
  bool directed = false;
  bool reverse = false;
  std::size_t num_nodes = 0;
  double tau = kDefaultTau;
  std::string format = "json";
  int threads = 0;

  void attach(CLI::App* cmd, bool with_tau = true) {
    cmd->add_option("--graph", graph, "Edge list file (.gz accepted)")->required();
    cmd->add_flag("--directed", directed, "Treat edges as directed arcs");
    cmd->add_flag("--reverse", reverse, "Pull from in-neighbors instead of out-neighbors");
    cmd->add_option("--num-nodes", num_nodes, "Pad the graph with isolated nodes up to this count");
    if (with_tau) cmd->add_option("--tau", tau, "Effective-diameter percentile in (0, 1]");
    cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--threads", threads, "Worker threads (default: NFPROP_THREADS or all cores)")
        ->check(CLI::NonNegativeNumber);
  }

  GraphOptions graph_options() const { return {graph, directed, num_nodes}; }
  Direction direction() const { return reverse ? Direction::kPullIn : Direction::kPullOut; }

  void validate() const {
    if (!(tau > 0.0 && tau <= 1.0)) throw UsageError("--tau must lie in (0, 1]");
  }
};

struct EstimateFlags : CommonFlags {
  std::optional<std::size_t> seeds;
  std::optional<double> epsilon;
  std::string mode = "p";
  std::uint64_t rng_seed = 0;
  std::size_t trials = 1;

  void attach(CLI::App* cmd) {
    CommonFlags::attach(cmd);
    auto* s = cmd->add_option("--seeds", seeds, "Number of sampled seed nodes")->check(CLI::PositiveNumber);
    auto* e = cmd->add_option("--epsilon", epsilon, "Accuracy parameter; seeds = ceil(ln n / eps^2)");
    s->excludes(e);
    cmd->add_option("--mode", mode, "Engine: p (all seeds at once) or s (one seed at a time)")
        ->check(CLI::IsMember({"p", "s"}));
    cmd->add_option("--rng-seed", rng_seed, "Seed of the first trial; trial t uses rng-seed + t");
    cmd->add_option("--trials", trials, "Number of independent trials")->check(CLI::PositiveNumber);
  }

  void validate() const {
    CommonFlags::validate();
    if (!seeds && !epsilon) throw UsageError("exactly one of --seeds or --epsilon is required");
    if (epsilon && !(*epsilon > 0.0)) throw UsageError("--epsilon must be positive");
  }

  EstimateOptions options() const {
    EstimateOptions o;
    o.graph = graph_options();
    o.seeds = seeds;
    o.epsilon = epsilon;
    o.engine = mode == "s" ? Engine::kS : Engine::kP;
    o.tau = tau;
    o.rng_seed = rng_seed;
    o.trials = trials;
    o.direction = direction();
    o.threads = threads;
    return o;
  }
};

void emit(const RunReport& report, const std::string& format, std::ostream& out) {
  if (format == "csv")
    out << to_csv(report);
  else
    out << to_json(report).dump(2) << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Neighborhood-function and distance-metric estimation by seed propagation", "nfprop"};
  app.require_subcommand(1);

  EstimateFlags estimate;
  auto* estimate_cmd = app.add_subcommand("estimate", "Estimate distance metrics from sampled seeds");
  estimate.attach(estimate_cmd);

  EstimateFlags compare;
  auto* compare_cmd = app.add_subcommand("compare", "Estimate and report residuals against exact values");
  compare.attach(compare_cmd);

  CommonFlags exact;
  std::string engine = "propagate";
  bool verify = false;
  auto* exact_cmd = app.add_subcommand("exact", "Exact distance metrics");
  exact.attach(exact_cmd);
  exact_cmd->add_option("--engine", engine, "propagate or bfs")->check(CLI::IsMember({"propagate", "bfs"}));
  exact_cmd->add_flag("--verify", verify, "Run both engines and require identical counts");

  std::size_t nodes = 0;
  double epsilon = 0.0;
  auto* size_cmd = app.add_subcommand("sample-size", "Seeds needed for accuracy epsilon");
  size_cmd->add_option("--nodes", nodes, "Node count")->required();
  size_cmd->add_option("--epsilon", epsilon, "Accuracy parameter")->required();

  CommonFlags progressive;
  std::vector<std::size_t> schedule{16, 64, 256};
  double stop_rel = 0.01;
  std::uint64_t progressive_rng = 0;
  auto* progressive_cmd = app.add_subcommand("progressive", "Grow the seed sample until metrics settle");
  progressive.attach(progressive_cmd);
  progressive_cmd->add_option("--schedule", schedule, "Comma-separated increasing seed counts")
      ->delimiter(',');
  progressive_cmd->add_option("--stop-rel", stop_rel, "Relative-change threshold in (0, 1)");
  progressive_cmd->add_option("--rng-seed", progressive_rng, "Sampling seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*estimate_cmd) {
      estimate.validate();
      emit(run_estimate(estimate.options()), estimate.format, out);
    } else if (*compare_cmd) {
      compare.validate();
      emit(run_compare(compare.options()), compare.format, out);
    } else if (*exact_cmd) {
      exact.validate();
      ExactOptions o{exact.graph_options(), engine == "bfs", verify, exact.tau, exact.direction(),
                     exact.threads};
      emit(run_exact(o), exact.format, out);
    } else if (*size_cmd) {
      if (nodes < 2) throw UsageError("--nodes must be >= 2");
      if (!(epsilon > 0.0)) throw UsageError("--epsilon must be positive");
      out << sample_size(nodes, epsilon) << '\n';
    } else if (*progressive_cmd) {
      progressive.validate();
      if (schedule.empty() || schedule.front() == 0) throw UsageError("--schedule needs positive entries");
      for (std::size_t i = 1; i < schedule.size(); ++i)
        if (schedule[i] <= schedule[i - 1]) throw UsageError("--schedule must be strictly increasing");
      if (!(stop_rel > 0.0 && stop_rel < 1.0)) throw UsageError("--stop-rel must lie in (0, 1)");
      ProgressiveOptions o{progressive.graph_options(), schedule, stop_rel, progressive_rng,
                           progressive.tau, progressive.direction(), progressive.threads};
      emit(run_progressive(o), progressive.format, out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitOk;
}

}  // namespace nfprop

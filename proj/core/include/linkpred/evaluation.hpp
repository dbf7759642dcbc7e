#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "linkpred/graph.hpp"
#include "linkpred/metrics.hpp"
#include "linkpred/predictors.hpp"

namespace linkpred {

enum class MetricKind { tpr, aupr, auroc };

std::string to_string(MetricKind k);
std::optional<MetricKind> parse_metric(const std::string& name);

/// Number of nodes up to which AUPR/AUROC are computed by default.
inline constexpr std::size_t kCurveMetricGate = 1000;

/// Everything that determines an evaluation run. Defaults follow the
/// standard protocol: 10% removal, horizon 2, 1000 trials below 1000
/// nodes and 100 above, TPR always plus the curve metrics on small
/// networks. All fields are serialized into result files.
struct RunConfig {
  std::vector<Method> methods{kAllMethods, kAllMethods + std::size(kAllMethods)};
  int horizon = 2;
  double test_fraction = 0.1;
  std::uint64_t trials = 0;          // 0 = auto by network size
  std::vector<MetricKind> metrics;   // empty = auto by network size
  std::uint64_t master_seed = 1;
  EtaOptions eta;
  bool force_curve_metrics = false;  // lift the AUPR/AUROC size gate
};

/// Per-(method, metric, trial) results of one dataset, paired by design:
/// within a trial every method saw the identical train/test split.
struct TrialMatrix {
  std::string dataset;
  std::size_t n = 0;
  std::size_t m = 0;
  RunConfig config;                 // resolved: trials/metrics concrete
  std::vector<Method> methods;      // == config.methods
  std::vector<MetricKind> metrics;  // == config.metrics after resolution
  std::uint64_t trials = 0;
  // values[method][metric][trial]
  std::vector<std::vector<std::vector<double>>> values;

  std::span<const double> trial_values(std::size_t method_idx, std::size_t metric_idx) const {
    return values[method_idx][metric_idx];
  }
};

/// Remove a uniform random subset of max(1, floor(fraction * m)) edges.
/// Returns the training graph (same nodes and labels, possibly with
/// isolated nodes) and the removed edges sorted by (src, dst).
/// Deterministic in trial_seed.
std::pair<DirectedGraph, std::vector<EdgePair>> split_edges(const DirectedGraph& g,
                                                            double fraction,
                                                            std::uint64_t trial_seed);

/// Tie groups of one method's candidate scores on a training graph, with
/// the removed edges marked positive. DPAT is aggregated by score value
/// through degree histograms instead of enumerating the n^2 universe;
/// every other method goes through sparse candidate scoring plus the
/// implicit-zero group. Both routes produce exactly the groups a full
/// enumeration would.
std::vector<ScoreGroup> candidate_score_groups(const DirectedGraph& g_train,
                                               const DegreeTable& deg, Method method,
                                               const PredictorOptions& opts,
                                               std::span<const EdgePair> removed);

using ProgressFn = std::function<void(std::uint64_t done, std::uint64_t total)>;

/// Run the removal/predict/measure protocol over seeded trials. Trial t
/// uses derive_seed(master_seed, t); trials run on `jobs` threads into
/// pre-allocated slots, so results do not depend on scheduling.
TrialMatrix run_trials(const DirectedGraph& g, const std::string& dataset,
                       const RunConfig& config, unsigned jobs = 1,
                       const ProgressFn& progress = {});

struct Aggregate {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation
};

/// Mean and sample sd with compensated summation.
Aggregate aggregate(std::span<const double> values);

/// Per-method, per-metric summary of a whole matrix; indexes follow
/// tm.methods and tm.metrics.
std::vector<std::vector<Aggregate>> aggregate(const TrialMatrix& tm);

/// Serialize a trial matrix as a versioned JSON document. Byte-stable for
/// identical inputs.
void write_results(const TrialMatrix& tm, std::ostream& out);
TrialMatrix read_results(std::istream& in);

}  // namespace linkpred

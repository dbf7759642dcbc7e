#include "linkpred/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "linkpred/rng.hpp"

namespace linkpred {

using ordered_json = nlohmann::ordered_json;

std::string to_string(MetricKind k) {
  switch (k) {
    case MetricKind::tpr: return "tpr";
    case MetricKind::aupr: return "aupr";
    case MetricKind::auroc: return "auroc";
  }
  return "?";
}

std::optional<MetricKind> parse_metric(const std::string& name) {
  if (name == "tpr") return MetricKind::tpr;
  if (name == "aupr") return MetricKind::aupr;
  if (name == "auroc") return MetricKind::auroc;
  return std::nullopt;
}

std::pair<DirectedGraph, std::vector<EdgePair>> split_edges(const DirectedGraph& g,
                                                            double fraction,
                                                            std::uint64_t trial_seed) {
  if (!(fraction > 0.0 && fraction < 1.0))
    throw std::invalid_argument("test fraction must be in (0, 1)");
  const std::size_t m = g.edge_count();
  if (m < 2) throw std::invalid_argument("graph needs at least 2 edges to split");

  const std::size_t k = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::floor(fraction * static_cast<double>(m))));

  std::vector<EdgePair> edges = g.edges();
  SplitMix64 rng(trial_seed);
  partial_shuffle(edges, k, rng);

  std::vector<EdgePair> removed(edges.begin(), edges.begin() + k);
  std::sort(removed.begin(), removed.end());
  std::vector<EdgePair> kept(edges.begin() + k, edges.end());
  DirectedGraph train =
      DirectedGraph::build(g.node_count(), std::move(kept), g.labels());
  return {std::move(train), std::move(removed)};
}

namespace {

std::vector<ScoreGroup> dpat_groups(const DirectedGraph& g, const DegreeTable& deg,
                                    std::span<const EdgePair> removed) {
  // Pairs with equal (k_out(i), k_in(j)) share one DPAT score, so the
  // whole universe collapses into degree-histogram products; no n^2 pass.
  const std::size_t n = g.node_count();
  std::vector<std::uint64_t> out_hist(deg.k_out_max + 1, 0), in_hist(deg.k_in_max + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    ++out_hist[deg.k_out[v]];
    ++in_hist[deg.k_in[v]];
  }

  std::map<std::uint64_t, ScoreGroup> by_score;  // key = integer product
  auto group_of = [&](std::uint64_t key) -> ScoreGroup& {
    auto [it, inserted] = by_score.try_emplace(key);
    if (inserted) it->second.score = static_cast<double>(key);
    return it->second;
  };

  for (std::uint64_t a = 0; a <= deg.k_out_max; ++a) {
    if (out_hist[a] == 0) continue;
    for (std::uint64_t b = 0; b <= deg.k_in_max; ++b) {
      if (in_hist[b] == 0) continue;
      group_of(a * b).size += out_hist[a] * in_hist[b];
    }
  }
  for (std::size_t v = 0; v < n; ++v)  // self pairs are not candidates
    --group_of(static_cast<std::uint64_t>(deg.k_out[v]) * deg.k_in[v]).size;
  for (NodeId i = 0; i < n; ++i)  // neither are training edges
    for (NodeId j : g.out_neighbors(i))
      --group_of(static_cast<std::uint64_t>(deg.k_out[i]) * deg.k_in[j]).size;
  for (const auto& [i, j] : removed)
    ++group_of(static_cast<std::uint64_t>(deg.k_out[i]) * deg.k_in[j]).positives;

  std::vector<ScoreGroup> groups;
  groups.reserve(by_score.size());
  for (auto it = by_score.rbegin(); it != by_score.rend(); ++it)
    if (it->second.size > 0) groups.push_back(it->second);
  return groups;
}

}  // namespace

std::vector<ScoreGroup> candidate_score_groups(const DirectedGraph& g_train,
                                               const DegreeTable& deg, Method method,
                                               const PredictorOptions& opts,
                                               std::span<const EdgePair> removed) {
  if (method == Method::dpat) return dpat_groups(g_train, deg, removed);

  ScoredPairs sp = score_candidates(g_train, deg, method, opts, ScoreMode::sparse);
  MetricInput input;
  input.scores.reserve(sp.entries.size());
  input.positive.assign(sp.entries.size(), 0);
  std::size_t matched = 0;
  std::size_t r = 0;  // entries and removed are both (src, dst) sorted
  for (std::size_t e = 0; e < sp.entries.size(); ++e) {
    const auto& entry = sp.entries[e];
    input.scores.push_back(entry.score);
    EdgePair key{entry.src, entry.dst};
    while (r < removed.size() && removed[r] < key) ++r;
    if (r < removed.size() && removed[r] == key) {
      input.positive[e] = 1;
      ++matched;
    }
  }
  sp.implicit_zero_positives = removed.size() - matched;
  input.implicit_zero_count = sp.implicit_zero_count;
  input.implicit_zero_positives = sp.implicit_zero_positives;
  input.top_k = removed.size();
  return tie_groups(input);
}

namespace {

RunConfig resolve_config(const RunConfig& config, std::size_t n, std::size_t m) {
  RunConfig r = config;
  if (r.methods.empty()) throw std::invalid_argument("no methods selected");
  if (r.horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (r.trials == 0) r.trials = (n < 1000) ? 1000 : 100;
  if (r.metrics.empty()) {
    r.metrics.push_back(MetricKind::tpr);
    if (n < 1000) {
      r.metrics.push_back(MetricKind::aupr);
      r.metrics.push_back(MetricKind::auroc);
    }
  }
  bool curves = std::any_of(r.metrics.begin(), r.metrics.end(), [](MetricKind k) {
    return k != MetricKind::tpr;
  });
  if (curves && n > kCurveMetricGate && !r.force_curve_metrics)
    throw std::invalid_argument(
        "AUPR/AUROC are gated to networks with <= " + std::to_string(kCurveMetricGate) +
        " nodes; pass the override to compute them anyway");
  // a complete digraph leaves no true-negative candidates at any split
  if (curves && n >= 2 && m == n * (n - 1))
    throw std::invalid_argument("AUPR/AUROC are undefined on a complete graph");
  return r;
}

}  // namespace

TrialMatrix run_trials(const DirectedGraph& g, const std::string& dataset,
                       const RunConfig& config, unsigned jobs, const ProgressFn& progress) {
  TrialMatrix tm;
  tm.dataset = dataset;
  tm.n = g.node_count();
  tm.m = g.edge_count();
  tm.config = resolve_config(config, tm.n, tm.m);
  tm.methods = tm.config.methods;
  tm.metrics = tm.config.metrics;
  tm.trials = tm.config.trials;
  tm.values.assign(tm.methods.size(),
                   std::vector<std::vector<double>>(
                       tm.metrics.size(), std::vector<double>(tm.trials, 0.0)));

  const PredictorOptions popts{tm.config.horizon, tm.config.eta};
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> done{0};
  std::atomic<bool> abort{false};
  std::mutex shared_mutex;  // guards progress and the stored exception
  std::exception_ptr failure;

  auto worker = [&]() {
    try {
      for (;;) {
        if (abort.load(std::memory_order_relaxed)) return;
        const std::uint64_t t = next.fetch_add(1);
        if (t >= tm.trials) return;
        const std::uint64_t seed = derive_seed(tm.config.master_seed, t);
        auto [train, removed] = split_edges(g, tm.config.test_fraction, seed);
        const DegreeTable deg = degrees(train);
        for (std::size_t mi = 0; mi < tm.methods.size(); ++mi) {
          auto groups = candidate_score_groups(train, deg, tm.methods[mi], popts, removed);
          for (std::size_t ki = 0; ki < tm.metrics.size(); ++ki) {
            double v = 0.0;
            switch (tm.metrics[ki]) {
              case MetricKind::tpr: v = top_precision(groups, removed.size()); break;
              case MetricKind::aupr: v = aupr(groups); break;
              case MetricKind::auroc: v = auroc(groups); break;
            }
            tm.values[mi][ki][t] = v;
          }
        }
        const std::uint64_t d = done.fetch_add(1) + 1;
        if (progress) {
          std::lock_guard lock(shared_mutex);
          progress(d, tm.trials);
        }
      }
    } catch (...) {
      std::lock_guard lock(shared_mutex);
      if (!failure) failure = std::current_exception();
      abort.store(true, std::memory_order_relaxed);
    }
  };

  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return tm;
}

Aggregate aggregate(std::span<const double> values) {
  Aggregate a;
  if (values.empty()) return a;
  double sum = 0.0, comp = 0.0;
  for (double v : values) {  // Kahan
    double y = v - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  a.mean = sum / static_cast<double>(values.size());
  if (values.size() < 2) return a;
  double ss = 0.0, comp2 = 0.0;
  for (double v : values) {
    double d = (v - a.mean) * (v - a.mean);
    double y = d - comp2;
    double t = ss + y;
    comp2 = (t - ss) - y;
    ss = t;
  }
  a.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
  return a;
}

std::vector<std::vector<Aggregate>> aggregate(const TrialMatrix& tm) {
  std::vector<std::vector<Aggregate>> out(tm.methods.size());
  for (std::size_t mi = 0; mi < tm.methods.size(); ++mi) {
    out[mi].resize(tm.metrics.size());
    for (std::size_t ki = 0; ki < tm.metrics.size(); ++ki)
      out[mi][ki] = aggregate(tm.trial_values(mi, ki));
  }
  return out;
}

namespace {

constexpr const char* kResultsSchema = "linkpred-results/1";

std::string eta_variant_name(EtaVariant v) {
  return v == EtaVariant::equations ? "equations" : "pseudocode";
}
std::string eta_degree_name(EtaDegree d) {
  return d == EtaDegree::sum ? "sum" : "union";
}

}  // namespace

void write_results(const TrialMatrix& tm, std::ostream& out) {
  ordered_json j;
  j["schema"] = kResultsSchema;
  j["dataset"] = tm.dataset;
  j["n"] = tm.n;
  j["m"] = tm.m;

  ordered_json cfg;
  ordered_json method_names = ordered_json::array();
  for (Method m : tm.methods) method_names.push_back(to_string(m));
  cfg["methods"] = method_names;
  cfg["horizon"] = tm.config.horizon;
  cfg["fraction"] = tm.config.test_fraction;
  cfg["trials"] = tm.trials;
  ordered_json metric_names = ordered_json::array();
  for (MetricKind k : tm.metrics) metric_names.push_back(to_string(k));
  cfg["metrics"] = metric_names;
  cfg["seed"] = tm.config.master_seed;
  cfg["tie_policy"] = "fractional";
  cfg["eta_variant"] = eta_variant_name(tm.config.eta.variant);
  cfg["eta_degree"] = eta_degree_name(tm.config.eta.degree);
  j["config"] = cfg;

  ordered_json values;
  ordered_json summary;
  for (std::size_t mi = 0; mi < tm.methods.size(); ++mi) {
    ordered_json per_metric;
    ordered_json per_metric_summary;
    for (std::size_t ki = 0; ki < tm.metrics.size(); ++ki) {
      per_metric[to_string(tm.metrics[ki])] = tm.values[mi][ki];
      Aggregate a = aggregate(tm.values[mi][ki]);
      per_metric_summary[to_string(tm.metrics[ki])] = {{"mean", a.mean}, {"sd", a.sd}};
    }
    values[to_string(tm.methods[mi])] = per_metric;
    summary[to_string(tm.methods[mi])] = per_metric_summary;
  }
  j["values"] = values;
  j["summary"] = summary;

  out << j.dump(2) << '\n';
}

TrialMatrix read_results(std::istream& in) {
  ordered_json j = ordered_json::parse(in);
  if (!j.contains("schema") || j["schema"] != kResultsSchema)
    throw std::runtime_error("unrecognized results schema");

  TrialMatrix tm;
  tm.dataset = j.at("dataset").get<std::string>();
  tm.n = j.at("n").get<std::size_t>();
  tm.m = j.at("m").get<std::size_t>();

  const auto& cfg = j.at("config");
  tm.config.methods.clear();
  for (const auto& name : cfg.at("methods")) {
    auto m = parse_method(name.get<std::string>());
    if (!m) throw std::runtime_error("unknown method in results file: " + name.dump());
    tm.config.methods.push_back(*m);
  }
  tm.config.horizon = cfg.at("horizon").get<int>();
  tm.config.test_fraction = cfg.at("fraction").get<double>();
  tm.config.trials = cfg.at("trials").get<std::uint64_t>();
  tm.config.metrics.clear();
  for (const auto& name : cfg.at("metrics")) {
    auto k = parse_metric(name.get<std::string>());
    if (!k) throw std::runtime_error("unknown metric in results file: " + name.dump());
    tm.config.metrics.push_back(*k);
  }
  tm.config.master_seed = cfg.at("seed").get<std::uint64_t>();
  if (cfg.at("tie_policy").get<std::string>() != "fractional")
    throw std::runtime_error("unsupported tie policy in results file");
  tm.config.eta.variant = cfg.at("eta_variant").get<std::string>() == "pseudocode"
                              ? EtaVariant::pseudocode
                              : EtaVariant::equations;
  tm.config.eta.degree = cfg.at("eta_degree").get<std::string>() == "union"
                             ? EtaDegree::total_union
                             : EtaDegree::sum;

  tm.methods = tm.config.methods;
  tm.metrics = tm.config.metrics;
  tm.trials = tm.config.trials;
  tm.values.resize(tm.methods.size());
  const auto& values = j.at("values");
  for (std::size_t mi = 0; mi < tm.methods.size(); ++mi) {
    const auto& per_metric = values.at(to_string(tm.methods[mi]));
    tm.values[mi].resize(tm.metrics.size());
    for (std::size_t ki = 0; ki < tm.metrics.size(); ++ki) {
      tm.values[mi][ki] = per_metric.at(to_string(tm.metrics[ki])).get<std::vector<double>>();
      if (tm.values[mi][ki].size() != tm.trials)
        throw std::runtime_error("trial count mismatch in results file");
    }
  }
  return tm;
}

}  // namespace linkpred

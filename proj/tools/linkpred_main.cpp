// Command-line front end: ingest, predict, evaluate, rank, compare.
//
// Exit codes: 0 success, 2 usage or input error, 3 runtime/numeric error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "linkpred/evaluation.hpp"
#include "linkpred/graph.hpp"
#include "linkpred/paths.hpp"
#include "linkpred/predictors.hpp"
#include "linkpred/statrank.hpp"

namespace {

using namespace linkpred;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

EdgeListFormat parse_format(const std::string& name) {
  if (name == "whitespace") return EdgeListFormat::whitespace;
  if (name == "csv") return EdgeListFormat::csv;
  throw UsageError("unknown edge-list format: " + name);
}

DirectedGraph load_graph(const std::string& path, const std::string& format) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return parse_edge_list(in, parse_format(format));
  } catch (const ParseError& e) {
    throw UsageError(path + ":" + std::to_string(e.line()) + ": " + e.message());
  }
}

Method parse_method_or_throw(const std::string& name) {
  auto m = parse_method(name);
  if (!m) throw UsageError("unknown method: " + name);
  return *m;
}

std::vector<std::string> split_commas(const std::string& csv) {
  std::vector<std::string> parts;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

EtaOptions parse_eta(const std::string& variant, const std::string& degree) {
  EtaOptions eta;
  if (variant == "equations") eta.variant = EtaVariant::equations;
  else if (variant == "pseudocode") eta.variant = EtaVariant::pseudocode;
  else throw UsageError("unknown eta variant: " + variant);
  if (degree == "sum") eta.degree = EtaDegree::sum;
  else if (degree == "union") eta.degree = EtaDegree::total_union;
  else throw UsageError("unknown eta degree kind: " + degree);
  return eta;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  return out;
}

// Aligned-text rendering: first `left_cols` columns left-aligned, the
// rest right-aligned, two spaces between columns.
void print_aligned(const std::vector<std::vector<std::string>>& rows, std::size_t left_cols,
                   std::ostream& out) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c)
      width[c] = std::max(width[c], row[c].size());
  }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::string cell = row[c];
      if (c < left_cols) cell.resize(width[c], ' ');
      else cell.insert(0, width[c] - cell.size(), ' ');
      line += cell;
      if (c + 1 < row.size()) line += "  ";
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  }
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

void render_rank_table(const RankTable& table, std::ostream& out) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"network", "row"};
  header.insert(header.end(), table.methods.begin(), table.methods.end());
  rows.push_back(header);
  for (std::size_t w = 0; w < table.networks.size(); ++w) {
    std::vector<std::string> score{table.networks[w], "score"};
    for (int s : table.scores[w]) score.push_back(std::to_string(s));
    rows.push_back(std::move(score));
    std::vector<std::string> rank{"", "rank"};
    for (double r : table.ranks[w]) rank.push_back(fixed(r, 1));
    rows.push_back(std::move(rank));
  }
  std::vector<std::string> avg{"average rank", ""};
  for (double r : table.average_rank) avg.push_back(fixed(r, 3));
  rows.push_back(std::move(avg));
  print_aligned(rows, 2, out);
}

void render_compare_table(const CompareTable& table, std::ostream& out) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{""};
  header.insert(header.end(), table.methods.begin(), table.methods.end());
  rows.push_back(header);
  for (std::size_t i = 0; i < table.methods.size(); ++i) {
    std::vector<std::string> row{table.methods[i]};
    for (std::size_t j = 0; j < table.methods.size(); ++j) {
      if (j > i) row.push_back(fixed(table.p_value[i][j], 2));
      else if (j < i && table.direction[i][j] != ' ') row.push_back({table.direction[i][j]});
      else row.push_back(".");
    }
    rows.push_back(std::move(row));
  }
  print_aligned(rows, 1, out);
}

std::string stem_of(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

int cmd_ingest(const std::string& input, const std::string& format, std::string out_path,
               std::string labels_path) {
  DirectedGraph g = load_graph(input, format);
  if (out_path.empty()) out_path = stem_of(input) + ".canonical.tsv";
  if (labels_path.empty()) labels_path = stem_of(input) + ".labels.tsv";

  auto out = open_output(out_path);
  serialize_canonical(g, out);
  auto labels_out = open_output(labels_path);
  for (NodeId v = 0; v < g.node_count(); ++v)
    labels_out << v << '\t' << g.label(v) << '\n';

  DegreeTable deg = degrees(g);
  std::cout << "nodes\t" << g.node_count() << '\n'
            << "edges\t" << g.edge_count() << '\n'
            << "k_in_max\t" << deg.k_in_max << '\n'
            << "k_out_max\t" << deg.k_out_max << '\n'
            << "k_total_max\t" << deg.k_total_max << '\n'
            << "canonical\t" << out_path << '\n'
            << "labels\t" << labels_path << '\n';
  return kExitOk;
}

int cmd_predict(const std::string& input, const std::string& format,
                const std::string& method_name, int horizon, std::size_t top_n,
                const EtaOptions& eta) {
  DirectedGraph g = load_graph(input, format);
  Method method = parse_method_or_throw(method_name);
  DegreeTable deg = degrees(g);
  PredictorOptions opts{horizon, eta};
  char buf[64];
  for (const ScoredEntry& e : top_candidates(g, deg, method, opts, top_n)) {
    std::snprintf(buf, sizeof buf, "%.12g", e.score);
    std::cout << g.label(e.src) << '\t' << g.label(e.dst) << '\t' << buf << '\n';
  }
  return kExitOk;
}

int cmd_evaluate(const std::string& input, const std::string& format, std::string dataset,
                 const std::string& methods_csv, const std::string& metrics_csv,
                 int horizon, double fraction, std::uint64_t trials, std::uint64_t seed,
                 const EtaOptions& eta, bool force_curves, unsigned jobs,
                 const std::string& out_path) {
  DirectedGraph g = load_graph(input, format);
  if (dataset.empty()) dataset = stem_of(input);

  RunConfig config;
  config.horizon = horizon;
  config.test_fraction = fraction;
  config.trials = trials;
  config.master_seed = seed;
  config.eta = eta;
  config.force_curve_metrics = force_curves;
  if (methods_csv != "all") {
    config.methods.clear();
    for (const auto& name : split_commas(methods_csv))
      config.methods.push_back(parse_method_or_throw(name));
  }
  if (metrics_csv != "auto") {
    for (const auto& name : split_commas(metrics_csv)) {
      auto k = parse_metric(name);
      if (!k) throw UsageError("unknown metric: " + name);
      config.metrics.push_back(*k);
    }
  }

  const std::uint64_t step = 10;
  ProgressFn progress = [&](std::uint64_t done, std::uint64_t total) {
    if (done == total || done % std::max<std::uint64_t>(1, total / step) == 0)
      std::cerr << "evaluate " << dataset << ": trial " << done << "/" << total << '\n';
  };
  TrialMatrix tm = run_trials(g, dataset, config, jobs, progress);

  auto out = open_output(out_path);
  write_results(tm, out);
  std::cerr << "wrote " << out_path << '\n';
  return kExitOk;
}

int cmd_rank(const std::vector<std::string>& result_paths, const std::string& metric_name,
             double alpha, bool pretty, const std::string& out_path) {
  auto metric = parse_metric(metric_name);
  if (!metric) throw UsageError("unknown metric: " + metric_name);

  std::vector<TrialMatrix> networks;
  for (const auto& path : result_paths) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    networks.push_back(read_results(in));
  }
  RankTable table;
  try {
    table = average_significant_rank(networks, *metric, alpha);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  auto emit = [&](std::ostream& out) {
    if (pretty) render_rank_table(table, out);
    else write_rank_table(table, *metric, alpha, out);
  };
  if (out_path.empty()) {
    emit(std::cout);
  } else {
    auto out = open_output(out_path);
    emit(out);
    std::cerr << "wrote " << out_path << '\n';
  }
  return kExitOk;
}

int cmd_compare(const std::string& rank_path, const std::string& adjust, double alpha,
                bool pretty, const std::string& out_path) {
  if (adjust != "bhy" && adjust != "none") throw UsageError("unknown adjustment: " + adjust);
  std::ifstream in(rank_path);
  if (!in) throw UsageError("cannot open " + rank_path);
  RankTable table = read_rank_table(in);
  CompareTable cmp = pairwise_compare(table, adjust == "bhy", alpha);

  auto emit = [&](std::ostream& out) {
    if (pretty) render_compare_table(cmp, out);
    else write_compare_table(cmp, out);
  };
  if (out_path.empty()) {
    emit(std::cout);
  } else {
    auto out = open_output(out_path);
    emit(out);
    std::cerr << "wrote " << out_path << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Link prediction for directed networks: asymmetric "
               "similarity-popularity algorithms, directed baselines, and a "
               "trial-based evaluation harness"};
  app.require_subcommand(1);

  std::string input, format = "whitespace", out_path, labels_path;
  std::string method_name = "ALG2", methods_csv = "all", metrics_csv = "auto";
  std::string metric_name = "tpr", adjust = "bhy", dataset;
  std::vector<std::string> result_paths;
  int horizon = 2;
  std::size_t top_n = 20;
  double fraction = 0.1, alpha = 0.05;
  std::uint64_t trials = 0, seed = 1;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  bool force_curves = false, pretty = false;
  std::string eta_variant = "equations", eta_degree = "sum";

  auto* ingest = app.add_subcommand("ingest", "Normalize an edge list and emit stats");
  ingest->add_option("input", input, "edge-list file")->required();
  ingest->add_option("--format", format, "whitespace or csv");
  ingest->add_option("--out", out_path, "canonical edge list (default <stem>.canonical.tsv)");
  ingest->add_option("--labels", labels_path, "label map (default <stem>.labels.tsv)");

  auto* predict = app.add_subcommand("predict", "Rank the most likely missing links");
  predict->add_option("input", input, "edge-list file")->required();
  predict->add_option("--method", method_name, "one of ALG1 ALG2 DADA DCNE DHDI DHPI DJID DLHN DPAT DSAI DSOI");
  predict->add_option("--horizon", horizon, "hop limit for path-based methods");
  predict->add_option("--top", top_n, "number of pairs to output");
  predict->add_option("--format", format, "whitespace or csv");
  predict->add_option("--eta-variant", eta_variant, "equations or pseudocode");
  predict->add_option("--eta-degree", eta_degree, "sum or union");

  auto* evaluate = app.add_subcommand("evaluate", "Removal/predict/measure trials");
  evaluate->add_option("input", input, "edge-list file")->required();
  evaluate->add_option("--out", out_path, "results file (JSON)")->required();
  evaluate->add_option("--dataset", dataset, "dataset id (default: input stem)");
  evaluate->add_option("--methods", methods_csv, "comma list or 'all'");
  evaluate->add_option("--metrics", metrics_csv, "comma list of tpr,aupr,auroc or 'auto'");
  evaluate->add_option("--horizon", horizon, "hop limit for path-based methods");
  evaluate->add_option("--fraction", fraction, "test fraction of edges to remove");
  evaluate->add_option("--trials", trials, "trial count (0 = 1000 if n<1000 else 100)");
  evaluate->add_option("--seed", seed, "master seed; all randomness derives from it")
      ->envname("LINKPRED_SEED");
  evaluate->add_option("--jobs", jobs, "worker threads");
  evaluate->add_flag("--force-curves", force_curves,
                     "compute AUPR/AUROC even above the size gate");
  evaluate->add_option("--format", format, "whitespace or csv");
  evaluate->add_option("--eta-variant", eta_variant, "equations or pseudocode");
  evaluate->add_option("--eta-degree", eta_degree, "sum or union");

  auto* rank = app.add_subcommand("rank", "Average significant ranks across result files");
  rank->add_option("results", result_paths, "results files")->required()->expected(-1);
  rank->add_option("--metric", metric_name, "tpr, aupr or auroc");
  rank->add_option("--alpha", alpha, "significance level");
  rank->add_flag("--pretty", pretty, "aligned text instead of TSV");
  rank->add_option("--out", out_path, "rank table file (default stdout)");

  auto* compare = app.add_subcommand("compare", "Pairwise MWW comparison of a rank table");
  compare->add_option("rank_table", input, "rank table file")->required();
  compare->add_option("--adjust", adjust, "bhy or none");
  compare->add_option("--alpha", alpha, "significance level");
  compare->add_flag("--pretty", pretty, "aligned text instead of TSV");
  compare->add_option("--out", out_path, "comparison table file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*ingest) return cmd_ingest(input, format, out_path, labels_path);
    if (*predict)
      return cmd_predict(input, format, method_name, horizon, top_n,
                         parse_eta(eta_variant, eta_degree));
    if (*evaluate)
      return cmd_evaluate(input, format, dataset, methods_csv, metrics_csv, horizon,
                          fraction, trials, seed, parse_eta(eta_variant, eta_degree),
                          force_curves, jobs, out_path);
    if (*rank) return cmd_rank(result_paths, metric_name, alpha, pretty, out_path);
    if (*compare) return cmd_compare(input, adjust, alpha, pretty, out_path);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

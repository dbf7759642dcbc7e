#include "linkpred/predictors.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <queue>
#include <stdexcept>

#include "linkpred/paths.hpp"

namespace linkpred {

std::string to_string(Method m) {
  switch (m) {
    case Method::alg1: return "ALG1";
    case Method::alg2: return "ALG2";
    case Method::dada: return "DADA";
    case Method::dcne: return "DCNE";
    case Method::dhdi: return "DHDI";
    case Method::dhpi: return "DHPI";
    case Method::djid: return "DJID";
    case Method::dlhn: return "DLHN";
    case Method::dpat: return "DPAT";
    case Method::dsai: return "DSAI";
    case Method::dsoi: return "DSOI";
  }
  return "?";
}

std::optional<Method> parse_method(const std::string& name) {
  std::string up;
  for (char c : name) up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  for (Method m : kAllMethods)
    if (to_string(m) == up) return m;
  return std::nullopt;
}

double popularity(const DegreeTable& deg, NodeId i, NodeId j) {
  double den = std::log(static_cast<double>(deg.k_out_max) + 1.0) +
               std::log(static_cast<double>(deg.k_in_max) + 1.0);
  if (den == 0.0) return 0.0;  // edgeless graph
  double num = std::log(static_cast<double>(deg.k_out[i]) + 1.0) +
               std::log(static_cast<double>(deg.k_in[j]) + 1.0);
  return num / den;
}

namespace {

inline double attraction_product(const DirectedGraph& g, const DegreeTable& deg,
                                 NodeId from, NodeId to, const EtaOptions& opts) {
  const auto& kappa = (opts.degree == EtaDegree::sum) ? deg.k_sum : deg.k_total;
  const std::uint32_t kappa_max =
      (opts.degree == EtaDegree::sum) ? deg.k_sum_max : deg.k_total_max;
  const double log_max = std::log(static_cast<double>(kappa_max) + 2.0);
  double prod = 1.0;
  auto out = g.out_neighbors(from);
  auto in = g.in_neighbors(to);
  std::size_t a = 0, b = 0;
  while (a < out.size() && b < in.size()) {
    if (out[a] < in[b]) ++a;
    else if (in[b] < out[a]) ++b;
    else {
      prod *= std::log(static_cast<double>(kappa[out[a]]) + 2.0) / log_max;
      ++a;
      ++b;
    }
  }
  return prod;
}

inline double combine_attraction(double prod_out, double prod_in, EtaVariant variant) {
  if (variant == EtaVariant::pseudocode) {  // complement each product first
    prod_out = 1.0 - prod_out;
    prod_in = 1.0 - prod_in;
  }
  return 1.0 - (prod_in * prod_out + prod_in + prod_out) / 3.0;
}

}  // namespace

double local_attraction(const DirectedGraph& g, const DegreeTable& deg, NodeId i,
                        NodeId j, const EtaOptions& opts) {
  double prod_out = attraction_product(g, deg, i, j, opts);  // over out(i) ∩ in(j)
  double prod_in = attraction_product(g, deg, j, i, opts);   // over out(j) ∩ in(i)
  return combine_attraction(prod_out, prod_in, opts.variant);
}

double score_alg1(double pi, double dist) {
  if (std::isinf(dist)) return 0.0;
  if (dist == 0.0) return 1.0;
  if (pi <= 0.0) return 0.0;  // limit of the score as π -> 0
  return 1.0 / (1.0 + dist / pi);
}

double score_alg2(double pi, double eta, double dist) {
  if (std::isinf(dist)) return 0.0;
  return (pi + eta) / (1.0 + dist);
}

double score_baseline(const DirectedGraph& g, const DegreeTable& deg, Method method,
                      NodeId i, NodeId j) {
  const double kout = static_cast<double>(deg.k_out[i]);
  const double kin = static_cast<double>(deg.k_in[j]);
  if (method == Method::dpat) return kout * kin;

  auto common = common_out_in(g, i, j);
  if (common.empty()) return 0.0;  // covers every 0/0 form
  const double c = static_cast<double>(common.size());
  switch (method) {
    case Method::dada: {
      double s = 0.0;
      for (NodeId k : common) s += 1.0 / std::log(static_cast<double>(deg.k_total[k]));
      return s;
    }
    case Method::dcne: return c;
    case Method::dhdi: return c / std::max(kout, kin);
    case Method::dhpi: return c / std::min(kout, kin);
    case Method::djid: return c / (kout + kin - c);
    case Method::dlhn: return c / (kout * kin);
    case Method::dsai: return c / std::sqrt(kout * kin);
    case Method::dsoi: return c / (kout + kin);
    default: throw std::invalid_argument("not a baseline method: " + to_string(method));
  }
}

namespace {

bool is_path_method(Method m) { return m == Method::alg1 || m == Method::alg2; }

// Walks a source's sorted out-neighbor list in step with an ascending j
// loop, so edge membership costs O(1) amortized.
class EdgeCursor {
 public:
  explicit EdgeCursor(std::span<const NodeId> neighbors) : nb_(neighbors) {}
  bool is_edge(NodeId j) {
    while (pos_ < nb_.size() && nb_[pos_] < j) ++pos_;
    return pos_ < nb_.size() && nb_[pos_] == j;
  }

 private:
  std::span<const NodeId> nb_;
  std::size_t pos_ = 0;
};

// Nonzero candidates of one source for the neighbor indices: targets of a
// directed 2-path from i, excluding i itself and existing edges. Sorted.
void sparse_targets_of(const DirectedGraph& g, NodeId i, std::vector<NodeId>& out) {
  out.clear();
  for (NodeId k : g.out_neighbors(i))
    for (NodeId j : g.out_neighbors(k))
      if (j != i) out.push_back(j);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  std::erase_if(out, [&](NodeId j) { return g.has_edge(i, j); });
}

template <class Visit>
void visit_path_method(const DirectedGraph& g, const DegreeTable& deg, Method method,
                       const PredictorOptions& opts, bool sparse, Visit&& visit) {
  const WeightedEdgeMap w = (method == Method::alg1)
                                ? alg1_edge_weights(g, deg)
                                : alg2_edge_weights(g, deg, opts.eta);
  const std::size_t n = g.node_count();
  bool warned_degenerate = false;
  for (NodeId i = 0; i < n; ++i) {
    DistanceMap dm = bounded_dijkstra(g, w, i, opts.horizon);
    EdgeCursor edges(g.out_neighbors(i));
    for (NodeId j = 0; j < n; ++j) {
      if (j == i || edges.is_edge(j)) continue;
      double d = dm.dist[j];
      if (sparse && std::isinf(d)) continue;
      double pi = popularity(deg, i, j);
      double s;
      if (method == Method::alg1) {
        if (pi == 0.0 && !std::isinf(d) && !warned_degenerate) {
          std::cerr << "linkpred: reachable pair with zero popularity scored 0 by convention\n";
          warned_degenerate = true;
        }
        s = score_alg1(pi, d);
      } else {
        s = score_alg2(pi, local_attraction(g, deg, i, j, opts.eta), d);
      }
      visit(i, j, s);
    }
  }
}

template <class Visit>
void visit_neighbor_index(const DirectedGraph& g, const DegreeTable& deg, Method method,
                          bool sparse, Visit&& visit) {
  const std::size_t n = g.node_count();
  std::vector<NodeId> targets;
  for (NodeId i = 0; i < n; ++i) {
    if (sparse) {
      sparse_targets_of(g, i, targets);
      for (NodeId j : targets) visit(i, j, score_baseline(g, deg, method, i, j));
    } else {
      EdgeCursor edges(g.out_neighbors(i));
      for (NodeId j = 0; j < n; ++j) {
        if (j == i || edges.is_edge(j)) continue;
        visit(i, j, score_baseline(g, deg, method, i, j));
      }
    }
  }
}

}  // namespace

void for_each_candidate_score(const DirectedGraph& g, const DegreeTable& deg,
                              Method method, const PredictorOptions& opts,
                              const std::function<void(NodeId, NodeId, double)>& visit) {
  if (is_path_method(method)) {
    visit_path_method(g, deg, method, opts, /*sparse=*/false, visit);
  } else if (method == Method::dpat) {
    const std::size_t n = g.node_count();
    for (NodeId i = 0; i < n; ++i) {
      const double kout = static_cast<double>(deg.k_out[i]);
      EdgeCursor edges(g.out_neighbors(i));
      for (NodeId j = 0; j < n; ++j) {
        if (j == i || edges.is_edge(j)) continue;
        visit(i, j, kout * static_cast<double>(deg.k_in[j]));
      }
    }
  } else {
    visit_neighbor_index(g, deg, method, /*sparse=*/false, visit);
  }
}

ScoredPairs score_candidates(const DirectedGraph& g, const DegreeTable& deg,
                             Method method, const PredictorOptions& opts,
                             ScoreMode mode) {
  if (is_path_method(method) && opts.horizon < 1)
    throw std::invalid_argument("horizon must be >= 1");
  const std::uint64_t n = g.node_count();
  ScoredPairs sp;
  sp.universe_size = (n == 0) ? 0 : n * (n - 1) - g.edge_count();

  if (mode == ScoreMode::sparse) {
    if (method == Method::dpat)
      throw std::invalid_argument(
          "DPAT is nonzero for nearly every pair; sparse mode would be the full "
          "universe in disguise, request full_stream instead");
    auto take = [&](NodeId i, NodeId j, double s) {
      if (s != 0.0) sp.entries.push_back({i, j, s});
    };
    if (is_path_method(method))
      visit_path_method(g, deg, method, opts, /*sparse=*/true, take);
    else
      visit_neighbor_index(g, deg, method, /*sparse=*/true, take);
  } else {
    for_each_candidate_score(g, deg, method, opts,
                             [&](NodeId i, NodeId j, double s) { sp.entries.push_back({i, j, s}); });
  }
  sp.implicit_zero_count = sp.universe_size - sp.entries.size();
  return sp;
}

std::vector<ScoredEntry> top_candidates(const DirectedGraph& g, const DegreeTable& deg,
                                        Method method, const PredictorOptions& opts,
                                        std::size_t top_n) {
  auto better = [](const ScoredEntry& a, const ScoredEntry& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.src != b.src) return a.src < b.src;
    return a.dst < b.dst;
  };
  if (top_n == 0) return {};

  // Min-heap on "goodness": the worst kept entry sits on top.
  std::priority_queue<ScoredEntry, std::vector<ScoredEntry>, decltype(better)> heap(better);
  for_each_candidate_score(g, deg, method, opts, [&](NodeId i, NodeId j, double s) {
    ScoredEntry e{i, j, s};
    if (heap.size() < top_n) {
      heap.push(e);
    } else if (better(e, heap.top())) {
      heap.pop();
      heap.push(e);
    }
  });

  std::vector<ScoredEntry> out;
  out.reserve(heap.size());
  while (!heap.empty()) {
    out.push_back(heap.top());
    heap.pop();
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace linkpred

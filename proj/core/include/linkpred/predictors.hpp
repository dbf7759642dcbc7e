#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "linkpred/graph.hpp"

namespace linkpred {

/// The eleven scoring methods: the two weighted-shortest-path algorithms
/// plus nine directed local similarity indices.
enum class Method {
  alg1,
  alg2,
  dada,  // directed Adamic-Adar
  dcne,  // directed common neighbors
  dhdi,  // directed hub depromoted
  dhpi,  // directed hub promoted
  djid,  // directed Jaccard
  dlhn,  // directed Leicht-Holme-Newman
  dpat,  // directed preferential attachment
  dsai,  // directed Salton
  dsoi,  // directed Sorensen
};

inline constexpr Method kAllMethods[] = {
    Method::alg1, Method::alg2, Method::dada, Method::dcne, Method::dhdi, Method::dhpi,
    Method::djid, Method::dlhn, Method::dpat, Method::dsai, Method::dsoi};

std::string to_string(Method m);
std::optional<Method> parse_method(const std::string& name);

/// The local-attraction equations and their pseudocode variant disagree on
/// whether the per-direction products are complemented before combining;
/// both readings are selectable. Likewise the total degree entering the
/// attraction term can be in+out (the operational default) or |in ∪ out|.
enum class EtaVariant { equations, pseudocode };
enum class EtaDegree { sum, total_union };

struct EtaOptions {
  EtaVariant variant = EtaVariant::equations;
  EtaDegree degree = EtaDegree::sum;
};

/// Popularity term π(i,j): normalized log combination of the source
/// out-degree and target in-degree. In (0,1] when either degree is
/// positive; 0 when both are 0. Asymmetric in general.
double popularity(const DegreeTable& deg, NodeId i, NodeId j);

/// Local attraction η(i,j) in [0,1] from low-degree nodes on directed
/// 2-paths i->k->j and j->k->i. Empty neighborhoods give 0.
double local_attraction(const DirectedGraph& g, const DegreeTable& deg, NodeId i,
                        NodeId j, const EtaOptions& opts = {});

/// Score of the first algorithm: (1 + d/π)^{-1}. Infinite distance maps
/// to 0; so does the degenerate π = 0 with finite d (limit convention).
double score_alg1(double pi, double dist);

/// Score of the second algorithm: (π + η) / (1 + d). Infinite distance
/// maps to 0. Range [0, 2].
double score_alg2(double pi, double eta, double dist);

/// One of the nine directed baseline indices. Indeterminate 0/0 forms
/// score 0.
double score_baseline(const DirectedGraph& g, const DegreeTable& deg, Method method,
                      NodeId i, NodeId j);

struct ScoredEntry {
  NodeId src;
  NodeId dst;
  double score;
};

/// Scores over the candidate universe (all ordered non-self pairs not in
/// the training edge set). Entries plus the implicit-zero group always
/// partition the universe.
struct ScoredPairs {
  std::vector<ScoredEntry> entries;  // sorted by (src, dst)
  std::uint64_t implicit_zero_count = 0;
  std::uint64_t implicit_zero_positives = 0;  // filled by the harness
  std::uint64_t universe_size = 0;            // n(n-1) - m_train
};

enum class ScoreMode {
  sparse,      // emit only provably nonzero pairs
  full_stream  // enumerate every candidate pair
};

struct PredictorOptions {
  int horizon = 2;  // hop limit for alg1/alg2 path distances
  EtaOptions eta;
};

/// Score every candidate pair of the training graph with one method.
///
/// Sparse mode stores only nonzero-scoring pairs (reachable within the
/// horizon for alg1/alg2, sharing a directed 2-path for the neighbor
/// indices) and counts the rest as implicit zeros. DPAT is nonzero for
/// almost every pair and rejects sparse mode. Full-stream mode
/// materializes the whole universe, zeros included; meant for small
/// graphs and equivalence tests.
ScoredPairs score_candidates(const DirectedGraph& g, const DegreeTable& deg,
                             Method method, const PredictorOptions& opts,
                             ScoreMode mode);

/// Visit every candidate pair with its score, in (src, dst) order,
/// without materializing anything. Backs full_stream mode and top-k
/// prediction over large graphs.
void for_each_candidate_score(const DirectedGraph& g, const DegreeTable& deg,
                              Method method, const PredictorOptions& opts,
                              const std::function<void(NodeId, NodeId, double)>& visit);

/// Top-n candidates by score; ties broken by (src, dst) order so output
/// is deterministic.
std::vector<ScoredEntry> top_candidates(const DirectedGraph& g, const DegreeTable& deg,
                                        Method method, const PredictorOptions& opts,
                                        std::size_t top_n);

}  // namespace linkpred

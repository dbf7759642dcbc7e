#pragma once

#include <limits>
#include <vector>

#include "linkpred/graph.hpp"
#include "linkpred/predictors.hpp"

namespace linkpred {

inline constexpr double kInfinite = std::numeric_limits<double>::infinity();

/// Positive length per directed edge, stored in the graph's out-edge CSR
/// order. w(i,j) and w(j,i) are independent values.
class WeightedEdgeMap {
 public:
  WeightedEdgeMap() = default;
  WeightedEdgeMap(const DirectedGraph& g, std::vector<double> weights);

  double at_edge_index(std::size_t idx) const { return weights_[idx]; }
  double at(const DirectedGraph& g, NodeId i, NodeId j) const {
    return weights_[g.out_edge_index(i, j)];
  }
  std::size_t size() const { return weights_.size(); }

 private:
  std::vector<double> weights_;
};

/// Weight map of the first algorithm: each edge gets the popularity term
/// of its endpoints, so links between popular nodes are long and do not
/// certify similarity.
WeightedEdgeMap alg1_edge_weights(const DirectedGraph& g, const DegreeTable& deg);

/// Weight map of the second algorithm: w = 2π / (1 + η). Edges with high
/// local attraction are shortened, pulling their endpoints together.
WeightedEdgeMap alg2_edge_weights(const DirectedGraph& g, const DegreeTable& deg,
                                  const EtaOptions& opts = {});

/// Single-source distances, hop-bounded. d[target] is the minimum weight
/// sum over directed paths of at most `horizon` edges, +inf when no such
/// path exists.
struct DistanceMap {
  NodeId source = 0;
  std::vector<double> dist;  // size n
};

/// Exact hop-bounded shortest paths from one source. The search runs over
/// (node, hops-used) states: a plain Dijkstra that merely stops expanding
/// at depth h can miss a cheaper within-budget path that a pruned longer
/// prefix would have reached. horizon must be >= 1.
DistanceMap bounded_dijkstra(const DirectedGraph& g, const WeightedEdgeMap& w,
                             NodeId source, int horizon);

/// Sparse all-sources view: per source, only the targets reachable within
/// the horizon, ascending by target id (the source itself at distance 0).
struct HorizonDistances {
  struct Entry {
    NodeId target;
    double dist;
  };
  std::vector<std::vector<Entry>> by_source;
};

/// bounded_dijkstra from every source, keeping finite entries only.
/// Independent per-source searches run on `jobs` threads.
HorizonDistances all_sources_within_horizon(const DirectedGraph& g,
                                            const WeightedEdgeMap& w, int horizon,
                                            unsigned jobs = 1);

}  // namespace linkpred

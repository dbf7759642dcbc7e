#pragma once

#include <string>

#include "linkpred/graph.hpp"
#include "linkpred/rng.hpp"

namespace linkpred::testing {

// Four-node chain-with-shortcut used throughout: 1->2, 1->3, 2->3, 3->4.
// Labels "1".."4" map to ids 0..3.
inline const char* kG1Text = "1 2\n1 3\n2 3\n3 4\n";

inline DirectedGraph g1() { return parse_edge_list(std::string(kG1Text)); }

// Erdos-Renyi style digraph: every ordered pair independently with
// probability p. Node count >= 2.
inline DirectedGraph random_graph(SplitMix64& rng, std::size_t max_n) {
  const std::size_t n = 2 + rng.next_below(max_n - 1);
  const double p = 0.05 + 0.4 * rng.next_double();
  std::vector<EdgePair> edges;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = 0; j < n; ++j)
      if (i != j && rng.next_double() < p) edges.emplace_back(i, j);
  return DirectedGraph::build(n, std::move(edges));
}

inline std::vector<double> random_weights(SplitMix64& rng, std::size_t count,
                                          double lo = 0.1, double hi = 2.0) {
  std::vector<double> w(count);
  for (double& v : w) v = lo + (hi - lo) * rng.next_double();
  return w;
}

}  // namespace linkpred::testing

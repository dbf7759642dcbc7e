#pragma once

#include "linkpred/graph.hpp"
#include "linkpred/rng.hpp"

namespace linkpred::bench {

// Sparse random digraph with average out-degree around `avg_degree`.
inline DirectedGraph sparse_graph(std::size_t n, double avg_degree, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const double p = avg_degree / static_cast<double>(n - 1);
  std::vector<EdgePair> edges;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = 0; j < n; ++j)
      if (i != j && rng.next_double() < p) edges.emplace_back(i, j);
  return DirectedGraph::build(n, std::move(edges));
}

}  // namespace linkpred::bench

#include "linkpred/paths.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <thread>

namespace linkpred {

WeightedEdgeMap::WeightedEdgeMap(const DirectedGraph& g, std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.size() != g.edge_count())
    throw std::invalid_argument("weight count does not match edge count");
  for (double w : weights_)
    if (!(w > 0.0)) throw std::invalid_argument("edge weights must be positive");
}

WeightedEdgeMap alg1_edge_weights(const DirectedGraph& g, const DegreeTable& deg) {
  std::vector<double> w;
  w.reserve(g.edge_count());
  for (NodeId i = 0; i < g.node_count(); ++i)
    for (NodeId j : g.out_neighbors(i)) w.push_back(popularity(deg, i, j));
  return WeightedEdgeMap(g, std::move(w));
}

WeightedEdgeMap alg2_edge_weights(const DirectedGraph& g, const DegreeTable& deg,
                                  const EtaOptions& opts) {
  std::vector<double> w;
  w.reserve(g.edge_count());
  for (NodeId i = 0; i < g.node_count(); ++i)
    for (NodeId j : g.out_neighbors(i)) {
      double pi = popularity(deg, i, j);
      double eta = local_attraction(g, deg, i, j, opts);
      w.push_back(2.0 * pi / (1.0 + eta));
    }
  return WeightedEdgeMap(g, std::move(w));
}

DistanceMap bounded_dijkstra(const DirectedGraph& g, const WeightedEdgeMap& w,
                             NodeId source, int horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  const std::size_t n = g.node_count();
  const std::size_t layers = static_cast<std::size_t>(horizon) + 1;

  // dist[k*n + v] = best distance to v over paths of at most k hops seen
  // so far. Final answer per node is the minimum across layers.
  std::vector<double> dist(layers * n, kInfinite);
  struct State {
    double d;
    NodeId node;
    std::uint32_t hops;
    bool operator>(const State& o) const { return d > o.d; }
  };
  std::priority_queue<State, std::vector<State>, std::greater<State>> pq;
  dist[source] = 0.0;
  pq.push({0.0, source, 0});

  while (!pq.empty()) {
    auto [d, v, hops] = pq.top();
    pq.pop();
    if (d > dist[hops * n + v]) continue;
    // Dominated if some layer with no more hops already reaches v as
    // cheaply; expanding it cannot improve any target.
    bool dominated = false;
    for (std::uint32_t k = 0; k < hops; ++k)
      if (dist[k * n + v] <= d) {
        dominated = true;
        break;
      }
    if (dominated || hops == static_cast<std::uint32_t>(horizon)) continue;
    std::size_t edge_idx = g.out_edges_begin(v);
    for (NodeId u : g.out_neighbors(v)) {
      double nd = d + w.at_edge_index(edge_idx++);
      std::size_t slot = (hops + 1) * n + u;
      if (nd < dist[slot]) {
        dist[slot] = nd;
        pq.push({nd, u, hops + 1});
      }
    }
  }

  DistanceMap out;
  out.source = source;
  out.dist.assign(n, kInfinite);
  for (std::size_t k = 0; k < layers; ++k)
    for (std::size_t v = 0; v < n; ++v)
      out.dist[v] = std::min(out.dist[v], dist[k * n + v]);
  return out;
}

HorizonDistances all_sources_within_horizon(const DirectedGraph& g,
                                            const WeightedEdgeMap& w, int horizon,
                                            unsigned jobs) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  const std::size_t n = g.node_count();
  HorizonDistances out;
  out.by_source.resize(n);

  auto run = [&](NodeId begin, NodeId end) {
    for (NodeId s = begin; s < end; ++s) {
      DistanceMap dm = bounded_dijkstra(g, w, s, horizon);
      auto& row = out.by_source[s];
      for (NodeId t = 0; t < n; ++t)
        if (dm.dist[t] < kInfinite) row.push_back({t, dm.dist[t]});
    }
  };

  if (jobs <= 1 || n < 2) {
    run(0, static_cast<NodeId>(n));
    return out;
  }
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(n));
  std::vector<std::thread> workers;
  const std::size_t chunk = (n + jobs - 1) / jobs;
  for (unsigned t = 0; t < jobs; ++t) {
    NodeId lo = static_cast<NodeId>(std::min<std::size_t>(t * chunk, n));
    NodeId hi = static_cast<NodeId>(std::min<std::size_t>((t + 1) * chunk, n));
    if (lo < hi) workers.emplace_back(run, lo, hi);
  }
  for (auto& th : workers) th.join();
  return out;
}

}  // namespace linkpred

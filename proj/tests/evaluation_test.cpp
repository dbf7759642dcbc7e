#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "fixtures.hpp"
#include "linkpred/evaluation.hpp"
#include "linkpred/rng.hpp"

using namespace linkpred;
using namespace linkpred::testing;

TEST_SUITE("evaluation") {

TEST_CASE("split size follows max(1, floor(fraction*m))") {
  DirectedGraph g = g1();
  auto [train, removed] = split_edges(g, 0.1, 99);
  CHECK(removed.size() == 1);  // floor(0.4) = 0 -> max(1, .) = 1
  CHECK(train.edge_count() == 3);

  std::vector<EdgePair> ten;
  for (NodeId i = 0; i < 10; ++i) ten.emplace_back(i, (i + 1) % 10);
  DirectedGraph ring = DirectedGraph::build(10, ten);
  auto [train2, removed2] = split_edges(ring, 0.5, 1);
  CHECK(removed2.size() == 5);
  CHECK(train2.edge_count() == 5);
}

TEST_CASE("splits are deterministic, disjoint, and uniform-ish") {
  DirectedGraph g = g1();
  auto [ta, ra] = split_edges(g, 0.1, 4242);
  auto [tb, rb] = split_edges(g, 0.1, 4242);
  CHECK(ra == rb);
  CHECK(labeled_edges(ta) == labeled_edges(tb));

  for (const auto& e : ra) CHECK(!ta.has_edge(e.first, e.second));

  // every edge of G1 gets removed roughly equally often
  std::map<EdgePair, int> hits;
  const int rounds = 4000;
  for (int s = 0; s < rounds; ++s) {
    auto [t, r] = split_edges(g, 0.1, derive_seed(5, s));
    ++hits[r.front()];
  }
  REQUIRE(hits.size() == 4);
  for (const auto& [e, c] : hits) {
    CHECK(c > rounds / 4 - 150);
    CHECK(c < rounds / 4 + 150);
  }
}

TEST_CASE("split validation") {
  DirectedGraph g = g1();
  CHECK_THROWS_AS(split_edges(g, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(split_edges(g, 1.0, 1), std::invalid_argument);
  DirectedGraph tiny = DirectedGraph::build(2, {{0, 1}});
  CHECK_THROWS_AS(split_edges(tiny, 0.1, 1), std::invalid_argument);
}

TEST_CASE("G1 trial TPRs match the hand enumeration of single-edge removals") {
  // Removing one edge from G1 and scoring with DCNE gives a TPR that
  // depends only on which edge was removed:
  //   (1,2): two score-1 pairs, neither positive        -> 0
  //   (1,3): positive ties with (2,4) at score 1, k=1   -> 1/2
  //   (2,3): single score-1 pair, not the positive      -> 0
  //   (3,4): everything scores 0, one tie group of 9    -> 1/9
  DirectedGraph g = g1();
  std::map<std::pair<std::string, std::string>, double> expected{
      {{"1", "2"}, 0.0},
      {{"1", "3"}, 0.5},
      {{"2", "3"}, 0.0},
      {{"3", "4"}, 1.0 / 9.0}};

  RunConfig config;
  config.methods = {Method::dcne};
  config.metrics = {MetricKind::tpr};
  config.trials = 25;
  config.master_seed = 31;
  TrialMatrix tm = run_trials(g, "g1", config);

  for (std::uint64_t t = 0; t < tm.trials; ++t) {
    auto [train, removed] = split_edges(g, 0.1, derive_seed(31, t));
    REQUIRE(removed.size() == 1);
    auto key = std::pair(g.label(removed[0].first), g.label(removed[0].second));
    CHECK(tm.values[0][0][t] == doctest::Approx(expected.at(key)).epsilon(1e-12));
  }
}

TEST_CASE("trial matrix shape and reproducibility") {
  DirectedGraph g = g1();
  RunConfig config;
  config.methods = {Method::dcne, Method::dada};
  config.metrics = {MetricKind::tpr, MetricKind::auroc};
  config.trials = 6;
  config.master_seed = 8;

  TrialMatrix a = run_trials(g, "g1", config);
  TrialMatrix b = run_trials(g, "g1", config, /*jobs=*/3);
  REQUIRE(a.values.size() == 2);
  REQUIRE(a.values[0].size() == 2);
  REQUIRE(a.values[0][0].size() == 6);
  for (std::size_t mi = 0; mi < 2; ++mi)
    for (std::size_t ki = 0; ki < 2; ++ki)
      for (std::size_t t = 0; t < 6; ++t)
        CHECK(a.values[mi][ki][t] == b.values[mi][ki][t]);  // bit-identical
}

TEST_CASE("auto trial count and metric selection") {
  SplitMix64 rng(606);
  // sparse 56-node graph
  std::vector<EdgePair> edges;
  for (NodeId i = 0; i + 1 < 56; ++i) edges.emplace_back(i, i + 1);
  DirectedGraph small = DirectedGraph::build(56, std::move(edges));
  RunConfig config;
  config.methods = {Method::dcne};
  TrialMatrix tm = run_trials(small, "small", config, 4);
  CHECK(tm.trials == 1000);
  REQUIRE(tm.metrics.size() == 3);  // tpr + aupr + auroc below 1000 nodes

  std::vector<EdgePair> big_edges;
  for (NodeId i = 0; i + 1 < 1200; ++i) big_edges.emplace_back(i, i + 1);
  DirectedGraph big = DirectedGraph::build(1200, std::move(big_edges));
  TrialMatrix big_tm = run_trials(big, "big", config, 4);
  CHECK(big_tm.trials == 100);
  REQUIRE(big_tm.metrics.size() == 1);
  CHECK(big_tm.metrics[0] == MetricKind::tpr);
}

TEST_CASE("curve metrics are gated by size unless overridden") {
  std::vector<EdgePair> edges;
  for (NodeId i = 0; i + 1 < 1200; ++i) edges.emplace_back(i, i + 1);
  DirectedGraph big = DirectedGraph::build(1200, std::move(edges));
  RunConfig config;
  config.methods = {Method::dcne};
  config.metrics = {MetricKind::auroc};
  config.trials = 2;
  CHECK_THROWS_AS(run_trials(big, "big", config), std::invalid_argument);
  config.force_curve_metrics = true;
  TrialMatrix tm = run_trials(big, "big", config, 4);
  CHECK(tm.values[0][0].size() == 2);
}

TEST_CASE("complete graphs are rejected for curve metrics up front") {
  std::vector<EdgePair> all;
  for (NodeId i = 0; i < 4; ++i)
    for (NodeId j = 0; j < 4; ++j)
      if (i != j) all.emplace_back(i, j);
  DirectedGraph complete = DirectedGraph::build(4, std::move(all));
  RunConfig config;
  config.methods = {Method::dcne};
  config.metrics = {MetricKind::auroc};
  config.trials = 2;
  CHECK_THROWS_AS(run_trials(complete, "complete", config), std::invalid_argument);
  CHECK_THROWS_AS(run_trials(complete, "complete", config, /*jobs=*/3), std::invalid_argument);
  // TPR alone is still fine (the removed set is the whole candidate set)
  config.metrics = {MetricKind::tpr};
  TrialMatrix tm = run_trials(complete, "complete", config);
  CHECK(tm.values[0][0][0] == 1.0);
}

TEST_CASE("worker exceptions surface instead of terminating") {
  DirectedGraph g = g1();
  RunConfig config;
  config.methods = {Method::dcne};
  config.metrics = {MetricKind::tpr};
  config.trials = 8;
  ProgressFn poison = [](std::uint64_t done, std::uint64_t) {
    if (done >= 3) throw std::runtime_error("mid-run failure");
  };
  CHECK_THROWS_AS(run_trials(g, "g1", config, /*jobs=*/1, poison), std::runtime_error);
  CHECK_THROWS_AS(run_trials(g, "g1", config, /*jobs=*/3, poison), std::runtime_error);
}

TEST_CASE("aggregate") {
  std::vector<double> constant{0.25, 0.25, 0.25};
  CHECK(aggregate(constant).mean == 0.25);
  CHECK(aggregate(constant).sd == 0.0);

  std::vector<double> two{0.0, 1.0};
  CHECK(aggregate(two).mean == 0.5);
  CHECK(aggregate(two).sd == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));

  SplitMix64 rng(2025);
  std::vector<double> v(1000);
  for (double& x : v) x = rng.next_double();
  Aggregate base = aggregate(v);
  std::vector<double> shuffled = v;
  partial_shuffle(shuffled, shuffled.size(), rng);
  Aggregate shuf = aggregate(shuffled);
  CHECK(shuf.mean == doctest::Approx(base.mean).epsilon(1e-12));
  CHECK(shuf.sd == doctest::Approx(base.sd).epsilon(1e-12));
}

TEST_CASE("grouped candidate scores equal full enumeration for every method") {
  SplitMix64 rng(909);
  PredictorOptions opts;
  for (int it = 0; it < 8; ++it) {
    DirectedGraph g = random_graph(rng, 16);
    if (g.edge_count() < 2) continue;
    auto [train, removed] = split_edges(g, 0.15, rng.next());
    DegreeTable deg = degrees(train);

    for (Method m : kAllMethods) {
      auto fast = candidate_score_groups(train, deg, m, opts, removed);

      // reference: enumerate the whole universe and label positives
      MetricInput full;
      for_each_candidate_score(train, deg, m, opts, [&](NodeId i, NodeId j, double s) {
        full.scores.push_back(s);
        full.positive.push_back(
            std::binary_search(removed.begin(), removed.end(), EdgePair{i, j}) ? 1 : 0);
      });
      auto slow = tie_groups(full);

      REQUIRE_MESSAGE(fast.size() == slow.size(), to_string(m));
      std::uint64_t pos_total = 0;
      for (std::size_t k = 0; k < fast.size(); ++k) {
        CHECK(fast[k].score == slow[k].score);
        CHECK(fast[k].size == slow[k].size);
        CHECK(fast[k].positives == slow[k].positives);
        pos_total += fast[k].positives;
      }
      CHECK(pos_total == removed.size());  // universe contains every removed edge
    }
  }
}

TEST_CASE("results file round trip and byte determinism") {
  DirectedGraph g = g1();
  RunConfig config;
  config.methods = {Method::alg2, Method::dcne};
  config.metrics = {MetricKind::tpr, MetricKind::aupr};
  config.trials = 5;
  config.master_seed = 77;
  TrialMatrix tm = run_trials(g, "g1", config);

  std::ostringstream first, second;
  write_results(tm, first);
  write_results(tm, second);
  CHECK(first.str() == second.str());

  std::istringstream in(first.str());
  TrialMatrix back = read_results(in);
  CHECK(back.dataset == tm.dataset);
  CHECK(back.n == tm.n);
  CHECK(back.m == tm.m);
  CHECK(back.trials == tm.trials);
  CHECK(back.methods == tm.methods);
  CHECK(back.metrics == tm.metrics);
  CHECK(back.config.master_seed == tm.config.master_seed);
  REQUIRE(back.values.size() == tm.values.size());
  for (std::size_t mi = 0; mi < tm.values.size(); ++mi)
    for (std::size_t ki = 0; ki < tm.values[mi].size(); ++ki)
      CHECK(back.values[mi][ki] == tm.values[mi][ki]);

  std::ostringstream third;
  write_results(back, third);
  CHECK(third.str() == first.str());
}

TEST_CASE("results reader rejects foreign documents") {
  std::istringstream bad("{\"schema\": \"something-else/9\"}");
  CHECK_THROWS(read_results(bad));
}

}  // TEST_SUITE

#include <doctest.h>

#include <cmath>
#include <limits>
#include <map>

#include "fixtures.hpp"
#include "linkpred/paths.hpp"
#include "linkpred/predictors.hpp"
#include "oracles.hpp"

using namespace linkpred;
using namespace linkpred::testing;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
const double kLog2 = std::log(2.0);
const double kLog3 = std::log(3.0);
const double kLog4 = std::log(4.0);
const double kLog5 = std::log(5.0);
const double kPi14 = (kLog3 + kLog2) / (2 * kLog3);
}  // namespace

TEST_SUITE("predictors") {

TEST_CASE("popularity on G1") {
  DegreeTable deg = degrees(g1());
  CHECK(popularity(deg, 0, 3) == doctest::Approx(kPi14).epsilon(1e-12));  // (1,4)
  CHECK(popularity(deg, 0, 2) == doctest::Approx(1.0).epsilon(1e-12));    // maxima attained
  CHECK(popularity(deg, 3, 0) == 0.0);  // k_out(4) = 0 and k_in(1) = 0
}

TEST_CASE("local attraction on G1") {
  DirectedGraph g = g1();
  DegreeTable deg = degrees(g);
  // (1,4): common neighbor "3" has maximal degree, so the product is 1
  // and the combined term vanishes.
  CHECK(local_attraction(g, deg, 0, 3) == doctest::Approx(0.0).epsilon(1e-12));
  // (1,3): product over {"2"} = log4/log5.
  const double eta13 = 1.0 - (2.0 * (kLog4 / kLog5) + 1.0) / 3.0;
  CHECK(local_attraction(g, deg, 0, 2) == doctest::Approx(eta13).epsilon(1e-12));
  CHECK(eta13 == doctest::Approx(0.0924).epsilon(1e-3));
  // no directed 2-paths in either direction
  CHECK(local_attraction(g, deg, 1, 0) == 0.0);  // (2,1)
}

TEST_CASE("pseudocode attraction variant complements the products") {
  DirectedGraph g = g1();
  DegreeTable deg = degrees(g);
  EtaOptions pseudo{EtaVariant::pseudocode, EtaDegree::sum};
  // (1,4): raw products are 1 (out) and 1 (in, empty), so the pseudocode
  // reading complements them to 0 and returns 1 instead of 0.
  CHECK(local_attraction(g, deg, 0, 3, pseudo) == doctest::Approx(1.0).epsilon(1e-12));
  // empty both ways: products 1 -> complements 0 -> eta 1 under pseudocode
  CHECK(local_attraction(g, deg, 1, 0, pseudo) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("attraction degree kind matters with reciprocal edges") {
  // a<->b plus b->c gives (a,c) the common neighbor b, whose sum degree
  // is 3 but union degree 2. A separate hub d keeps b away from both
  // maxima so the two normalizations actually differ.
  DirectedGraph g = DirectedGraph::build(
      7, {{0, 1}, {1, 0}, {1, 2}, {3, 4}, {3, 5}, {3, 6}, {4, 3}});
  DegreeTable deg = degrees(g);
  CHECK(deg.k_sum[1] == 3);
  CHECK(deg.k_total[1] == 2);
  CHECK(deg.k_sum_max == 4);    // hub d
  CHECK(deg.k_total_max == 3);  // hub d
  // products: out-direction over {b}, in-direction empty (= 1)
  const double prod_sum = std::log(3.0 + 2.0) / std::log(static_cast<double>(deg.k_sum_max) + 2.0);
  const double prod_uni = std::log(2.0 + 2.0) / std::log(static_cast<double>(deg.k_total_max) + 2.0);
  const double eta_sum_expect = 1.0 - (prod_sum * 1.0 + 1.0 + prod_sum) / 3.0;
  const double eta_uni_expect = 1.0 - (prod_uni * 1.0 + 1.0 + prod_uni) / 3.0;
  CHECK(local_attraction(g, deg, 0, 2, {EtaVariant::equations, EtaDegree::sum}) ==
        doctest::Approx(eta_sum_expect).epsilon(1e-12));
  CHECK(local_attraction(g, deg, 0, 2, {EtaVariant::equations, EtaDegree::total_union}) ==
        doctest::Approx(eta_uni_expect).epsilon(1e-12));
  CHECK(eta_sum_expect != eta_uni_expect);
}

TEST_CASE("first algorithm score") {
  CHECK(score_alg1(0.5, kInf) == 0.0);
  CHECK(score_alg1(0.5, 0.0) == 1.0);
  CHECK(score_alg1(0.0, 1.0) == 0.0);  // limit convention
  // G1 (1,4): d/pi is exactly 2
  const double d14 = 1.0 + kLog2 / kLog3;
  CHECK(score_alg1(kPi14, d14) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("second algorithm score") {
  CHECK(score_alg2(1.0, 1.0, kInf) == 0.0);
  CHECK(score_alg2(1.0, 1.0, 0.0) == 2.0);
  const double eta13 = 1.0 - (2.0 * (kLog4 / kLog5) + 1.0) / 3.0;
  const double d14 = 2.0 / (1.0 + eta13) + 2.0 * kLog2 / kLog3;
  CHECK(score_alg2(kPi14, 0.0, d14) == doctest::Approx(0.199251634918).epsilon(1e-9));
}

TEST_CASE("baseline scores on G1 pair (1,4)") {
  DirectedGraph g = g1();
  DegreeTable deg = degrees(g);
  auto s = [&](Method m) { return score_baseline(g, deg, m, 0, 3); };
  CHECK(s(Method::dcne) == 1.0);
  CHECK(s(Method::dada) == doctest::Approx(1.0 / kLog3).epsilon(1e-12));
  CHECK(s(Method::dpat) == 2.0);
  CHECK(s(Method::dhdi) == 0.5);
  CHECK(s(Method::dhpi) == 1.0);
  CHECK(s(Method::djid) == 0.5);
  CHECK(s(Method::dlhn) == 0.5);
  CHECK(s(Method::dsai) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(s(Method::dsoi) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("0/0 baseline forms score zero") {
  DirectedGraph g = g1();
  DegreeTable deg = degrees(g);
  for (Method m : kAllMethods) {
    if (m == Method::alg1 || m == Method::alg2) continue;
    CHECK(score_baseline(g, deg, m, 3, 0) == 0.0);  // (4,1): C=0, degrees 0
  }
}

TEST_CASE("every method is asymmetric on G1") {
  DirectedGraph g = g1();
  DegreeTable deg = degrees(g);
  PredictorOptions opts;
  WeightedEdgeMap w1 = alg1_edge_weights(g, deg);
  WeightedEdgeMap w2 = alg2_edge_weights(g, deg);
  for (Method m : kAllMethods) {
    double fwd, rev;  // (1,4) vs (4,1)
    if (m == Method::alg1) {
      fwd = score_alg1(popularity(deg, 0, 3), bounded_dijkstra(g, w1, 0, 2).dist[3]);
      rev = score_alg1(popularity(deg, 3, 0), bounded_dijkstra(g, w1, 3, 2).dist[0]);
    } else if (m == Method::alg2) {
      fwd = score_alg2(popularity(deg, 0, 3), local_attraction(g, deg, 0, 3),
                       bounded_dijkstra(g, w2, 0, 2).dist[3]);
      rev = score_alg2(popularity(deg, 3, 0), local_attraction(g, deg, 3, 0),
                       bounded_dijkstra(g, w2, 3, 2).dist[0]);
    } else {
      fwd = score_baseline(g, deg, m, 0, 3);
      rev = score_baseline(g, deg, m, 3, 0);
    }
    CHECK_MESSAGE(fwd != rev, to_string(m));
  }
}

TEST_CASE("baselines match the set-arithmetic oracle bit-exactly") {
  SplitMix64 rng(321);
  for (int it = 0; it < 25; ++it) {
    DirectedGraph g = random_graph(rng, 25);
    DegreeTable deg = degrees(g);
    for (NodeId i = 0; i < g.node_count(); ++i)
      for (NodeId j = 0; j < g.node_count(); ++j) {
        if (i == j) continue;
        for (Method m : {Method::dada, Method::dcne, Method::dhdi, Method::dhpi,
                         Method::djid, Method::dlhn, Method::dpat, Method::dsai,
                         Method::dsoi}) {
          CHECK(score_baseline(g, deg, m, i, j) == naive_baseline_score(g, m, i, j));
        }
      }
  }
}

TEST_CASE("score ranges") {
  SplitMix64 rng(17);
  PredictorOptions opts;
  for (int it = 0; it < 8; ++it) {
    DirectedGraph g = random_graph(rng, 20);
    DegreeTable deg = degrees(g);
    for (Method m : kAllMethods) {
      if (m == Method::dpat) continue;
      ScoredPairs sp = score_candidates(g, deg, m, opts, ScoreMode::sparse);
      for (const auto& e : sp.entries) {
        CHECK(e.score >= 0.0);
        if (m == Method::alg1) CHECK(e.score <= 1.0);
        if (m == Method::alg2) CHECK(e.score <= 2.0);
      }
    }
    for (NodeId i = 0; i < g.node_count(); ++i)
      for (NodeId j = 0; j < g.node_count(); ++j) {
        if (i == j) continue;
        const double pi = popularity(deg, i, j);
        const double eta = local_attraction(g, deg, i, j);
        CHECK(pi >= 0.0);
        CHECK(pi <= 1.0);
        CHECK(eta >= 0.0);
        CHECK(eta <= 1.0 + 1e-15);
      }
  }
}

TEST_CASE("sparse candidates on G1 with DCNE") {
  DirectedGraph g = g1();
  DegreeTable deg = degrees(g);
  ScoredPairs sp = score_candidates(g, deg, Method::dcne, PredictorOptions{}, ScoreMode::sparse);
  REQUIRE(sp.entries.size() == 2);
  CHECK(sp.entries[0].src == 0);  // (1,4)
  CHECK(sp.entries[0].dst == 3);
  CHECK(sp.entries[0].score == 1.0);
  CHECK(sp.entries[1].src == 1);  // (2,4)
  CHECK(sp.entries[1].dst == 3);
  CHECK(sp.entries[1].score == 1.0);
  CHECK(sp.universe_size == 8);
  CHECK(sp.implicit_zero_count == 6);
}

TEST_CASE("degenerate graphs produce empty candidate sets") {
  DirectedGraph none = DirectedGraph::build(0, {});
  DegreeTable deg0 = degrees(none);
  ScoredPairs sp0 = score_candidates(none, deg0, Method::dcne, PredictorOptions{}, ScoreMode::sparse);
  CHECK(sp0.entries.empty());
  CHECK(sp0.universe_size == 0);
  CHECK(sp0.implicit_zero_count == 0);

  DirectedGraph lone = DirectedGraph::build(1, {});
  DegreeTable deg1 = degrees(lone);
  ScoredPairs sp1 = score_candidates(lone, deg1, Method::alg1, PredictorOptions{}, ScoreMode::full_stream);
  CHECK(sp1.entries.empty());
  CHECK(sp1.universe_size == 0);
}

TEST_CASE("sparse mode refuses DPAT") {
  DirectedGraph g = g1();
  DegreeTable deg = degrees(g);
  CHECK_THROWS_AS(score_candidates(g, deg, Method::dpat, PredictorOptions{}, ScoreMode::sparse),
                  std::invalid_argument);
}

TEST_CASE("sparse entries equal the nonzero full-stream entries") {
  SplitMix64 rng(55);
  PredictorOptions opts;
  for (int it = 0; it < 10; ++it) {
    DirectedGraph g = random_graph(rng, 18);
    DegreeTable deg = degrees(g);
    for (Method m : kAllMethods) {
      if (m == Method::dpat) continue;
      ScoredPairs sparse = score_candidates(g, deg, m, opts, ScoreMode::sparse);
      ScoredPairs full = score_candidates(g, deg, m, opts, ScoreMode::full_stream);
      CHECK(full.entries.size() == full.universe_size);
      CHECK(full.implicit_zero_count == 0);
      std::vector<ScoredEntry> nonzero;
      for (const auto& e : full.entries)
        if (e.score != 0.0) nonzero.push_back(e);
      REQUIRE(sparse.entries.size() == nonzero.size());
      for (std::size_t k = 0; k < nonzero.size(); ++k) {
        CHECK(sparse.entries[k].src == nonzero[k].src);
        CHECK(sparse.entries[k].dst == nonzero[k].dst);
        CHECK(sparse.entries[k].score == nonzero[k].score);
      }
      CHECK(sparse.entries.size() + sparse.implicit_zero_count == sparse.universe_size);
    }
  }
}

TEST_CASE("scoring is deterministic") {
  SplitMix64 rng(77);
  DirectedGraph g = random_graph(rng, 30);
  DegreeTable deg = degrees(g);
  PredictorOptions opts;
  for (Method m : kAllMethods) {
    ScoreMode mode = (m == Method::dpat) ? ScoreMode::full_stream : ScoreMode::sparse;
    ScoredPairs a = score_candidates(g, deg, m, opts, mode);
    ScoredPairs b = score_candidates(g, deg, m, opts, mode);
    REQUIRE(a.entries.size() == b.entries.size());
    for (std::size_t k = 0; k < a.entries.size(); ++k)
      CHECK(a.entries[k].score == b.entries[k].score);  // bit-identical
  }
}

TEST_CASE("top candidates") {
  DirectedGraph g = g1();
  DegreeTable deg = degrees(g);
  PredictorOptions opts;

  auto top1 = top_candidates(g, deg, Method::dcne, opts, 1);
  REQUIRE(top1.size() == 1);
  CHECK(top1[0].src == 0);  // (1,4) wins the tie against (2,4)
  CHECK(top1[0].dst == 3);
  CHECK(top1[0].score == 1.0);

  auto top2 = top_candidates(g, deg, Method::dcne, opts, 2);
  REQUIRE(top2.size() == 2);
  CHECK(top2[1].src == 1);
  CHECK(top2[1].dst == 3);

  CHECK(top_candidates(g, deg, Method::dcne, opts, 0).empty());

  // deterministic and consistent with a full sort
  SplitMix64 rng(5);
  DirectedGraph r = random_graph(rng, 15);
  DegreeTable rdeg = degrees(r);
  auto topk = top_candidates(r, rdeg, Method::alg2, opts, 7);
  ScoredPairs full = score_candidates(r, rdeg, Method::alg2, opts, ScoreMode::full_stream);
  std::sort(full.entries.begin(), full.entries.end(), [](const auto& a, const auto& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.src != b.src) return a.src < b.src;
    return a.dst < b.dst;
  });
  REQUIRE(topk.size() == std::min<std::size_t>(7, full.entries.size()));
  for (std::size_t k = 0; k < topk.size(); ++k) {
    CHECK(topk[k].src == full.entries[k].src);
    CHECK(topk[k].dst == full.entries[k].dst);
    CHECK(topk[k].score == full.entries[k].score);
  }
}

TEST_CASE("method names round trip") {
  for (Method m : kAllMethods) CHECK(parse_method(to_string(m)) == m);
  CHECK(parse_method("alg2") == Method::alg2);  // case-insensitive
  CHECK(!parse_method("nope").has_value());
}

}  // TEST_SUITE

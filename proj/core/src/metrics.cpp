#include "linkpred/metrics.hpp"

#include <algorithm>
#include <numeric>

namespace linkpred {

std::vector<ScoreGroup> tie_groups(const MetricInput& input) {
  std::vector<std::size_t> order(input.scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return input.scores[a] > input.scores[b];
  });

  std::vector<ScoreGroup> groups;
  for (std::size_t idx : order) {
    double s = input.scores[idx];
    if (groups.empty() || groups.back().score != s) groups.push_back({s, 0, 0});
    ++groups.back().size;
    if (input.positive[idx]) ++groups.back().positives;
  }

  if (input.implicit_zero_count > 0) {
    auto it = std::lower_bound(groups.begin(), groups.end(), 0.0,
                               [](const ScoreGroup& g, double s) { return g.score > s; });
    if (it != groups.end() && it->score == 0.0) {
      it->size += input.implicit_zero_count;
      it->positives += input.implicit_zero_positives;
    } else {
      groups.insert(it, {0.0, input.implicit_zero_count, input.implicit_zero_positives});
    }
  }
  return groups;
}

double top_precision(std::span<const ScoreGroup> groups, std::uint64_t k) {
  std::uint64_t total = 0;
  for (const auto& g : groups) total += g.size;
  if (k < 1) throw MetricError("top-precision cutoff must be >= 1");
  if (k > total) throw MetricError("top-precision cutoff exceeds candidate count");

  std::uint64_t slots = k;
  double credit = 0.0;
  for (const auto& g : groups) {
    if (slots == 0) break;
    std::uint64_t take = std::min<std::uint64_t>(g.size, slots);
    credit += static_cast<double>(g.positives) *
              (static_cast<double>(take) / static_cast<double>(g.size));
    slots -= take;
  }
  return credit / static_cast<double>(k);
}

double auroc(std::span<const ScoreGroup> groups) {
  std::uint64_t total = 0, pos = 0;
  for (const auto& g : groups) {
    total += g.size;
    pos += g.positives;
  }
  const std::uint64_t neg = total - pos;
  if (pos == 0 || neg == 0)
    throw MetricError("AUROC needs at least one positive and one negative");

  // Midranks in ascending score order; pos-pos comparisons cancel in the
  // rank-sum identity, leaving #(pos > neg) + 0.5 * #(pos = neg).
  double rank_sum = 0.0;
  std::uint64_t seen = 0;
  for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
    double midrank = static_cast<double>(seen) + (static_cast<double>(it->size) + 1.0) / 2.0;
    rank_sum += static_cast<double>(it->positives) * midrank;
    seen += it->size;
  }
  double p = static_cast<double>(pos);
  double u = rank_sum - p * (p + 1.0) / 2.0;
  return u / (p * static_cast<double>(neg));
}

double aupr(std::span<const ScoreGroup> groups) {
  std::uint64_t total = 0, pos = 0;
  for (const auto& g : groups) {
    total += g.size;
    pos += g.positives;
  }
  if (pos == 0 || total == pos)
    throw MetricError("AUPR needs at least one positive and one negative");

  const double p_total = static_cast<double>(pos);
  double cum_tp = 0.0, cum_n = 0.0;
  double prev_recall = 0.0;
  double prev_precision =
      static_cast<double>(groups.front().positives) / static_cast<double>(groups.front().size);
  double area = 0.0;
  for (const auto& g : groups) {
    cum_tp += static_cast<double>(g.positives);
    cum_n += static_cast<double>(g.size);
    double recall = cum_tp / p_total;
    double precision = cum_tp / cum_n;
    area += (recall - prev_recall) * (precision + prev_precision) / 2.0;
    prev_recall = recall;
    prev_precision = precision;
  }
  return area;
}

double top_precision(const MetricInput& input) {
  return top_precision(tie_groups(input), input.top_k);
}

double auroc(const MetricInput& input) { return auroc(tie_groups(input)); }

double aupr(const MetricInput& input) { return aupr(tie_groups(input)); }

}  // namespace linkpred

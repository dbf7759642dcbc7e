#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace linkpred {

/// Raised when a metric is undefined for the given input (no positives,
/// no negatives, cutoff out of range).
class MetricError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A maximal run of equal-scored candidates. Metrics never break ties;
/// they credit tie groups en bloc, which keeps huge zero-score groups
/// exact and cheap.
struct ScoreGroup {
  double score = 0.0;
  std::uint64_t size = 0;
  std::uint64_t positives = 0;
};

/// Scored candidates with positive/negative labels, plus the group of
/// pairs whose score is exactly zero and was never materialized.
/// top_k is the cutoff for top-precision (number of removed edges by
/// default).
struct MetricInput {
  std::vector<double> scores;
  std::vector<std::uint8_t> positive;  // parallel to scores
  std::uint64_t implicit_zero_count = 0;
  std::uint64_t implicit_zero_positives = 0;
  std::uint64_t top_k = 0;
};

/// Collapse input into tie groups, strictly descending by score. Any
/// explicit zero-score entries merge with the implicit-zero group.
std::vector<ScoreGroup> tie_groups(const MetricInput& input);

/// Fraction of positives among the top k candidates, with a tie group
/// straddling rank k credited fractionally:
/// credit = group_positives * slots_taken / group_size.
double top_precision(std::span<const ScoreGroup> groups, std::uint64_t k);

/// Probability that a positive outscores a negative, ties counted half;
/// computed from midrank statistics over tie groups.
double auroc(std::span<const ScoreGroup> groups);

/// Area under the precision-recall curve. One point per tie group in
/// descending score order, trapezoid rule over recall, with the curve
/// anchored at (0, precision of the first group).
double aupr(std::span<const ScoreGroup> groups);

double top_precision(const MetricInput& input);
double auroc(const MetricInput& input);
double aupr(const MetricInput& input);

}  // namespace linkpred

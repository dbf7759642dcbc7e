#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "linkpred/evaluation.hpp"

namespace linkpred {

/// Regularized incomplete beta function I_x(a, b), continued-fraction
/// evaluation. Backs the Student-t tail probabilities.
double regularized_incomplete_beta(double a, double b, double x);

/// Two-tailed p of a Student-t statistic with df degrees of freedom.
double student_t_two_tailed_p(double t, double df);

struct TTestResult {
  double t = 0.0;
  double p = 1.0;
};

/// Two-tailed paired t-test of equal-length samples (T >= 2). Degenerate
/// zero-variance differences resolve to p = 1 when the mean difference is
/// also zero and p = 0 otherwise.
TTestResult paired_t_test(std::span<const double> x, std::span<const double> y);

/// One-tailed Mann-Whitney-Wilcoxon p for the alternative "a is
/// stochastically smaller than b" (small values win, as with ranks).
/// Midrank ties; exact subset enumeration when |a| + |b| <= 12, otherwise
/// the normal approximation with tie-corrected variance and a 0.5
/// continuity correction. Equal samples (and all-tied pools) give 0.5.
double mann_whitney_one_tailed(std::span<const double> a, std::span<const double> b);

/// Benjamini-Hochberg-Yekutieli adjustment, valid under arbitrary
/// dependence: adj_(i) = min over j >= i of m * c(m) * p_(j) / j with
/// c(m) the m-th harmonic number, clamped to 1, in the original order.
std::vector<double> bhy_adjust(std::span<const double> p);

/// Descending ranks 1..M (rank 1 = largest value); equal values share the
/// average of the positions they straddle.
std::vector<double> rank_descending(std::span<const double> values);

/// Per-network pairwise tournament: each method pair is compared by a
/// two-tailed paired t-test over per-trial metric values; a significant
/// winner takes +1 and the loser -1, insignificant pairs take 0. The
/// returned score of a method is its sum over all opponents.
/// All matrices must share one method set.
std::vector<std::vector<int>> significant_scores(std::span<const TrialMatrix> networks,
                                                 MetricKind metric, double alpha);

/// Per-network ranks of the significance scores plus their mean across
/// networks (lower is better).
struct RankTable {
  std::vector<std::string> methods;
  std::vector<std::string> networks;
  std::vector<std::vector<int>> scores;     // [network][method]
  std::vector<std::vector<double>> ranks;   // [network][method]
  std::vector<double> average_rank;         // [method]
};

RankTable average_significant_rank(std::span<const TrialMatrix> networks,
                                   MetricKind metric, double alpha);

/// Pairwise one-tailed MWW comparisons of per-network rank samples.
/// p_value[i][j] (i < j) is the p of the directionally favored test,
/// optionally BHY-adjusted across all pairs; direction[i][j] for i > j is
/// '>', '<' or ' ' depending on how the row's average rank compares with
/// the column's when significant at alpha.
struct CompareTable {
  std::vector<std::string> methods;
  std::vector<std::vector<double>> p_value;  // upper triangle, -1 elsewhere
  std::vector<std::vector<char>> direction;  // lower triangle, ' ' elsewhere
  bool adjusted = false;
  double alpha = 0.05;
};

CompareTable pairwise_compare(const RankTable& table, bool adjust, double alpha);

/// Delimiter-separated renderings, parseable back.
void write_rank_table(const RankTable& table, MetricKind metric, double alpha,
                      std::ostream& out);
RankTable read_rank_table(std::istream& in);
void write_compare_table(const CompareTable& table, std::ostream& out);

}  // namespace linkpred

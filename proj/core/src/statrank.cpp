#include "linkpred/statrank.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace linkpred {

namespace {

constexpr double kBetaEps = 1e-12;
constexpr int kBetaMaxIter = 500;

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

// Continued fraction for the incomplete beta function (modified Lentz).
double beta_cf(double a, double b, double x) {
  const double tiny = 1e-300;
  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kBetaMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kBetaEps) return h;
  }
  throw std::runtime_error("incomplete beta continued fraction did not converge");
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("beta parameters must be positive");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double front = std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_two_tailed_p(double t, double df) {
  if (df <= 0.0) throw std::invalid_argument("degrees of freedom must be positive");
  if (std::isinf(t)) return 0.0;
  const double x = df / (df + t * t);
  return regularized_incomplete_beta(df / 2.0, 0.5, x);
}

TTestResult paired_t_test(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("paired samples must have equal length");
  const std::size_t t_count = x.size();
  if (t_count < 2) throw std::invalid_argument("paired t-test needs at least 2 pairs");

  std::vector<double> d(t_count);
  for (std::size_t i = 0; i < t_count; ++i) d[i] = x[i] - y[i];
  const Aggregate agg = aggregate(d);

  TTestResult r;
  if (agg.sd == 0.0) {
    // All differences identical: either no effect at all or a
    // deterministic winner.
    r.t = (agg.mean == 0.0) ? 0.0
                            : std::copysign(std::numeric_limits<double>::infinity(), agg.mean);
    r.p = (agg.mean == 0.0) ? 1.0 : 0.0;
    return r;
  }
  r.t = agg.mean / (agg.sd / std::sqrt(static_cast<double>(t_count)));
  r.p = student_t_two_tailed_p(r.t, static_cast<double>(t_count - 1));
  return r;
}

namespace {

struct PooledRanks {
  double rank_sum_a = 0.0;              // midrank sum of sample a
  std::vector<double> midranks;         // pooled, in sorted value order
  std::vector<std::uint64_t> tie_sizes; // per tie group
  bool all_tied = false;
};

PooledRanks pool_and_rank(std::span<const double> a, std::span<const double> b) {
  struct Item {
    double v;
    bool from_a;
  };
  std::vector<Item> pool;
  pool.reserve(a.size() + b.size());
  for (double v : a) pool.push_back({v, true});
  for (double v : b) pool.push_back({v, false});
  std::sort(pool.begin(), pool.end(), [](const Item& l, const Item& r) { return l.v < r.v; });

  PooledRanks out;
  out.midranks.resize(pool.size());
  std::size_t i = 0;
  while (i < pool.size()) {
    std::size_t j = i;
    while (j < pool.size() && pool[j].v == pool[i].v) ++j;
    const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) {
      out.midranks[k] = midrank;
      if (pool[k].from_a) out.rank_sum_a += midrank;
    }
    out.tie_sizes.push_back(j - i);
    i = j;
  }
  out.all_tied = out.tie_sizes.size() == 1;
  return out;
}

double normal_upper_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

// p = P(U >= u) over all n1-subsets of the pooled midranks.
double exact_mww_p(const std::vector<double>& midranks, std::size_t n1, double u_obs) {
  const std::size_t n = midranks.size();
  std::vector<std::size_t> idx(n1);
  std::iota(idx.begin(), idx.end(), 0);
  const double n2 = static_cast<double>(n - n1);
  const double offset =
      static_cast<double>(n1) * n2 + static_cast<double>(n1) * (static_cast<double>(n1) + 1.0) / 2.0;

  std::uint64_t total = 0, at_least = 0;
  for (;;) {
    double rank_sum = 0.0;
    for (std::size_t k : idx) rank_sum += midranks[k];
    ++total;
    if (offset - rank_sum >= u_obs - 1e-9) ++at_least;
    // next combination
    std::size_t pos = n1;
    while (pos > 0) {
      --pos;
      if (idx[pos] != pos + n - n1) break;
      if (pos == 0) return static_cast<double>(at_least) / static_cast<double>(total);
    }
    if (idx[pos] == pos + n - n1) return static_cast<double>(at_least) / static_cast<double>(total);
    ++idx[pos];
    for (std::size_t q = pos + 1; q < n1; ++q) idx[q] = idx[q - 1] + 1;
  }
}

}  // namespace

double mann_whitney_one_tailed(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("samples must be nonempty");

  // Identical samples carry no directional evidence; resolved as 0.5 by
  // symmetry (also covers the all-values-tied pool below for equal sizes).
  std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa == sb) return 0.5;

  const PooledRanks pooled = pool_and_rank(a, b);
  if (pooled.all_tied) return 0.5;

  const double n1 = static_cast<double>(a.size());
  const double n2 = static_cast<double>(b.size());
  // #(a < b) + 0.5 #(a = b): large when a sits low in the pooled order.
  const double u = n1 * n2 + n1 * (n1 + 1.0) / 2.0 - pooled.rank_sum_a;

  if (a.size() + b.size() <= 12) return exact_mww_p(pooled.midranks, a.size(), u);

  const double n = n1 + n2;
  double tie_term = 0.0;
  for (std::uint64_t t : pooled.tie_sizes) {
    const double td = static_cast<double>(t);
    tie_term += td * td * td - td;
  }
  const double var = n1 * n2 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
  if (var <= 0.0) return 0.5;
  const double z = (u - n1 * n2 / 2.0 - 0.5) / std::sqrt(var);
  return std::clamp(normal_upper_tail(z), 0.0, 1.0);
}

std::vector<double> bhy_adjust(std::span<const double> p) {
  const std::size_t m = p.size();
  std::vector<double> adjusted(m);
  if (m == 0) return adjusted;
  for (double v : p)
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("p-values must lie in [0, 1]");

  double harmonic = 0.0;
  for (std::size_t k = 1; k <= m; ++k) harmonic += 1.0 / static_cast<double>(k);

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return p[l] < p[r]; });

  double running = 1.0;
  for (std::size_t i = m; i-- > 0;) {
    const double scaled =
        static_cast<double>(m) * harmonic * p[order[i]] / static_cast<double>(i + 1);
    running = std::min(running, std::min(1.0, scaled));
    adjusted[order[i]] = running;
  }
  return adjusted;
}

std::vector<double> rank_descending(std::span<const double> values) {
  const std::size_t m = values.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t l, std::size_t r) { return values[l] > values[r]; });

  std::vector<double> ranks(m, 0.0);
  std::size_t i = 0;
  while (i < m) {
    std::size_t j = i;
    while (j < m && values[order[j]] == values[order[i]]) ++j;
    const double avg = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
    i = j;
  }
  return ranks;
}

namespace {

// Column indices of the reference method list within one matrix; the sets
// must match even if file order differs.
std::vector<std::size_t> method_alignment(const std::vector<Method>& reference,
                                          const TrialMatrix& tm) {
  std::vector<std::size_t> align(reference.size());
  for (std::size_t i = 0; i < reference.size(); ++i) {
    auto it = std::find(tm.methods.begin(), tm.methods.end(), reference[i]);
    if (it == tm.methods.end())
      throw std::invalid_argument("method sets differ across result files (" +
                                  to_string(reference[i]) + " missing in " + tm.dataset + ")");
    align[i] = static_cast<std::size_t>(it - tm.methods.begin());
  }
  if (tm.methods.size() != reference.size())
    throw std::invalid_argument("method sets differ across result files");
  return align;
}

std::size_t metric_index(const TrialMatrix& tm, MetricKind metric) {
  auto it = std::find(tm.metrics.begin(), tm.metrics.end(), metric);
  if (it == tm.metrics.end())
    throw std::invalid_argument("metric " + to_string(metric) + " absent from results of " +
                                tm.dataset);
  return static_cast<std::size_t>(it - tm.metrics.begin());
}

}  // namespace

std::vector<std::vector<int>> significant_scores(std::span<const TrialMatrix> networks,
                                                 MetricKind metric, double alpha) {
  if (networks.empty()) throw std::invalid_argument("no networks given");
  // endpoints are degenerate but well-defined: 0 marks nothing
  // significant, 1 orders strictly by mean
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must be in [0, 1]");
  const std::vector<Method>& methods = networks.front().methods;
  const std::size_t m_count = methods.size();

  std::vector<std::vector<int>> scores(networks.size(), std::vector<int>(m_count, 0));
  for (std::size_t w = 0; w < networks.size(); ++w) {
    const TrialMatrix& tm = networks[w];
    const auto align = method_alignment(methods, tm);
    const std::size_t ki = metric_index(tm, metric);
    for (std::size_t i = 0; i < m_count; ++i) {
      for (std::size_t j = i + 1; j < m_count; ++j) {
        auto vi = tm.trial_values(align[i], ki);
        auto vj = tm.trial_values(align[j], ki);
        const TTestResult res = paired_t_test(vi, vj);
        if (res.p >= alpha) continue;
        const bool i_wins = res.t > 0;  // sign of the mean difference
        scores[w][i] += i_wins ? 1 : -1;
        scores[w][j] += i_wins ? -1 : 1;
      }
    }
  }
  return scores;
}

RankTable average_significant_rank(std::span<const TrialMatrix> networks,
                                   MetricKind metric, double alpha) {
  RankTable table;
  const auto scores = significant_scores(networks, metric, alpha);
  const std::vector<Method>& methods = networks.front().methods;
  for (Method m : methods) table.methods.push_back(to_string(m));
  for (const TrialMatrix& tm : networks) table.networks.push_back(tm.dataset);
  table.scores = scores;

  table.ranks.resize(networks.size());
  table.average_rank.assign(methods.size(), 0.0);
  for (std::size_t w = 0; w < networks.size(); ++w) {
    std::vector<double> as_double(scores[w].begin(), scores[w].end());
    table.ranks[w] = rank_descending(as_double);  // highest score -> rank 1
    for (std::size_t i = 0; i < methods.size(); ++i) table.average_rank[i] += table.ranks[w][i];
  }
  for (double& r : table.average_rank) r /= static_cast<double>(networks.size());
  return table;
}

CompareTable pairwise_compare(const RankTable& table, bool adjust, double alpha) {
  const std::size_t m = table.methods.size();
  const std::size_t w = table.networks.size();
  CompareTable out;
  out.methods = table.methods;
  out.adjusted = adjust;
  out.alpha = alpha;
  out.p_value.assign(m, std::vector<double>(m, -1.0));
  out.direction.assign(m, std::vector<char>(m, ' '));

  // Column samples: one rank per network for each method.
  std::vector<std::vector<double>> samples(m, std::vector<double>(w));
  for (std::size_t mi = 0; mi < m; ++mi)
    for (std::size_t wi = 0; wi < w; ++wi) samples[mi][wi] = table.ranks[wi][mi];

  std::vector<double> raw;
  raw.reserve(m * (m - 1) / 2);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      // Test in the direction the observed average ranks favor.
      const bool i_better = table.average_rank[i] <= table.average_rank[j];
      const auto& lo = i_better ? samples[i] : samples[j];
      const auto& hi = i_better ? samples[j] : samples[i];
      raw.push_back(mann_whitney_one_tailed(lo, hi));
    }
  }
  const std::vector<double> final_p = adjust ? bhy_adjust(raw) : raw;

  std::size_t flat = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j, ++flat) {
      const double p = final_p[flat];
      out.p_value[i][j] = p;
      if (p < alpha) {
        if (table.average_rank[j] > table.average_rank[i]) out.direction[j][i] = '>';
        else if (table.average_rank[j] < table.average_rank[i]) out.direction[j][i] = '<';
      }
    }
  }
  return out;
}

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_param(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    auto tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

constexpr const char* kRankSchema = "linkpred-rank/1";
constexpr const char* kCompareSchema = "linkpred-compare/1";

}  // namespace

void write_rank_table(const RankTable& table, MetricKind metric, double alpha,
                      std::ostream& out) {
  out << "# " << kRankSchema << "\tmetric=" << to_string(metric) << "\talpha="
      << format_param(alpha) << '\n';
  out << "row\tnetwork";
  for (const auto& m : table.methods) out << '\t' << m;
  out << '\n';
  for (std::size_t w = 0; w < table.networks.size(); ++w) {
    out << "score\t" << table.networks[w];
    for (int s : table.scores[w]) out << '\t' << s;
    out << '\n';
    out << "rank\t" << table.networks[w];
    for (double r : table.ranks[w]) out << '\t' << format_double(r);
    out << '\n';
  }
  out << "average_rank\t-";
  for (double r : table.average_rank) out << '\t' << format_double(r);
  out << '\n';
}

RankTable read_rank_table(std::istream& in) {
  RankTable table;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# " + std::string(kRankSchema), 0) != 0)
    throw std::runtime_error("unrecognized rank table schema");
  if (!std::getline(in, line)) throw std::runtime_error("rank table missing header row");
  auto header = split_tabs(line);
  if (header.size() < 3 || header[0] != "row" || header[1] != "network")
    throw std::runtime_error("malformed rank table header");
  table.methods.assign(header.begin() + 2, header.end());

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_tabs(line);
    if (fields.size() != table.methods.size() + 2)
      throw std::runtime_error("malformed rank table row: " + line);
    if (fields[0] == "score") {
      table.networks.push_back(fields[1]);
      std::vector<int> row;
      for (std::size_t i = 2; i < fields.size(); ++i) row.push_back(std::stoi(fields[i]));
      table.scores.push_back(std::move(row));
    } else if (fields[0] == "rank") {
      std::vector<double> row;
      for (std::size_t i = 2; i < fields.size(); ++i) row.push_back(std::stod(fields[i]));
      table.ranks.push_back(std::move(row));
    } else if (fields[0] == "average_rank") {
      // recomputed below
    } else {
      throw std::runtime_error("unknown rank table row kind: " + fields[0]);
    }
  }
  if (table.ranks.size() != table.networks.size())
    throw std::runtime_error("rank table has unmatched score/rank rows");

  table.average_rank.assign(table.methods.size(), 0.0);
  for (const auto& row : table.ranks)
    for (std::size_t i = 0; i < row.size(); ++i) table.average_rank[i] += row[i];
  for (double& r : table.average_rank)
    if (!table.ranks.empty()) r /= static_cast<double>(table.ranks.size());
  return table;
}

void write_compare_table(const CompareTable& table, std::ostream& out) {
  out << "# " << kCompareSchema << "\talpha=" << format_param(table.alpha) << "\tadjust="
      << (table.adjusted ? "bhy" : "none") << '\n';
  const std::size_t m = table.methods.size();
  for (const auto& name : table.methods) out << '\t' << name;
  out << '\n';
  char buf[32];
  for (std::size_t i = 0; i < m; ++i) {
    out << table.methods[i];
    for (std::size_t j = 0; j < m; ++j) {
      out << '\t';
      if (j > i) {
        std::snprintf(buf, sizeof buf, "%.4f", table.p_value[i][j]);
        out << buf;
      } else if (j < i && table.direction[i][j] != ' ') {
        out << table.direction[i][j];
      }
    }
    out << '\n';
  }
}

}  // namespace linkpred

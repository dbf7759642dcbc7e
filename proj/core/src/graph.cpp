#include "linkpred/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace linkpred {

DirectedGraph DirectedGraph::build(std::size_t node_count, std::vector<EdgePair> edges,
                                   std::vector<std::string> labels) {
  for (auto [i, j] : edges) {
    if (i >= node_count || j >= node_count)
      throw std::invalid_argument("edge endpoint out of range");
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::erase_if(edges, [](const EdgePair& e) { return e.first == e.second; });

  DirectedGraph g;
  g.out_offsets_.assign(node_count + 1, 0);
  g.in_offsets_.assign(node_count + 1, 0);
  for (auto [i, j] : edges) {
    ++g.out_offsets_[i + 1];
    ++g.in_offsets_[j + 1];
  }
  for (std::size_t v = 0; v < node_count; ++v) {
    g.out_offsets_[v + 1] += g.out_offsets_[v];
    g.in_offsets_[v + 1] += g.in_offsets_[v];
  }
  g.out_targets_.resize(edges.size());
  g.in_sources_.resize(edges.size());
  std::vector<std::size_t> out_pos(g.out_offsets_.begin(), g.out_offsets_.end() - 1);
  std::vector<std::size_t> in_pos(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
  for (auto [i, j] : edges) {
    g.out_targets_[out_pos[i]++] = j;  // edges sorted, so targets stay sorted
    g.in_sources_[in_pos[j]++] = i;    // sources arrive in ascending i
  }

  if (labels.empty()) {
    labels.reserve(node_count);
    for (std::size_t v = 0; v < node_count; ++v) labels.push_back(std::to_string(v));
  } else if (labels.size() != node_count) {
    throw std::invalid_argument("label count does not match node count");
  }
  g.labels_ = std::move(labels);
  return g;
}

bool DirectedGraph::has_edge(NodeId i, NodeId j) const {
  auto nb = out_neighbors(i);
  return std::binary_search(nb.begin(), nb.end(), j);
}

std::size_t DirectedGraph::out_edge_index(NodeId i, NodeId j) const {
  auto nb = out_neighbors(i);
  auto it = std::lower_bound(nb.begin(), nb.end(), j);
  if (it == nb.end() || *it != j) throw std::invalid_argument("no such edge");
  return out_offsets_[i] + static_cast<std::size_t>(it - nb.begin());
}

std::vector<EdgePair> DirectedGraph::edges() const {
  std::vector<EdgePair> es;
  es.reserve(edge_count());
  for (NodeId i = 0; i < node_count(); ++i)
    for (NodeId j : out_neighbors(i)) es.emplace_back(i, j);
  return es;
}

DegreeTable degrees(const DirectedGraph& g) {
  const std::size_t n = g.node_count();
  DegreeTable d;
  d.k_in.resize(n);
  d.k_out.resize(n);
  d.k_total.resize(n);
  d.k_sum.resize(n);
  for (NodeId v = 0; v < n; ++v) {
    auto out = g.out_neighbors(v);
    auto in = g.in_neighbors(v);
    d.k_out[v] = static_cast<std::uint32_t>(out.size());
    d.k_in[v] = static_cast<std::uint32_t>(in.size());
    d.k_sum[v] = d.k_out[v] + d.k_in[v];
    // |in ∪ out| by merging the two sorted lists
    std::size_t a = 0, b = 0, uni = 0;
    while (a < out.size() && b < in.size()) {
      ++uni;
      if (out[a] < in[b]) ++a;
      else if (in[b] < out[a]) ++b;
      else { ++a; ++b; }
    }
    uni += (out.size() - a) + (in.size() - b);
    d.k_total[v] = static_cast<std::uint32_t>(uni);
    d.k_in_max = std::max(d.k_in_max, d.k_in[v]);
    d.k_out_max = std::max(d.k_out_max, d.k_out[v]);
    d.k_total_max = std::max(d.k_total_max, d.k_total[v]);
    d.k_sum_max = std::max(d.k_sum_max, d.k_sum[v]);
  }
  return d;
}

std::vector<NodeId> common_out_in(const DirectedGraph& g, NodeId i, NodeId j) {
  auto out = g.out_neighbors(i);
  auto in = g.in_neighbors(j);
  std::vector<NodeId> common;
  std::set_intersection(out.begin(), out.end(), in.begin(), in.end(),
                        std::back_inserter(common));
  return common;
}

namespace {

bool split_line(const std::string& line, EdgeListFormat format, std::string& a,
                std::string& b) {
  if (format == EdgeListFormat::csv) {
    auto comma = line.find(',');
    if (comma == std::string::npos) return false;
    if (line.find(',', comma + 1) != std::string::npos) return false;
    a = line.substr(0, comma);
    b = line.substr(comma + 1);
    auto trim = [](std::string& s) {
      auto l = s.find_first_not_of(" \t\r");
      auto r = s.find_last_not_of(" \t\r");
      s = (l == std::string::npos) ? std::string{} : s.substr(l, r - l + 1);
    };
    trim(a);
    trim(b);
    return !a.empty() && !b.empty();
  }
  std::istringstream ss(line);
  std::string extra;
  if (!(ss >> a >> b)) return false;
  if (ss >> extra) return false;
  return true;
}

}  // namespace

DirectedGraph parse_edge_list(std::istream& in, EdgeListFormat format) {
  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::string> labels;
  std::vector<EdgePair> edges;
  auto intern = [&](const std::string& s) {
    auto [it, inserted] = ids.emplace(s, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(s);
    return it->second;
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#' || line[first] == '%') continue;
    std::string a, b;
    if (!split_line(line, format, a, b))
      throw ParseError("expected two tokens (source, target)", lineno);
    NodeId u = intern(a), v = intern(b);
    if (u != v) edges.emplace_back(u, v);  // self-loop dropped, node kept
  }
  if (labels.empty()) throw ParseError("input contains no edges", lineno);
  const std::size_t node_count = labels.size();
  return DirectedGraph::build(node_count, std::move(edges), std::move(labels));
}

DirectedGraph parse_edge_list(const std::string& text, EdgeListFormat format) {
  std::istringstream ss(text);
  return parse_edge_list(ss, format);
}

std::vector<std::pair<std::string, std::string>> labeled_edges(const DirectedGraph& g) {
  std::vector<std::pair<std::string, std::string>> es;
  es.reserve(g.edge_count());
  for (auto [i, j] : g.edges()) es.emplace_back(g.label(i), g.label(j));
  std::sort(es.begin(), es.end());
  return es;
}

void serialize_canonical(const DirectedGraph& g, std::ostream& out) {
  for (const auto& [src, dst] : labeled_edges(g)) out << src << '\t' << dst << '\n';
}

}  // namespace linkpred

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace linkpred {

using NodeId = std::uint32_t;
using EdgePair = std::pair<NodeId, NodeId>;

/// Raised on malformed edge-list input; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        message_(message),
        line_(line) {}
  std::size_t line() const { return line_; }
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  std::size_t line_ = 0;
};

enum class EdgeListFormat { whitespace, csv };

/// Immutable directed graph over dense node ids 0..n-1.
///
/// Self-loops and duplicate edges are rejected at construction; neighbor
/// lists are kept sorted so membership tests and intersections are
/// deterministic. External string labels are preserved per node.
class DirectedGraph {
 public:
  DirectedGraph() = default;

  /// Build from an edge list. Self-loops and duplicates are dropped.
  /// Labels are optional; missing labels default to the decimal node id.
  static DirectedGraph build(std::size_t node_count, std::vector<EdgePair> edges,
                             std::vector<std::string> labels = {});

  std::size_t node_count() const { return out_offsets_.empty() ? 0 : out_offsets_.size() - 1; }
  std::size_t edge_count() const { return out_targets_.size(); }

  std::span<const NodeId> out_neighbors(NodeId i) const {
    return {out_targets_.data() + out_offsets_[i], out_targets_.data() + out_offsets_[i + 1]};
  }
  std::span<const NodeId> in_neighbors(NodeId j) const {
    return {in_sources_.data() + in_offsets_[j], in_sources_.data() + in_offsets_[j + 1]};
  }

  bool has_edge(NodeId i, NodeId j) const;

  /// Index of edge (i, j) in the flat out-edge array, used to align
  /// per-edge weight vectors. Edge must exist.
  std::size_t out_edge_index(NodeId i, NodeId j) const;
  std::size_t out_edges_begin(NodeId i) const { return out_offsets_[i]; }

  /// All edges sorted by (src, dst).
  std::vector<EdgePair> edges() const;

  const std::string& label(NodeId i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<std::size_t> out_offsets_;  // n+1
  std::vector<NodeId> out_targets_;       // m, sorted within each source
  std::vector<std::size_t> in_offsets_;   // n+1
  std::vector<NodeId> in_sources_;        // m, sorted within each target
  std::vector<std::string> labels_;       // n
};

/// In/out/total degrees plus their maxima. Two notions of total degree are
/// kept: the union cardinality |in ∪ out| and the plain sum in + out
/// (which counts reciprocated neighbors twice). Formulas pick one or the
/// other explicitly.
struct DegreeTable {
  std::vector<std::uint32_t> k_in;
  std::vector<std::uint32_t> k_out;
  std::vector<std::uint32_t> k_total;  // |in ∪ out|
  std::vector<std::uint32_t> k_sum;    // in + out
  std::uint32_t k_in_max = 0;
  std::uint32_t k_out_max = 0;
  std::uint32_t k_total_max = 0;
  std::uint32_t k_sum_max = 0;
};

DegreeTable degrees(const DirectedGraph& g);

/// Nodes on a directed 2-path i -> k -> j, i.e. out(i) ∩ in(j), sorted.
std::vector<NodeId> common_out_in(const DirectedGraph& g, NodeId i, NodeId j);

/// Parse an edge list: one edge per line, two tokens (source, target).
/// Lines starting with '#' or '%' are ignored. Self-loops are dropped,
/// duplicate edges collapse to one. Node labels are arbitrary strings and
/// get dense ids in order of first appearance.
/// Throws ParseError on malformed lines and on input with no nodes.
DirectedGraph parse_edge_list(std::istream& in,
                              EdgeListFormat format = EdgeListFormat::whitespace);
DirectedGraph parse_edge_list(const std::string& text,
                              EdgeListFormat format = EdgeListFormat::whitespace);

/// Canonical edge-list form: one "SRC<TAB>DST" line per edge, sorted by
/// (source label, target label) bytewise, '\n' terminated. Stable under
/// re-ingestion. Isolated nodes are not representable in this form.
void serialize_canonical(const DirectedGraph& g, std::ostream& out);

/// Label-level edge view, sorted; the graph identity that survives
/// serialization round trips (internal ids may be re-assigned).
std::vector<std::pair<std::string, std::string>> labeled_edges(const DirectedGraph& g);

}  // namespace linkpred

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nfprop {

using NodeId = std::uint32_t;
using Label = std::uint64_t;

/// Raised by the edge-list reader; carries the 1-based line of the offending input.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Immutable CSR adjacency. Targets within a node's slice are sorted and
/// unique, self-loops are never stored, and an undirected graph stores both
/// orientations of every edge.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph over dense ids [0, n). Duplicate arcs and self-loops are
  /// dropped; undirected input is symmetrized. Labels default to the ids.
  static Graph from_arcs(std::size_t n, std::span<const std::pair<NodeId, NodeId>> arcs,
                         bool directed, std::vector<Label> labels = {});

  std::size_t num_nodes() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_arcs() const noexcept { return targets_.size(); }
  bool directed() const noexcept { return directed_; }

  std::span<const NodeId> neighbors(NodeId u) const {
    return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
  }
  std::span<const std::uint64_t> offsets() const noexcept { return offsets_; }
  std::span<const NodeId> targets() const noexcept { return targets_; }

  /// Original label of dense id `u`.
  Label label(NodeId u) const { return labels_.at(u); }
  std::span<const Label> labels() const noexcept { return labels_; }

 private:
  friend Graph transpose(const Graph& g);

  std::vector<std::uint64_t> offsets_;
  std::vector<NodeId> targets_;
  std::vector<Label> labels_;
  bool directed_ = false;
};

struct EdgeListSource {
  std::string path;  // ".gz" suffix selects gzip decoding
  char comment_prefix = '#';
};

/// Reads "u v" lines. Labels are remapped to dense ids in first-appearance
/// order. `min_nodes` pads the graph with isolated nodes up to that count.
Graph load_edge_list(std::istream& in, bool directed, char comment_prefix = '#',
                     std::size_t min_nodes = 0);
Graph load_edge_list(const EdgeListSource& src, bool directed, std::size_t min_nodes = 0);

/// Writes one line per stored arc (once per edge when undirected) using the
/// original labels.
void write_edge_list(const Graph& g, std::ostream& out);

Graph transpose(const Graph& g);

std::size_t out_degree(const Graph& g, NodeId u);

}  // namespace nfprop

#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "stablecut/matrix.hpp"

namespace stablecut {

using EdgeSpec = std::tuple<std::string, std::string, double>;
using NodePair = std::pair<std::string, std::string>;

/// Undirected weighted graph over string-named nodes. Nodes are kept in
/// lexicographic order and matrix row k always refers to the k-th node of
/// that order, so every derived quantity is deterministic across runs.
/// Immutable after construction.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  /// Nodes inferred from the edge list.
  static WeightedGraph from_edges(const std::vector<EdgeSpec>& edges);

  /// Explicit node set; allows isolated nodes. Edge endpoints must be listed.
  WeightedGraph(std::vector<std::string> nodes, const std::vector<EdgeSpec>& edges);

  const std::vector<std::string>& nodes() const { return nodes_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  /// Edges as (i, j, w) index triples with i < j, sorted by (i, j).
  const std::vector<std::tuple<std::size_t, std::size_t, double>>& edges() const {
    return edges_;
  }

  std::size_t index_of(const std::string& node) const;  // UnknownNode
  bool has_node(const std::string& node) const;
  bool has_edge(const std::string& u, const std::string& v) const;
  double edge_weight(const std::string& u, const std::string& v) const;  // UnknownEdge

  double weighted_degree(std::size_t i) const;
  double total_edge_weight() const;

  /// Neighbor list of node i as (j, w) pairs, ascending j.
  const std::vector<std::pair<std::size_t, double>>& neighbors(std::size_t i) const {
    return adjacency_[i];
  }

  WeightedGraph induced_subgraph(const std::vector<std::string>& keep) const;

  bool same_node_set(const WeightedGraph& other) const { return nodes_ == other.nodes_; }

 private:
  std::vector<std::string> nodes_;
  std::vector<std::tuple<std::size_t, std::size_t, double>> edges_;
  std::vector<std::vector<std::pair<std::size_t, double>>> adjacency_;
};

/// A set of existing edges marked for removal, stored as canonical node pairs.
struct Cut {
  std::vector<NodePair> removed_edges;  // each pair ordered, list sorted, unique
};

/// Builds a validated cut; pairs are canonicalized and deduplicated.
Cut make_cut(const WeightedGraph& g, const std::vector<NodePair>& pairs);

/// Disjoint connected node sets covering the graph. Components are sorted
/// internally and listed by their lexicographically smallest node.
struct Partition {
  std::vector<std::vector<std::string>> components;
  std::optional<Cut> origin;
};

/// Validates an externally assembled partition (disjoint cover, every
/// component connected in its induced subgraph).
Partition make_partition(const WeightedGraph& g,
                         std::vector<std::vector<std::string>> components,
                         std::optional<Cut> origin = std::nullopt);

WeightedGraph build_graph(const std::vector<EdgeSpec>& edges);
Matrix laplacian(const WeightedGraph& g);
bool is_connected(const WeightedGraph& g);
Partition apply_cut(const WeightedGraph& g, const Cut& cut);

double internal_cost(const WeightedGraph& g, const Partition& p, const std::string& node);
double external_cost(const WeightedGraph& g, const Partition& p, const std::string& node);
double cut_weight(const WeightedGraph& g, const Cut& cut);

/// Cross edges of a partition, i.e. the cut that induces it.
Cut boundary_cut(const WeightedGraph& g, const Partition& p);

std::size_t component_of(const Partition& p, const std::string& node);  // UnknownNode

}  // namespace stablecut

#include "stablecut/graph.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "stablecut/error.hpp"

namespace stablecut {

namespace {

std::vector<std::string> collect_nodes(const std::vector<EdgeSpec>& edges) {
  std::set<std::string> seen;
  for (const auto& [u, v, w] : edges) {
    seen.insert(u);
    seen.insert(v);
  }
  return {seen.begin(), seen.end()};
}

}  // namespace

WeightedGraph WeightedGraph::from_edges(const std::vector<EdgeSpec>& edges) {
  return WeightedGraph(collect_nodes(edges), edges);
}

WeightedGraph::WeightedGraph(std::vector<std::string> nodes,
                             const std::vector<EdgeSpec>& edges)
    : nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end());
  for (std::size_t i = 1; i < nodes_.size(); ++i)
    if (nodes_[i] == nodes_[i - 1])
      throw Error(ErrorCode::DuplicateEdge, "duplicate node identifier: " + nodes_[i]);

  std::map<std::pair<std::size_t, std::size_t>, double> canonical;
  for (const auto& [u, v, w] : edges) {
    if (u == v) throw Error(ErrorCode::SelfLoop, "self-loop at node " + u);
    if (w <= 0.0)
      throw Error(ErrorCode::NonPositiveWeight,
                  "edge (" + u + ", " + v + ") has non-positive weight");
    std::size_t i = index_of(u);
    std::size_t j = index_of(v);
    if (i > j) std::swap(i, j);
    if (!canonical.emplace(std::make_pair(i, j), w).second)
      throw Error(ErrorCode::DuplicateEdge, "duplicate edge (" + u + ", " + v + ")");
  }
  edges_.reserve(canonical.size());
  adjacency_.assign(nodes_.size(), {});
  for (const auto& [key, w] : canonical) {
    edges_.emplace_back(key.first, key.second, w);
    adjacency_[key.first].emplace_back(key.second, w);
    adjacency_[key.second].emplace_back(key.first, w);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
}

std::size_t WeightedGraph::index_of(const std::string& node) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), node);
  if (it == nodes_.end() || *it != node)
    throw Error(ErrorCode::UnknownNode, "unknown node: " + node);
  return static_cast<std::size_t>(it - nodes_.begin());
}

bool WeightedGraph::has_node(const std::string& node) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), node);
}

bool WeightedGraph::has_edge(const std::string& u, const std::string& v) const {
  if (!has_node(u) || !has_node(v)) return false;
  const std::size_t i = index_of(u);
  const std::size_t j = index_of(v);
  for (const auto& [k, w] : adjacency_[i])
    if (k == j) return true;
  return false;
}

double WeightedGraph::edge_weight(const std::string& u, const std::string& v) const {
  const std::size_t i = index_of(u);
  const std::size_t j = index_of(v);
  for (const auto& [k, w] : adjacency_[i])
    if (k == j) return w;
  throw Error(ErrorCode::UnknownEdge, "no edge (" + u + ", " + v + ")");
}

double WeightedGraph::weighted_degree(std::size_t i) const {
  double d = 0.0;
  for (const auto& [j, w] : adjacency_[i]) d += w;
  return d;
}

double WeightedGraph::total_edge_weight() const {
  double t = 0.0;
  for (const auto& [i, j, w] : edges_) t += w;
  return t;
}

WeightedGraph WeightedGraph::induced_subgraph(const std::vector<std::string>& keep) const {
  std::set<std::string> keepset(keep.begin(), keep.end());
  std::vector<EdgeSpec> sub;
  for (const auto& [i, j, w] : edges_)
    if (keepset.count(nodes_[i]) && keepset.count(nodes_[j]))
      sub.emplace_back(nodes_[i], nodes_[j], w);
  for (const auto& n : keep) index_of(n);  // validates membership
  return WeightedGraph({keepset.begin(), keepset.end()}, sub);
}

WeightedGraph build_graph(const std::vector<EdgeSpec>& edges) {
  return WeightedGraph::from_edges(edges);
}

Matrix laplacian(const WeightedGraph& g) {
  const std::size_t n = g.node_count();
  Matrix l(n, n);
  for (const auto& [i, j, w] : g.edges()) {
    l(i, i) += w;
    l(j, j) += w;
    l(i, j) -= w;
    l(j, i) -= w;
  }
  return l;
}

namespace {

// Breadth-first reach over an edge mask; returns component ids per node.
std::vector<std::size_t> component_ids(
    const WeightedGraph& g,
    const std::set<std::pair<std::size_t, std::size_t>>& removed) {
  const std::size_t n = g.node_count();
  std::vector<std::size_t> comp(n, n);
  std::size_t next = 0;
  std::vector<std::size_t> queue;
  for (std::size_t start = 0; start < n; ++start) {
    if (comp[start] != n) continue;
    comp[start] = next;
    queue.assign(1, start);
    while (!queue.empty()) {
      const std::size_t v = queue.back();
      queue.pop_back();
      for (const auto& [u, w] : g.neighbors(v)) {
        if (comp[u] != n) continue;
        const auto key = std::minmax(v, u);
        if (removed.count({key.first, key.second})) continue;
        comp[u] = next;
        queue.push_back(u);
      }
    }
    ++next;
  }
  return comp;
}

std::vector<std::vector<std::string>> group_components(
    const WeightedGraph& g, const std::vector<std::size_t>& comp) {
  std::size_t count = 0;
  for (std::size_t c : comp) count = std::max(count, c + 1);
  std::vector<std::vector<std::string>> groups(count);
  for (std::size_t i = 0; i < comp.size(); ++i)
    groups[comp[i]].push_back(g.nodes()[i]);
  // nodes are scanned in canonical order, so each group is already sorted
  // and groups are ordered by their smallest node
  return groups;
}

}  // namespace

bool is_connected(const WeightedGraph& g) {
  if (g.node_count() == 0) return false;
  const auto comp = component_ids(g, {});
  return *std::max_element(comp.begin(), comp.end()) == 0;
}

Cut make_cut(const WeightedGraph& g, const std::vector<NodePair>& pairs) {
  std::set<NodePair> canonical;
  for (const auto& [u, v] : pairs) {
    if (!g.has_edge(u, v))
      throw Error(ErrorCode::UnknownEdge, "cut names a missing edge (" + u + ", " + v + ")");
    canonical.insert(u < v ? NodePair{u, v} : NodePair{v, u});
  }
  return Cut{{canonical.begin(), canonical.end()}};
}

Partition make_partition(const WeightedGraph& g,
                         std::vector<std::vector<std::string>> components,
                         std::optional<Cut> origin) {
  std::set<std::string> seen;
  std::size_t total = 0;
  for (auto& comp : components) {
    std::sort(comp.begin(), comp.end());
    for (const auto& node : comp) {
      g.index_of(node);
      if (!seen.insert(node).second)
        throw Error(ErrorCode::InvalidPartition, "node in two components: " + node);
    }
    total += comp.size();
    if (comp.empty())
      throw Error(ErrorCode::InvalidPartition, "empty component");
    if (!is_connected(g.induced_subgraph(comp)))
      throw Error(ErrorCode::InvalidPartition,
                  "component not connected: {" + comp.front() + ", ...}");
  }
  if (total != g.node_count())
    throw Error(ErrorCode::InvalidPartition, "components do not cover the node set");
  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return Partition{std::move(components), std::move(origin)};
}

Partition apply_cut(const WeightedGraph& g, const Cut& cut) {
  std::set<std::pair<std::size_t, std::size_t>> removed;
  for (const auto& [u, v] : cut.removed_edges) {
    if (!g.has_edge(u, v))
      throw Error(ErrorCode::UnknownEdge, "cut names a missing edge (" + u + ", " + v + ")");
    auto key = std::minmax(g.index_of(u), g.index_of(v));
    removed.insert({key.first, key.second});
  }
  const auto comp = component_ids(g, removed);
  return Partition{group_components(g, comp), cut};
}

std::size_t component_of(const Partition& p, const std::string& node) {
  for (std::size_t c = 0; c < p.components.size(); ++c)
    if (std::binary_search(p.components[c].begin(), p.components[c].end(), node))
      return c;
  throw Error(ErrorCode::UnknownNode, "node not in partition: " + node);
}

namespace {

double cost_sum(const WeightedGraph& g, const Partition& p, const std::string& node,
                bool internal) {
  const std::size_t c = component_of(p, node);
  const auto& comp = p.components[c];
  const std::size_t i = g.index_of(node);
  double total = 0.0;
  for (const auto& [j, w] : g.neighbors(i)) {
    const bool same =
        std::binary_search(comp.begin(), comp.end(), g.nodes()[j]);
    if (same == internal) total += w;
  }
  return total;
}

}  // namespace

double internal_cost(const WeightedGraph& g, const Partition& p, const std::string& node) {
  return cost_sum(g, p, node, true);
}

double external_cost(const WeightedGraph& g, const Partition& p, const std::string& node) {
  return cost_sum(g, p, node, false);
}

double cut_weight(const WeightedGraph& g, const Cut& cut) {
  double total = 0.0;
  for (const auto& [u, v] : cut.removed_edges) total += g.edge_weight(u, v);
  return total;
}

Cut boundary_cut(const WeightedGraph& g, const Partition& p) {
  std::vector<NodePair> pairs;
  for (const auto& [i, j, w] : g.edges()) {
    const auto& u = g.nodes()[i];
    const auto& v = g.nodes()[j];
    if (component_of(p, u) != component_of(p, v)) pairs.emplace_back(u, v);
  }
  return make_cut(g, pairs);
}

}  // namespace stablecut

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "stablecut/certify.hpp"
#include "stablecut/graph.hpp"

namespace stablecut {

enum class SearchMode { Exhaustive, Heuristic };

struct SearchEntry {
  Partition partition;
  double cut_weight = 0.0;
  double min_lambda2 = 0.0;
  StabilityCertificate certificate;
};

struct SearchReport {
  SearchMode mode = SearchMode::Exhaustive;
  std::size_t candidates_examined = 0;
  std::vector<SearchEntry> certified;  // ascending cut weight, all CertifiedStable
};

/// Every bipartition with both sides connected and non-empty, exactly once.
/// The side containing the first canonical node is listed first. Subsets are
/// scanned in increasing mask order over the remaining nodes, so the stream
/// order is deterministic. Capped at 20 nodes (2^19 candidate masks).
void enumerate_bipartitions(const WeightedGraph& g,
                            const std::function<void(Partition&&)>& sink);
std::vector<Partition> enumerate_bipartitions(const WeightedGraph& g);  // TooLarge

/// Kernighan-Lin style local improvement on a bipartition: greedily moves
/// the node with the largest positive gain external - internal, accepting a
/// move only if both sides stay non-empty and connected and the internal-cost
/// necessary screen still passes. Deterministic tie-break by canonical node
/// order. Not applicable (returned unchanged, flagged) unless both sides
/// have at least 2 nodes.
struct RefineResult {
  Partition partition;
  bool applicable = false;
  std::size_t moves = 0;
};
RefineResult refine_moves(const WeightedGraph& g, const Partition& bipartition,
                          double tau);

/// Exhaustive mode enumerates bipartitions (recursively splitting certified
/// components while the component budget allows) and certifies every
/// candidate. Heuristic mode sweeps split points of the Fiedler-vector node
/// order, refines each admissible split, and certifies the results; it makes
/// no optimality claim. Certified entries are ranked by ascending cut
/// weight, ties by larger minimum component lambda2.
SearchReport search_stable_cuts(const WeightedGraph& g, double tau,
                                SearchMode mode,
                                std::size_t max_components = 2);
// TooLarge, Disconnected

}  // namespace stablecut

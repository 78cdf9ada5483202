#include "stablecut/search.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "stablecut/error.hpp"
#include "stablecut/spectral.hpp"

namespace stablecut {

void enumerate_bipartitions(const WeightedGraph& g,
                            const std::function<void(Partition&&)>& sink) {
  if (!is_connected(g))
    throw Error(ErrorCode::Disconnected, "bipartition enumeration needs a connected graph");
  const std::size_t n = g.node_count();
  if (n > 20)
    throw Error(ErrorCode::TooLarge, "exhaustive enumeration capped at 20 nodes");
  if (n < 2) return;

  // the first canonical node is pinned to side 1; masks range over the rest
  const std::size_t rest = n - 1;
  for (std::size_t mask = 0; mask + 1 < (std::size_t{1} << rest); ++mask) {
    std::vector<std::string> side1{g.nodes()[0]};
    std::vector<std::string> side2;
    for (std::size_t b = 0; b < rest; ++b)
      (mask & (std::size_t{1} << b) ? side1 : side2).push_back(g.nodes()[b + 1]);
    if (!is_connected(g.induced_subgraph(side1)) ||
        !is_connected(g.induced_subgraph(side2)))
      continue;
    Partition p{{side1, side2}, std::nullopt};
    p.origin = boundary_cut(g, p);
    sink(std::move(p));
  }
}

std::vector<Partition> enumerate_bipartitions(const WeightedGraph& g) {
  std::vector<Partition> out;
  enumerate_bipartitions(g, [&](Partition&& p) { out.push_back(std::move(p)); });
  return out;
}

namespace {

double partition_cut_weight(const WeightedGraph& g, const Partition& p) {
  return cut_weight(g, p.origin ? *p.origin : boundary_cut(g, p));
}

bool necessary_screen_passes(const WeightedGraph& g, const Partition& p, double tau) {
  for (CheckResult r : necessary_internal_cost(g, p, tau))
    if (r == CheckResult::Fail) return false;
  return true;
}

}  // namespace

RefineResult refine_moves(const WeightedGraph& g, const Partition& bipartition,
                          double tau) {
  RefineResult out{bipartition, false, 0};
  if (bipartition.components.size() != 2 ||
      bipartition.components[0].size() < 2 || bipartition.components[1].size() < 2)
    return out;
  out.applicable = true;

  Partition current = bipartition;
  while (true) {
    double best_gain = 0.0;
    std::string best_node;
    Partition best_next;
    for (std::size_t side = 0; side < 2; ++side) {
      if (current.components[side].size() <= 1) continue;  // keep sides non-empty
      for (const auto& node : current.components[side]) {
        const double gain =
            external_cost(g, current, node) - internal_cost(g, current, node);
        if (gain <= 0.0 || gain <= best_gain) continue;

        std::vector<std::string> from, to;
        for (const auto& v : current.components[side])
          if (v != node) from.push_back(v);
        to = current.components[1 - side];
        to.push_back(node);
        std::sort(to.begin(), to.end());
        if (!is_connected(g.induced_subgraph(from)) ||
            !is_connected(g.induced_subgraph(to)))
          continue;
        Partition next{side == 0
                           ? std::vector<std::vector<std::string>>{from, to}
                           : std::vector<std::vector<std::string>>{to, from},
                       std::nullopt};
        std::sort(next.components.begin(), next.components.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
        if (!necessary_screen_passes(g, next, tau)) continue;
        best_gain = gain;
        best_node = node;
        best_next = next;
      }
    }
    if (best_gain <= 0.0) break;
    current = std::move(best_next);
    ++out.moves;
  }
  current.origin = boundary_cut(g, current);
  out.partition = std::move(current);
  return out;
}

namespace {

std::string partition_key(const Partition& p) {
  std::vector<std::string> comps;
  for (const auto& c : p.components) {
    std::string s;
    for (const auto& v : c) s += v + ",";
    comps.push_back(s);
  }
  std::sort(comps.begin(), comps.end());
  std::string key;
  for (const auto& c : comps) key += c + "|";
  return key;
}

class CandidateCollector {
 public:
  CandidateCollector(const WeightedGraph& g, double tau) : g_(g), tau_(tau) {}

  void offer(const Partition& p) {
    if (!seen_.insert(partition_key(p)).second) return;
    ++examined_;
    auto cert = certify_partition(g_, p, tau_);
    if (cert.overall != OverallVerdict::CertifiedStable) return;
    SearchEntry entry;
    entry.partition = p;
    if (!entry.partition.origin) entry.partition.origin = boundary_cut(g_, p);
    entry.cut_weight = partition_cut_weight(g_, entry.partition);
    entry.min_lambda2 = std::numeric_limits<double>::infinity();
    for (const auto& v : cert.per_component)
      if (v.exact_lambda2)
        entry.min_lambda2 = std::min(entry.min_lambda2, *v.exact_lambda2);
    entry.certificate = std::move(cert);
    certified_.push_back(std::move(entry));
  }

  SearchReport finish(SearchMode mode) {
    SearchReport report;
    report.mode = mode;
    report.candidates_examined = examined_;
    std::stable_sort(certified_.begin(), certified_.end(),
                     [](const SearchEntry& a, const SearchEntry& b) {
                       if (a.cut_weight != b.cut_weight)
                         return a.cut_weight < b.cut_weight;
                       return a.min_lambda2 > b.min_lambda2;
                     });
    report.certified = std::move(certified_);
    return report;
  }

 private:
  const WeightedGraph& g_;
  double tau_;
  std::set<std::string> seen_;
  std::size_t examined_ = 0;
  std::vector<SearchEntry> certified_;
};

// joins a split of one component back into the enclosing partition
Partition splice(const Partition& base, std::size_t comp_index,
                 const Partition& split) {
  std::vector<std::vector<std::string>> comps;
  for (std::size_t c = 0; c < base.components.size(); ++c) {
    if (c == comp_index) {
      comps.push_back(split.components[0]);
      comps.push_back(split.components[1]);
    } else {
      comps.push_back(base.components[c]);
    }
  }
  std::sort(comps.begin(), comps.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return Partition{std::move(comps), std::nullopt};
}

void exhaustive_recurse(const WeightedGraph& g, const Partition& base,
                        std::size_t max_components, CandidateCollector& sink) {
  if (base.components.size() >= max_components) return;
  for (std::size_t c = 0; c < base.components.size(); ++c) {
    const auto& comp = base.components[c];
    if (comp.size() < 2) continue;
    const auto sub = g.induced_subgraph(comp);
    enumerate_bipartitions(sub, [&](Partition&& split) {
      Partition merged = splice(base, c, split);
      merged.origin = boundary_cut(g, merged);
      sink.offer(merged);
      exhaustive_recurse(g, merged, max_components, sink);
    });
  }
}

std::vector<Partition> fiedler_sweep_candidates(const WeightedGraph& g) {
  const auto fp = fiedler(g);
  std::vector<std::size_t> order(g.node_count());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return fp.vector[a] < fp.vector[b];
  });

  std::vector<Partition> out;
  for (std::size_t split = 1; split < order.size(); ++split) {
    std::vector<std::string> side1, side2;
    for (std::size_t k = 0; k < order.size(); ++k)
      (k < split ? side1 : side2).push_back(g.nodes()[order[k]]);
    std::sort(side1.begin(), side1.end());
    std::sort(side2.begin(), side2.end());
    if (!is_connected(g.induced_subgraph(side1)) ||
        !is_connected(g.induced_subgraph(side2)))
      continue;
    std::vector<std::vector<std::string>> comps{side1, side2};
    std::sort(comps.begin(), comps.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    Partition p{std::move(comps), std::nullopt};
    p.origin = boundary_cut(g, p);
    out.push_back(std::move(p));
  }
  return out;
}

void heuristic_recurse(const WeightedGraph& g, const Partition& base,
                       double tau, std::size_t max_components,
                       CandidateCollector& sink) {
  if (base.components.size() >= max_components) return;
  for (std::size_t c = 0; c < base.components.size(); ++c) {
    const auto& comp = base.components[c];
    if (comp.size() < 2) continue;
    const auto sub = g.induced_subgraph(comp);
    for (const auto& split : fiedler_sweep_candidates(sub)) {
      std::vector<Partition> variants{split};
      const auto refined = refine_moves(sub, split, tau);
      if (refined.applicable && refined.moves > 0) variants.push_back(refined.partition);
      for (const auto& v : variants) {
        Partition merged = splice(base, c, v);
        merged.origin = boundary_cut(g, merged);
        sink.offer(merged);
        heuristic_recurse(g, merged, tau, max_components, sink);
      }
    }
  }
}

}  // namespace

SearchReport search_stable_cuts(const WeightedGraph& g, double tau,
                                SearchMode mode, std::size_t max_components) {
  if (!is_connected(g))
    throw Error(ErrorCode::Disconnected, "search needs a connected graph");
  if (max_components < 2)
    throw Error(ErrorCode::BadParams, "max_components must be at least 2");

  CandidateCollector collector(g, tau);
  const Partition whole{{g.nodes()}, std::nullopt};
  if (mode == SearchMode::Exhaustive) {
    if (g.node_count() > 20)
      throw Error(ErrorCode::TooLarge, "exhaustive search capped at 20 nodes");
    exhaustive_recurse(g, whole, max_components, collector);
  } else {
    heuristic_recurse(g, whole, tau, max_components, collector);
  }
  return collector.finish(mode);
}

}  // namespace stablecut

#include "stablecut/certify.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "stablecut/error.hpp"
#include "stablecut/spectral.hpp"

namespace stablecut {

const char* to_string(CheckResult r) {
  switch (r) {
    case CheckResult::Pass: return "pass";
    case CheckResult::Fail: return "fail";
    case CheckResult::NotApplicable: return "n/a";
  }
  return "?";
}

const char* to_string(OverallVerdict v) {
  switch (v) {
    case OverallVerdict::CertifiedStable: return "CertifiedStable";
    case OverallVerdict::CertifiedUnstable: return "CertifiedUnstable";
    case OverallVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

namespace {

// The two smallest internal costs over a component's nodes.
std::pair<double, double> two_smallest_internal(const WeightedGraph& g,
                                                const Partition& p,
                                                const std::vector<std::string>& comp) {
  double a = 0.0, b = 0.0;
  bool first = true, second = true;
  for (const auto& node : comp) {
    const double c = internal_cost(g, p, node);
    if (first || c < a) {
      if (!first) {
        b = a;
        second = false;
      }
      a = c;
      first = false;
    } else if (second || c < b) {
      b = c;
      second = false;
    }
  }
  return {a, b};
}

double max_external_cost(const WeightedGraph& g, const Partition& p,
                         const std::vector<std::string>& comp) {
  double m = 0.0;
  for (const auto& node : comp) m = std::max(m, external_cost(g, p, node));
  return m;
}

}  // namespace

std::vector<CheckResult> necessary_internal_cost(const WeightedGraph& g,
                                                 const Partition& p, double tau) {
  std::vector<CheckResult> out;
  out.reserve(p.components.size());
  for (const auto& comp : p.components) {
    if (comp.size() < 2) {
      out.push_back(CheckResult::NotApplicable);
      continue;
    }
    const auto [a, b] = two_smallest_internal(g, p, comp);
    out.push_back(a + b >= tau ? CheckResult::Pass : CheckResult::Fail);
  }
  return out;
}

std::vector<CheckResult> sufficient_external_cost(const WeightedGraph& g,
                                                  const Partition& p, double tau) {
  const double lambda2 = fiedler(g).value;
  std::vector<CheckResult> out;
  out.reserve(p.components.size());
  for (const auto& comp : p.components) {
    if (comp.size() < 2) {
      out.push_back(CheckResult::NotApplicable);
      continue;
    }
    out.push_back(max_external_cost(g, p, comp) <= lambda2 - tau
                      ? CheckResult::Pass
                      : CheckResult::Fail);
  }
  return out;
}

ZeroSetResult zero_valuation_components(const WeightedGraph& g, double tau,
                                        double eps_zero) {
  if (g.node_count() < 3)
    throw Error(ErrorCode::TooSmall, "zero-set analysis needs at least 3 nodes");
  const auto fp = fiedler(g);  // throws Disconnected

  ZeroSetResult out;
  out.lambda2_graph = fp.value;
  const double threshold = eps_zero * max_abs(fp.vector);
  std::set<std::string> zero_set;
  for (std::size_t i = 0; i < g.node_count(); ++i)
    if (std::abs(fp.vector[i]) <= threshold) zero_set.insert(g.nodes()[i]);
  out.zero_set.assign(zero_set.begin(), zero_set.end());
  if (zero_set.empty()) {
    out.no_zero_set = true;
    return out;
  }

  std::vector<std::string> remaining;
  for (const auto& node : g.nodes())
    if (!zero_set.count(node)) remaining.push_back(node);

  const auto sub = g.induced_subgraph(remaining);
  const auto groups = apply_cut(sub, Cut{}).components;
  for (const auto& comp : groups) {
    ZeroSetComponent zc;
    zc.nodes = comp;
    // external cost against the full graph: every edge leaving the component,
    // including edges into the deleted zero set
    std::set<std::string> members(comp.begin(), comp.end());
    for (const auto& node : comp) {
      double ext = 0.0;
      const std::size_t i = g.index_of(node);
      for (const auto& [j, w] : g.neighbors(i))
        if (!members.count(g.nodes()[j])) ext += w;
      zc.max_external = std::max(zc.max_external, ext);
    }
    if (comp.size() < 2) {
      zc.degenerate = true;
      zc.sufficient = CheckResult::NotApplicable;
    } else {
      zc.sufficient = zc.max_external <= fp.value - tau ? CheckResult::Pass
                                                        : CheckResult::Fail;
    }
    out.components.push_back(std::move(zc));
  }
  return out;
}

namespace {

struct BipartitionData {
  std::vector<std::string> side1;  // the given side, canonically ordered
  std::vector<std::string> side2;  // its complement
  bool given_is_side1 = true;      // whether side1 holds the first canonical node
};

BipartitionData split_sides(const WeightedGraph& g,
                            const std::vector<std::string>& side) {
  if (side.empty() || side.size() >= g.node_count())
    throw Error(ErrorCode::NotBipartition, "side must be a proper non-empty subset");
  std::set<std::string> members;
  for (const auto& node : side) {
    g.index_of(node);
    if (!members.insert(node).second)
      throw Error(ErrorCode::NotBipartition, "duplicate node in side: " + node);
  }
  BipartitionData out;
  for (const auto& node : g.nodes())
    (members.count(node) ? out.side1 : out.side2).push_back(node);
  out.given_is_side1 = members.count(g.nodes().front()) > 0;
  return out;
}

}  // namespace

FiedlerSumCheck fiedler_sum_check(const WeightedGraph& g,
                                  const std::vector<std::string>& side, double tau) {
  auto parts = split_sides(g, side);
  const auto& eval_side = parts.side1;   // the given side
  const auto& other_side = parts.side2;
  const auto fp = fiedler(g);

  std::set<std::string> members(eval_side.begin(), eval_side.end());
  std::vector<double> ext(g.node_count(), 0.0);
  double ext_abs_sum = 0.0;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    for (const auto& [j, w] : g.neighbors(i))
      if (members.count(g.nodes()[i]) != members.count(g.nodes()[j])) ext[i] += w;
    ext_abs_sum += std::abs(ext[i]);
  }

  FiedlerSumCheck out;
  out.side = parts.given_is_side1 ? 1 : 2;
  out.zeta = 1e-9 * max_abs(fp.vector) * (1.0 + ext_abs_sum);

  double sum_y = 0.0, lhs_tau = 0.0, lhs_raw = 0.0, rhs = 0.0;
  for (const auto& node : eval_side) {
    const std::size_t i = g.index_of(node);
    sum_y += fp.vector[i];
    lhs_tau += (ext[i] - tau) * fp.vector[i];
    lhs_raw += ext[i] * fp.vector[i];
  }
  for (const auto& node : other_side) {
    const std::size_t i = g.index_of(node);
    rhs += ext[i] * fp.vector[i];
  }

  out.valuation_sum = sum_y;
  out.rhs = rhs;
  if (sum_y > out.zeta) {
    out.condition_case = 1;
    out.lhs = lhs_tau;
    out.holds = lhs_tau >= rhs;
    out.outcome = out.holds ? SumCheckOutcome::Holds : SumCheckOutcome::Fails;
  } else if (sum_y < -out.zeta) {
    out.condition_case = 2;
    out.lhs = lhs_tau;
    out.holds = lhs_tau <= rhs;
    out.outcome = out.holds ? SumCheckOutcome::Holds : SumCheckOutcome::Fails;
  } else {
    out.condition_case = 3;
    out.lhs = lhs_raw;
    out.holds = std::abs(lhs_raw - rhs) <= out.zeta;
    out.outcome = SumCheckOutcome::Indeterminate;
  }
  return out;
}

double fiedler_identity_residual(const WeightedGraph& g,
                                 const std::vector<std::string>& side) {
  auto parts = split_sides(g, side);
  const auto fp = fiedler(g);
  std::set<std::string> members(parts.side1.begin(), parts.side1.end());

  double sum_y = 0.0, lhs = 0.0, rhs = 0.0;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    double ext = 0.0;
    for (const auto& [j, w] : g.neighbors(i))
      if (members.count(g.nodes()[i]) != members.count(g.nodes()[j])) ext += w;
    if (members.count(g.nodes()[i])) {
      sum_y += fp.vector[i];
      lhs += ext * fp.vector[i];
    } else {
      rhs += ext * fp.vector[i];
    }
  }
  return std::abs(fp.value * sum_y - (lhs - rhs));
}

StabilityCertificate certify_partition(const WeightedGraph& g, const Partition& p,
                                       double tau) {
  StabilityCertificate cert;
  cert.partition = p;
  cert.tau = tau;
  cert.lambda2_graph = fiedler(g).value;

  const auto necessary = necessary_internal_cost(g, p, tau);
  const auto sufficient = sufficient_external_cost(g, p, tau);

  bool any_unstable = false;
  bool any_degenerate = false;
  for (std::size_t c = 0; c < p.components.size(); ++c) {
    const auto& comp = p.components[c];
    ComponentVerdict verdict;
    verdict.component = comp;
    verdict.necessary = necessary[c];
    verdict.sufficient = sufficient[c];
    verdict.max_external = max_external_cost(g, p, comp);
    if (comp.size() < 2) {
      verdict.degenerate = true;
      any_degenerate = true;
    } else {
      const auto [a, b] = two_smallest_internal(g, p, comp);
      verdict.smallest_internal = a;
      verdict.second_smallest_internal = b;
      verdict.exact_lambda2 = fiedler(g.induced_subgraph(comp)).value;
      if (*verdict.exact_lambda2 < tau) any_unstable = true;
    }
    cert.per_component.push_back(std::move(verdict));
  }

  if (any_unstable)
    cert.overall = OverallVerdict::CertifiedUnstable;
  else if (any_degenerate)
    cert.overall = OverallVerdict::Inconclusive;
  else
    cert.overall = OverallVerdict::CertifiedStable;
  return cert;
}

}  // namespace stablecut

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stablecut/graph.hpp"

namespace stablecut {

enum class CheckResult { Pass, Fail, NotApplicable };

enum class OverallVerdict { CertifiedStable, CertifiedUnstable, Inconclusive };

const char* to_string(CheckResult r);
const char* to_string(OverallVerdict v);

/// Per-component outcome of the exact lambda2 check plus the internal-cost
/// (necessary) and external-cost (sufficient) screens, with the numbers that
/// produced it.
struct ComponentVerdict {
  std::vector<std::string> component;
  std::optional<double> exact_lambda2;  // absent for singletons
  bool degenerate = false;              // size-1 component
  CheckResult necessary = CheckResult::NotApplicable;
  CheckResult sufficient = CheckResult::NotApplicable;
  double smallest_internal = 0.0;
  double second_smallest_internal = 0.0;
  double max_external = 0.0;
};

struct StabilityCertificate {
  Partition partition;
  double tau = 0.0;
  double lambda2_graph = 0.0;
  std::vector<ComponentVerdict> per_component;
  OverallVerdict overall = OverallVerdict::Inconclusive;
};

/// Necessary screen: a component of a stable partition must have its two
/// smallest node internal costs summing to at least tau. A Fail refutes
/// stability of that component; a Pass proves nothing.
std::vector<CheckResult> necessary_internal_cost(const WeightedGraph& g,
                                                 const Partition& p, double tau);

/// Sufficient screen: max external cost of a component <= lambda2(G) - tau
/// certifies lambda2(component) >= tau. A Fail is inconclusive.
std::vector<CheckResult> sufficient_external_cost(const WeightedGraph& g,
                                                  const Partition& p,
                                                  double tau);  // Disconnected

/// Node deletion at the zero set of the Fiedler vector, with the same
/// external-cost screen applied to the remaining components. External cost
/// here counts every edge leaving the component, including edges into the
/// deleted set.
struct ZeroSetComponent {
  std::vector<std::string> nodes;
  double max_external = 0.0;
  bool degenerate = false;
  CheckResult sufficient = CheckResult::NotApplicable;
};
struct ZeroSetResult {
  std::vector<std::string> zero_set;
  bool no_zero_set = false;
  double lambda2_graph = 0.0;
  std::vector<ZeroSetComponent> components;
};
ZeroSetResult zero_valuation_components(const WeightedGraph& g, double tau,
                                        double eps_zero = 1e-8);

/// Valuation-sum test over one side of a bipartition. Sides need not be
/// internally connected (the per-component usage temporarily splits inside a
/// component). Case 3 (valuation sum ~ 0) holds identically and is reported
/// Indeterminate: it cannot separate lambda2 >= tau from the opposite.
enum class SumCheckOutcome { Holds, Fails, Indeterminate };
struct FiedlerSumCheck {
  int side = 1;  // 1 when the evaluated side contains the first canonical node
  int condition_case = 0;  // 1, 2 or 3
  double valuation_sum = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double zeta = 0.0;
  bool holds = false;
  SumCheckOutcome outcome = SumCheckOutcome::Indeterminate;
};
FiedlerSumCheck fiedler_sum_check(const WeightedGraph& g,
                                  const std::vector<std::string>& side,
                                  double tau);  // NotBipartition, Disconnected

/// |lambda2 * sum_{s in side} Y(s) - (sum_{side} E(s)Y(s) - sum_{other} E(s)Y(s))|,
/// which vanishes identically for every bipartition.
double fiedler_identity_residual(const WeightedGraph& g,
                                 const std::vector<std::string>& side);

/// Runs the exact per-component lambda2 check and both screens. The exact
/// check decides the overall verdict; the screens are corroborating evidence.
StabilityCertificate certify_partition(const WeightedGraph& g, const Partition& p,
                                       double tau);

}  // namespace stablecut

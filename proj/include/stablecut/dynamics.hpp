#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "stablecut/graph.hpp"
#include "stablecut/metapop.hpp"

namespace stablecut {

/// Fixed-step trajectory. `truncated` is set when the state left the finite
/// range (|x| > 1e12 or NaN); the rows up to that point are kept.
struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  bool truncated = false;
};

/// Rosenzweig-MacArthur predator-prey parameters with dispersal losses.
/// gamma: prey carrying capacity; beta, alpha: predator conversion and
/// mortality; l1, l2: prey/predator dispersal loss. Requires alpha + l2 < 1
/// so the coexistence equilibrium stays positive.
struct RMParams {
  double gamma = 2.0;
  double beta = 0.2;
  double alpha = 0.3;
  double l1 = 0.0;
  double l2 = 0.0;
};

/// Two-species metapopulation with RM local dynamics on every patch.
/// The predator loss enters the conversion bracket (beta * (x1/(1+x1) -
/// alpha - l2) * x2 in the coupled system), so the local field compensates
/// with +l2*x2 and the assembled E matrix carries the nominal losses.
/// Analytic Jacobian, closed-form default Newton seed and a loss-stripping
/// hook are attached.
MetapopModel rosenzweig_macarthur(const RMParams& params,
                                  const WeightedGraph& prey_graph,
                                  const WeightedGraph& pred_graph);
// BadParams, PatchSetMismatch

/// Closed-form per-patch coexistence equilibrium (prey, predator).
std::pair<double, double> rm_equilibrium(const RMParams& params);  // BadParams

/// Classical fixed-step RK4 on xdot = f(x) - Lx - Ex; the last step is
/// shortened to land exactly on t_end.
Trajectory integrate(const MetapopModel& model, std::vector<double> x0,
                     double t_end, double dt);  // BadParams

struct DecayResult {
  double ratio = 0.0;        // |x(t_end) - xbar|_2 / |delta * u|_2
  bool monotone_tail = false;  // norm non-increasing over the final 20%
  Trajectory trajectory;
};
/// Integrates from xbar + delta * u with u the normalized alternating-sign
/// unit vector (+1, -1, +1, ...). xbar must satisfy the equilibrium residual
/// within 1e-8.
DecayResult perturbation_decay(const MetapopModel& model,
                               const std::vector<double>& xbar, double delta,
                               double t_end, double dt);  // NotEquilibrium

/// Restriction of a model to a patch subset: induced species graphs, same
/// local dynamics and losses.
MetapopModel restrict_model(const MetapopModel& model,
                            const std::vector<std::string>& keep_patches);

struct ComponentOutcome {
  std::vector<std::string> patches;
  EquilibriumResult equilibrium;
  SpectrumVerdict verdict;             // losses retained
  EquilibriumResult lossless_equilibrium;
  SpectrumVerdict lossless_verdict;    // dispersal losses stripped
  DecayResult decay;                   // perturbation run, losses retained
};
struct CutExperimentResult {
  SpectrumVerdict pre;
  std::vector<std::vector<std::string>> components;
  std::vector<ComponentOutcome> post;
};
/// Removes the given patch pairs from every species graph (each pair must be
/// an edge of every species graph), splits the system along the residual
/// union graph, re-derives each component's equilibrium and reports spectra
/// before/after plus a perturbation run per component. Isolated patches keep
/// their local dynamics; verdicts are reported both with losses retained and
/// with losses stripped, since the two can disagree.
CutExperimentResult cut_experiment(const MetapopModel& model,
                                   const std::vector<double>& xbar,
                                   const std::vector<NodePair>& cut_pairs,
                                   double t_end, double dt);

/// Plain tabular export: time column plus one column per state variable
/// (species-major), preceded by a '#' header naming the columns.
void write_trajectory(std::ostream& os, const Trajectory& traj,
                      const MetapopModel& model);

}  // namespace stablecut

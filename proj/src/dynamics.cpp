#include "stablecut/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "stablecut/error.hpp"
#include "stablecut/io.hpp"

namespace stablecut {

std::pair<double, double> rm_equilibrium(const RMParams& p) {
  if (p.gamma <= 0.0 || p.beta <= 0.0 || p.alpha <= 0.0 || p.alpha >= 1.0 ||
      p.l1 < 0.0 || p.l2 < 0.0 || p.alpha + p.l2 >= 1.0)
    throw Error(ErrorCode::BadParams, "invalid Rosenzweig-MacArthur parameters");
  const double prey = (p.alpha + p.l2) / (1.0 - (p.alpha + p.l2));
  const double pred =
      (1.0 + prey) *
      (1.0 - p.l1 - (p.alpha + p.l2) / (p.gamma * (1.0 - (p.alpha + p.l2))));
  return {prey, pred};
}

MetapopModel rosenzweig_macarthur(const RMParams& params,
                                  const WeightedGraph& prey_graph,
                                  const WeightedGraph& pred_graph) {
  const auto [prey_eq, pred_eq] = rm_equilibrium(params);  // validates params
  if (!prey_graph.same_node_set(pred_graph))
    throw Error(ErrorCode::PatchSetMismatch,
                "prey and predator graphs must share the patch set");

  MetapopModel model;
  model.n_species = 2;
  model.patches = prey_graph.nodes();
  model.species_graphs = {prey_graph, pred_graph};
  model.losses = {params.l1, params.l2};

  const RMParams p = params;
  model.local_rhs = [p](std::size_t, std::span<const double> x,
                        std::span<double> dx) {
    const double prey = x[0], pred = x[1];
    dx[0] = prey * (1.0 - prey / p.gamma) - prey * pred / (1.0 + prey);
    dx[1] = p.beta * (prey / (1.0 + prey) - p.alpha - p.l2) * pred + p.l2 * pred;
  };
  model.local_jac = [p](std::size_t, std::span<const double> x,
                        std::span<double> jac) {
    const double prey = x[0], pred = x[1];
    const double denom = (1.0 + prey) * (1.0 + prey);
    jac[0] = 1.0 - 2.0 * prey / p.gamma - pred / denom;
    jac[1] = -prey / (1.0 + prey);
    jac[2] = p.beta * pred / denom;
    jac[3] = p.beta * (prey / (1.0 + prey) - p.alpha - p.l2) + p.l2;
  };
  model.strip_losses = [p](const MetapopModel& self) {
    RMParams lossless = p;
    lossless.l1 = 0.0;
    lossless.l2 = 0.0;
    return rosenzweig_macarthur(lossless, self.species_graphs[0],
                                self.species_graphs[1]);
  };

  const std::size_t m = model.patch_count();
  model.default_guess.assign(2 * m, prey_eq);
  for (std::size_t j = 0; j < m; ++j) model.default_guess[m + j] = pred_eq;
  return model;
}

Trajectory integrate(const MetapopModel& model, std::vector<double> x0,
                     double t_end, double dt) {
  validate_model(model);
  if (dt <= 0.0 || t_end <= 0.0)
    throw Error(ErrorCode::BadParams, "t_end and dt must be positive");
  if (x0.size() != model.dim())
    throw Error(ErrorCode::BadParams, "initial state has wrong dimension");

  const std::size_t dim = model.dim();
  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(x0);

  std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
  std::vector<double> x = std::move(x0);
  double t = 0.0;
  const auto finite = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double c) {
      return std::isfinite(c) && std::abs(c) <= 1e12;
    });
  };

  while (t < t_end - 1e-15 * t_end) {
    const double h = std::min(dt, t_end - t);
    eval_rhs(model, x, k1);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
    eval_rhs(model, tmp, k2);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
    eval_rhs(model, tmp, k3);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = x[i] + h * k3[i];
    eval_rhs(model, tmp, k4);
    for (std::size_t i = 0; i < dim; ++i)
      x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    t += h;
    if (!finite(x)) {
      traj.truncated = true;
      break;
    }
    traj.times.push_back(t);
    traj.states.push_back(x);
  }
  return traj;
}

DecayResult perturbation_decay(const MetapopModel& model,
                               const std::vector<double>& xbar, double delta,
                               double t_end, double dt) {
  validate_model(model);
  const std::size_t dim = model.dim();
  std::vector<double> residual(dim);
  eval_rhs(model, xbar, residual);
  if (max_abs(residual) > 1e-8)
    throw Error(ErrorCode::NotEquilibrium,
                "reference point is not an equilibrium (residual " +
                    format_sig(max_abs(residual)) + ")");

  // deterministic perturbation direction: normalized alternating signs
  std::vector<double> x0(xbar);
  const double unit = 1.0 / std::sqrt(static_cast<double>(dim));
  for (std::size_t i = 0; i < dim; ++i)
    x0[i] += delta * (i % 2 == 0 ? unit : -unit);

  DecayResult out;
  out.trajectory = integrate(model, std::move(x0), t_end, dt);

  std::vector<double> norms;
  norms.reserve(out.trajectory.states.size());
  for (const auto& row : out.trajectory.states) {
    double s = 0.0;
    for (std::size_t i = 0; i < dim; ++i) s += (row[i] - xbar[i]) * (row[i] - xbar[i]);
    norms.push_back(std::sqrt(s));
  }
  out.ratio = delta == 0.0 ? 0.0 : norms.back() / std::abs(delta);

  const std::size_t tail_start = norms.size() - std::max<std::size_t>(norms.size() / 5, 2);
  out.monotone_tail = true;
  double tail_scale = 0.0;
  for (std::size_t k = tail_start; k < norms.size(); ++k)
    tail_scale = std::max(tail_scale, norms[k]);
  for (std::size_t k = tail_start + 1; k < norms.size(); ++k)
    if (norms[k] > norms[k - 1] + 1e-12 * tail_scale) out.monotone_tail = false;
  return out;
}

MetapopModel restrict_model(const MetapopModel& model,
                            const std::vector<std::string>& keep_patches) {
  MetapopModel out;
  out.n_species = model.n_species;
  out.losses = model.losses;
  out.species_graphs.reserve(model.n_species);
  for (const auto& g : model.species_graphs)
    out.species_graphs.push_back(g.induced_subgraph(keep_patches));
  out.patches = out.species_graphs.front().nodes();

  // map restricted patch indices back to the original model's
  std::vector<std::size_t> back;
  back.reserve(out.patches.size());
  for (const auto& patch : out.patches)
    back.push_back(model.species_graphs.front().index_of(patch));

  const auto rhs = model.local_rhs;
  out.local_rhs = [rhs, back](std::size_t patch, std::span<const double> x,
                              std::span<double> dx) { rhs(back[patch], x, dx); };
  if (model.local_jac) {
    const auto jac = model.local_jac;
    out.local_jac = [jac, back](std::size_t patch, std::span<const double> x,
                                std::span<double> j) { jac(back[patch], x, j); };
  }
  out.strip_losses = model.strip_losses;
  if (!model.default_guess.empty()) {
    const std::size_t m_old = model.patch_count();
    out.default_guess.reserve(out.dim());
    for (std::size_t i = 0; i < model.n_species; ++i)
      for (std::size_t idx : back)
        out.default_guess.push_back(model.default_guess[i * m_old + idx]);
  }
  return out;
}

namespace {

MetapopModel lossless_variant(const MetapopModel& model) {
  if (model.strip_losses) return model.strip_losses(model);
  MetapopModel out = model;
  std::fill(out.losses.begin(), out.losses.end(), 0.0);
  return out;
}

}  // namespace

CutExperimentResult cut_experiment(const MetapopModel& model,
                                   const std::vector<double>& xbar,
                                   const std::vector<NodePair>& cut_pairs,
                                   double t_end, double dt) {
  validate_model(model);
  for (const auto& [u, v] : cut_pairs)
    for (std::size_t i = 0; i < model.n_species; ++i)
      if (!model.species_graphs[i].has_edge(u, v))
        throw Error(ErrorCode::UnknownEdge,
                    "cut pair (" + u + ", " + v + ") missing from species graph " +
                        std::to_string(i + 1));

  CutExperimentResult out;
  out.pre = spectrum_verdict(linearize(model, xbar));

  // components of the residual union graph: patches decouple only when no
  // species disperses across
  std::vector<EdgeSpec> union_edges;
  std::set<NodePair> removed;
  for (const auto& [u, v] : cut_pairs)
    removed.insert(u < v ? NodePair{u, v} : NodePair{v, u});
  std::set<NodePair> seen;
  for (const auto& g : model.species_graphs) {
    for (const auto& [i, j, w] : g.edges()) {
      NodePair key{g.nodes()[i], g.nodes()[j]};
      if (removed.count(key) || !seen.insert(key).second) continue;
      union_edges.emplace_back(key.first, key.second, 1.0);
    }
  }
  const WeightedGraph union_graph(model.patches, union_edges);
  out.components = apply_cut(union_graph, Cut{}).components;

  const std::size_t m_old = model.patch_count();
  for (const auto& comp : out.components) {
    ComponentOutcome oc;
    oc.patches = comp;

    std::vector<NodePair> comp_removed;
    for (const auto& [u, v] : removed) {
      const bool u_in = std::binary_search(comp.begin(), comp.end(), u);
      const bool v_in = std::binary_search(comp.begin(), comp.end(), v);
      if (u_in && v_in) comp_removed.emplace_back(u, v);
    }
    MetapopModel restricted = restrict_model(model, comp);
    for (auto& g : restricted.species_graphs) {
      std::vector<EdgeSpec> kept;
      for (const auto& [i, j, w] : g.edges()) {
        NodePair key{g.nodes()[i], g.nodes()[j]};
        if (!std::count(comp_removed.begin(), comp_removed.end(), key))
          kept.emplace_back(key.first, key.second, w);
      }
      g = WeightedGraph(g.nodes(), kept);
    }

    std::vector<double> guess;
    guess.reserve(restricted.dim());
    for (std::size_t i = 0; i < model.n_species; ++i)
      for (const auto& patch : comp)
        guess.push_back(xbar[i * m_old + model.species_graphs[0].index_of(patch)]);

    oc.equilibrium = find_equilibrium(restricted, guess);
    oc.verdict = spectrum_verdict(linearize(restricted, oc.equilibrium.x));

    MetapopModel lossless = lossless_variant(restricted);
    oc.lossless_equilibrium = find_equilibrium(
        lossless, lossless.default_guess.empty() ? guess : lossless.default_guess);
    oc.lossless_verdict =
        spectrum_verdict(linearize(lossless, oc.lossless_equilibrium.x));

    const double scale = std::max(max_abs(oc.equilibrium.x), 1.0);
    oc.decay = perturbation_decay(restricted, oc.equilibrium.x, 1e-2 * scale,
                                  t_end, dt);
    out.post.push_back(std::move(oc));
  }
  return out;
}

void write_trajectory(std::ostream& os, const Trajectory& traj,
                      const MetapopModel& model) {
  os << "# t";
  for (std::size_t i = 0; i < model.n_species; ++i)
    for (const auto& patch : model.patches)
      os << " x" << (i + 1) << "," << patch;
  os << "\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    os << format_sig(traj.times[k]);
    for (double v : traj.states[k]) os << " " << format_sig(v);
    os << "\n";
  }
  if (traj.truncated) os << "# truncated: state left the finite range\n";
}

}  // namespace stablecut

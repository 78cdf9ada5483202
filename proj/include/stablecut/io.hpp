#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "stablecut/certify.hpp"
#include "stablecut/dynamics.hpp"
#include "stablecut/graph.hpp"
#include "stablecut/matrix.hpp"
#include "stablecut/metapop.hpp"
#include "stablecut/search.hpp"

namespace stablecut {

/// Fixed 12-significant-digit formatting used by every report and file
/// writer, so outputs are byte-deterministic and diffable.
std::string format_sig(double value);

// --- graph files: lines "u v w", '#' comments and blank lines ignored ---
WeightedGraph parse_graph_file(std::istream& in);            // ParseError
WeightedGraph load_graph_file(const std::string& path);      // ParseError
void write_graph_file(std::ostream& os, const WeightedGraph& g);

// --- cut files: lines "u v" naming existing edges ---
Cut parse_cut_file(std::istream& in, const WeightedGraph& g);  // ParseError, UnknownEdge
Cut load_cut_file(const std::string& path, const WeightedGraph& g);
void write_cut_file(std::ostream& os, const Cut& cut);

/// Model files: key-value lines plus per-species edge sections.
///   species <count>
///   patches <name> <name> ...
///   builtin rosenzweig_macarthur | linear
///   param <key> <value>          (rm: gamma beta alpha l1 l2)
///   loss <species> <value>       (linear builtin)
///   jac <n values>               (linear builtin: one row of the local matrix)
///   graph <species>              (section of "u v w" edge lines)
/// Unknown keys are rejected; every edge endpoint must be a declared patch.
struct ModelFileData {
  std::string builtin;  // "rosenzweig_macarthur" or "linear"
  std::size_t n_species = 0;
  std::vector<std::string> patches;
  RMParams rm;
  Matrix linear_local;  // n x n local interaction matrix (linear builtin)
  std::vector<double> losses;
  std::vector<std::vector<EdgeSpec>> species_edges;

  MetapopModel to_model() const;  // BadParams et al.
};
ModelFileData parse_model_file(std::istream& in);            // ParseError
ModelFileData load_model_file(const std::string& path);
void write_model_file(std::ostream& os, const ModelFileData& data);

/// Linear builtin: local field x -> A x at every patch (plus dispersal and
/// loss terms from the model proper).
MetapopModel make_linear_model(const Matrix& local, const std::vector<double>& losses,
                               const std::vector<WeightedGraph>& species_graphs);

// --- report writers (plain structured text, byte-deterministic) ---
void write_fiedler_report(std::ostream& os, const WeightedGraph& g,
                          const FiedlerPair& fp);
void write_certificate_report(std::ostream& os, const WeightedGraph& g,
                              const StabilityCertificate& cert);
void write_search_report(std::ostream& os, const WeightedGraph& g,
                         const SearchReport& report);
void write_tau_report(std::ostream& os, const LinearizedSystem& sys,
                      const GershgorinReport& gersh, double tau_positive,
                      double tau_all, double trace_bound,
                      const SpectrumVerdict& verdict);

}  // namespace stablecut

#pragma once

#include <string>
#include <vector>

#include "hypergm/gaussmanin.hpp"

namespace hypergm {

/// One term c [dlog P - dlog Q] of a connection-matrix entry.
struct DlogTerm {
  WeightExpr coeff;
  ProjForm plus;
  ProjForm minus;
};

/// Embedded worked example: arrangement, combinatorics and connection data
/// as printed, plus the per-component residues derived from it.
struct WorkedExample {
  std::string name;
  Arrangement arrangement;
  std::vector<ProjForm> discriminant;
  std::vector<IndexSet> basis;
  /// entries[i][j] is entry (i, j) in bracket notation.
  std::vector<std::vector<std::vector<DlogTerm>>> entries;
  /// Residues collected from `entries`, canonical order, h0 last.
  GMConnection connection;
  /// Residue matrices printed separately (Example I only), keyed by form.
  std::vector<GMComponent> stated_residues;
  /// Traces printed next to the stated residues, same order.
  std::vector<WeightExpr> stated_traces;

  /// Residue of the component written like "h1" or "h0 - h2".
  const Matrix<WeightExpr>& residue(const std::string& form) const;
};

struct Fixtures {
  WorkedExample example1;
  WorkedExample ceva;
  /// Affine circuits, broken circuits and the degree-2 relation generators
  /// listed for the Ceva arrangement.
  std::vector<IndexSet> ceva_affine_circuits;
  std::vector<IndexSet> ceva_broken_circuits;
  std::vector<ExtElem> ceva_relations;
};

const Fixtures& fixtures();

/// Collects bracket entries into per-component residue matrices.
GMConnection collect_residues(const std::vector<IndexSet>& basis,
                              const std::vector<std::vector<std::vector<DlogTerm>>>& entries);

/// "(-a1 - a5)[dh1/h1 - dh0/h0] - a2[dh2/h2 - dh0/h0]" style rendering of a
/// connection entry, terms grouped by component pairs.
std::string bracket_entry(const GMConnection& g, std::size_t i, std::size_t j);

}  // namespace hypergm

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hypergm/arrangement.hpp"

namespace hypergm {

using IndexSet = std::vector<int>;

struct Circuit {
  IndexSet support;
  QVec dependency;  // aligned with support, first entry 1
  bool contains_infinity = false;
};

struct BrokenCircuit {
  IndexSet support;
  int princ = 0;
};

/// Linear matroid of the cone of an arrangement. The infinity hyperplane is
/// the least element; the other hyperplanes keep their index order.
class Matroid {
 public:
  explicit Matroid(Arrangement a);

  const Arrangement& arrangement() const { return a_; }
  int infinity() const { return static_cast<int>(a_.infinity()); }
  std::size_t n() const { return a_.n(); }
  /// Hyperplane indices other than infinity, increasing.
  const IndexSet& ground() const { return ground_; }

  /// Position in the matroid order (infinity first).
  int order(int i) const { return order_[static_cast<std::size_t>(i)]; }
  int least(const IndexSet& s) const;

  std::size_t rank(const IndexSet& s) const;
  bool independent(const IndexSet& s) const { return rank(s) == s.size(); }
  /// Normalized dependency vector when `s` is dependent.
  std::optional<QVec> dependency(const IndexSet& s) const;
  /// {infinity} together with `s` is dependent.
  bool dependent_with_infinity(const IndexSet& s) const;

  const std::vector<Circuit>& circuits() const { return circuits_; }
  const std::vector<BrokenCircuit>& broken_circuits() const { return broken_; }

  /// Least princ among broken circuits inside `s` (lex-smallest support on
  /// ties), if any.
  std::optional<BrokenCircuit> least_broken_circuit_in(const IndexSet& s) const;

  bool is_nbc(const IndexSet& s) const;
  std::vector<IndexSet> nbc_sets(std::size_t p) const;
  std::vector<IndexSet> nbc_bases() const { return nbc_sets(n()); }

  /// Circuits as seen in the affine chart: cone circuits of size at most
  /// n + 1 with the infinity index removed.
  std::vector<IndexSet> affine_circuits() const;
  /// Broken circuits coming from circuits that meet in the affine chart.
  std::vector<BrokenCircuit> affine_broken_circuits() const;
  /// nbc bases from the affine rules: dependence means rank deficiency or
  /// empty intersection, broken circuits only from meeting circuits.
  std::vector<IndexSet> affine_nbc_bases() const;

  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  Arrangement a_;
  IndexSet ground_;
  std::vector<int> order_;
  std::vector<Circuit> circuits_;
  std::vector<BrokenCircuit> broken_;
  std::vector<std::string> warnings_;
};

/// All k-subsets of `from` in lexicographic order.
std::vector<IndexSet> subsets(const IndexSet& from, std::size_t k);

bool contains(const IndexSet& big, const IndexSet& small);

}  // namespace hypergm

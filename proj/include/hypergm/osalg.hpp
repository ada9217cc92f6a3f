#pragma once

#include <map>
#include <string>
#include <vector>

#include "hypergm/matroid.hpp"

namespace hypergm {

/// Element of the exterior algebra on hyperplane symbols e_i, stored as a
/// map from strictly increasing index tuples to coefficients.
class ExtElem {
 public:
  using Terms = std::map<IndexSet, Rat>;

  ExtElem() = default;
  static ExtElem unit();  // e_{} = 1
  static ExtElem monomial(IndexSet idx, const Rat& c = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rat coeff(const IndexSet& idx) const;
  /// Degree of a homogeneous element; -1 for zero; throws if mixed.
  int degree() const;

  void add(const IndexSet& idx, const Rat& c);

  ExtElem& operator+=(const ExtElem& o);
  ExtElem& operator-=(const ExtElem& o);
  ExtElem& operator*=(const Rat& c);
  friend ExtElem operator+(ExtElem a, const ExtElem& b) { return a += b; }
  friend ExtElem operator-(ExtElem a, const ExtElem& b) { return a -= b; }
  friend ExtElem operator*(const Rat& c, ExtElem a) { return a *= c; }
  friend bool operator==(const ExtElem& a, const ExtElem& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  Terms terms_;
};

/// Degree-n combination of dlog wedges; the moving hyperplane uses the
/// largest index.
using LogComb = ExtElem;

/// Sign and sorted result of e_i ^ e_J; sign 0 when i is already in J.
std::pair<int, IndexSet> wedge_index(int i, const IndexSet& j);
ExtElem wedge(const ExtElem& a, const ExtElem& b);

ExtElem boundary(const ExtElem& e);

struct Relation {
  enum class Kind { dependent, boundary };
  Kind kind;
  IndexSet source;  // B for dependent, B together with its princ otherwise
  ExtElem element;
};

/// Orlik-Solomon algebra of the affine chart of a matroid's arrangement.
class OSAlgebra {
 public:
  explicit OSAlgebra(const Matroid& m) : m_(&m) {}

  const Matroid& matroid() const { return *m_; }

  /// Rewrites onto nbc monomials.
  ExtElem normal_form(const ExtElem& e) const;

  /// e_B for dependent B and the boundary of B with its least princ added
  /// for independent non-nbc B, over all p-subsets B.
  std::vector<Relation> relation_basis(std::size_t p) const;
  std::vector<Relation> relation_basis_top() const { return relation_basis(m_->n()); }

  /// Coordinates of normal_form(e) in the nbc_sets(p) basis.
  QVec coordinates(const ExtElem& e, const std::vector<IndexSet>& basis) const;

 private:
  const Matroid* m_;
};

}  // namespace hypergm

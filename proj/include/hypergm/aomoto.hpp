#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypergm/osalg.hpp"
#include "hypergm/poly.hpp"

namespace hypergm {

/// Numeric weights: a_i keyed by hyperplane index (infinity excluded) and the
/// weight of the moving hyperplane when there is one.
struct Weights {
  std::map<int, Rat> a;
  std::optional<Rat> a_h;

  /// a_0 = -(sum of a_i) - a_h.
  Rat a0() const;
  /// Keyed by weight-symbol id.
  Assignment assignment() const;
  static Weights from_assignment(const Assignment& at);
};

struct WeightReport {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Non-integrality of every weight (a_0 and a_h included) and of the weight
/// sum over every bad flat.
WeightReport validate_weights(const Arrangement& a, const Weights& w);

/// Adds the moving hyperplane (homogeneous coefficients) as the last index.
Arrangement extend(const Arrangement& fixed, const std::vector<Rat>& moving);

/// Affine chart forms indexed like the arrangement; infinity maps to 1.
std::vector<AffineForm> chart_forms(const Arrangement& a);

/// Rational top form numerator / prod(denominator forms) dx_1 ^ ... ^ dx_n.
/// Numerator variables are the coordinate ids 1..n.
struct RatForm {
  Poly numerator;
  IndexSet denominator;

  Rat evaluate(const std::vector<AffineForm>& forms, const std::vector<Rat>& x) const;
};

/// Value of a degree-n LogComb at x as a multiple of dx_1 ^ ... ^ dx_n.
Rat evaluate_logcomb(const LogComb& g, const std::vector<AffineForm>& forms, const std::vector<Rat>& x);

/// Partial-fraction reduction of rational top forms to dlog wedges over a
/// fixed arrangement.
class FormReducer {
 public:
  explicit FormReducer(const Matroid& m);
  /// Throws NotLogarithmic when `f` is not a combination of dlog wedges and
  /// ValidationError for repeated or unknown poles.
  LogComb reduce(const RatForm& f) const;

 private:
  struct ChartCircuit {
    IndexSet support;  // infinity removed
    std::vector<Rat> mu;
    Rat c;  // sum mu_i f_i = c
  };
  const Matroid* m_;
  std::vector<AffineForm> forms_;
  std::vector<ChartCircuit> chart_circuits_;
};

LogComb reduce_rational_form(const RatForm& f, const Arrangement& a);

/// Aomoto complex of an arrangement, optionally with a moving hyperplane at
/// its last index.
class AomotoComplex {
 public:
  AomotoComplex(Arrangement a, bool has_moving);
  // The OS algebra points into the owned matroid.
  AomotoComplex(const AomotoComplex&) = delete;
  AomotoComplex& operator=(const AomotoComplex&) = delete;

  const Matroid& matroid() const { return matroid_; }
  const OSAlgebra& os() const { return os_; }
  std::size_t n() const { return matroid_.n(); }
  bool has_moving() const { return moving_ >= 0; }
  int moving_index() const { return moving_; }
  int symbol_of(int index) const { return index == moving_ ? kMovingSymbol : index; }
  std::vector<int> symbols() const;

  const std::vector<IndexSet>& nbc(std::size_t p) const { return nbc_[p]; }
  /// nbc n-sets avoiding the moving hyperplane.
  const std::vector<IndexSet>& fixed_basis() const { return fixed_basis_; }

  /// Matrix of w ^ . from degree p-1 to degree p in nbc coordinates.
  Matrix<WeightExpr> wedge_omega_matrix(std::size_t p) const;
  QMat wedge_omega_matrix(std::size_t p, const Assignment& w) const;

  /// dim H^p for p = 0..n; throws ResonanceError when the weights fail
  /// validation.
  std::vector<std::size_t> cohomology_dims(const Assignment& w) const;

  /// Coordinates over fixed_basis() of the classes of degree-n elements.
  /// Throws ResonanceError when the system has no unique answer.
  std::vector<QVec> reduce_to_nbc_class(const std::vector<LogComb>& g, const Assignment& w) const;
  QVec reduce_to_nbc_class(const LogComb& g, const Assignment& w) const;

  WeightReport validate(const Assignment& w) const;

 private:
  Matroid matroid_;
  OSAlgebra os_;
  int moving_ = -1;
  std::vector<std::vector<IndexSet>> nbc_;
  std::vector<IndexSet> fixed_basis_;
  std::vector<Matrix<WeightExpr>> omega_;  // omega_[p] for p = 1..n
};

}  // namespace hypergm

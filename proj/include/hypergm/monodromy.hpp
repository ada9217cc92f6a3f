#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hypergm/cmat.hpp"
#include "hypergm/gaussmanin.hpp"

namespace hypergm {

/// Stored residue of a component; throws ValidationError naming the
/// available components when the form is absent.
Matrix<WeightExpr> residue_of(const GMConnection& g, const ProjForm& component);

/// The trace t when A * A = t * A holds identically in the weights.
std::optional<WeightExpr> projector_structure(const Matrix<WeightExpr>& a);

enum class MonodromyMode { closed_form, numeric, both };

struct EigenGap {
  cplx lambda_i;
  cplx lambda_j;
  double margin;  // distance of lambda_i - lambda_j from the nearest nonzero integer
};

struct MonodromyResult {
  CMat matrix;
  std::string method;  // "closed_form", "numeric" or "both"
  std::vector<EigenGap> conditions;
  std::optional<WeightExpr> trace;
};

CMat to_cmat(const QMat& m);

/// exp(-2 pi i A(w)) after checking that no two eigenvalues of A(w) differ by
/// a nonzero integer. Closed form needs projector structure; `both` also
/// cross-checks against the numeric exponential to 1e-10.
MonodromyResult monodromy(const Matrix<WeightExpr>& a, const Assignment& w, MonodromyMode mode);

}  // namespace hypergm

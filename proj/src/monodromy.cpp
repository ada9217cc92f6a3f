#include "hypergm/monodromy.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "hypergm/errors.hpp"

namespace hypergm {

Matrix<WeightExpr> residue_of(const GMConnection& g, const ProjForm& component) {
  if (const GMComponent* c = g.find(component)) return c->residue;
  std::string avail;
  for (const GMComponent& c : g.components) avail += (avail.empty() ? "" : ", ") + c.form.to_string('h');
  throw ValidationError("no discriminant component " + component.to_string('h') + "; available: " + avail);
}

std::optional<WeightExpr> projector_structure(const Matrix<WeightExpr>& a) {
  if (!a.square()) return std::nullopt;
  WeightExpr t;
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  const Matrix<WeightPoly> p = a.map([](const WeightExpr& e) { return e.to_poly(); });
  const WeightPoly tp = t.to_poly();
  const Matrix<WeightPoly> sq = p * p;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!(sq(i, j) == tp * p(i, j))) return std::nullopt;
  return t;
}

CMat to_cmat(const QMat& m) {
  CMat out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).to_double();
  return out;
}

namespace {

constexpr double kResonanceTol = 1e-9;
constexpr double kAgreeTol = 1e-10;

std::vector<EigenGap> resonance_conditions(const CMat& a) {
  std::vector<EigenGap> out;
  if (a.rows() == 0) return out;
  const Eigen::ComplexEigenSolver<CMat> es(a, false);
  const auto& ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    for (Eigen::Index j = i + 1; j < ev.size(); ++j) {
      const cplx d = ev(i) - ev(j);
      double k = std::round(d.real());
      if (k == 0.0) k = d.real() >= 0 ? 1.0 : -1.0;
      const double margin = std::abs(d - cplx(k, 0.0));
      out.push_back({ev(i), ev(j), margin});
    }
  return out;
}

}  // namespace

MonodromyResult monodromy(const Matrix<WeightExpr>& a, const Assignment& w, MonodromyMode mode) {
  if (!a.square()) throw ValidationError("residue matrix must be square");
  const QMat aq = a.map([&](const WeightExpr& e) { return e.evaluate(w); });
  const CMat ac = to_cmat(aq);
  const auto n = ac.rows();

  MonodromyResult r;
  r.conditions = resonance_conditions(ac);
  for (const EigenGap& g : r.conditions)
    if (g.margin < kResonanceTol)
      throw ResonanceError("resonant residue; conjugacy-class formula inapplicable (eigenvalues " +
                           std::to_string(g.lambda_i.real()) + " and " + std::to_string(g.lambda_j.real()) +
                           " differ by an integer)");

  const cplx two_pi_i(0.0, 2.0 * std::numbers::pi);
  std::optional<CMat> closed;
  r.trace = projector_structure(a);
  if (r.trace && mode != MonodromyMode::numeric) {
    const Rat t = r.trace->evaluate(w);
    const CMat id = CMat::Identity(n, n);
    if (t.is_zero()) {
      closed = id - two_pi_i * ac;
    } else {
      const double td = t.to_double();
      const cplx factor = (std::exp(-two_pi_i * td) - 1.0) / td;
      closed = id + factor * ac;
    }
  }
  if (mode == MonodromyMode::closed_form) {
    if (!closed) throw ValidationError("closed form needs A^2 = tr(A) A, which does not hold");
    r.matrix = *closed;
    r.method = "closed_form";
    return r;
  }
  const CMat numeric = cexp_matrix(-two_pi_i * ac);
  if (mode == MonodromyMode::numeric || !closed) {
    r.matrix = numeric;
    r.method = "numeric";
    return r;
  }
  const double diff = n ? (numeric - *closed).cwiseAbs().maxCoeff() : 0.0;
  if (diff > kAgreeTol)
    throw ConsistencyError("closed-form and numeric monodromy differ by " + std::to_string(diff));
  r.matrix = *closed;
  r.method = "both";
  return r;
}

}  // namespace hypergm

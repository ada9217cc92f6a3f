#include "hypergm/gaussmanin.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "hypergm/errors.hpp"
#include "hypergm/linalg.hpp"

namespace hypergm {

MovingFamily::MovingFamily(Arrangement base, std::optional<Weights> weights)
    : base_(std::move(base)), weights_(std::move(weights)) {
  if (weights_ && !weights_->a_h) throw ValidationError("family weights need a value for ah");
}

std::vector<int> MovingFamily::symbols() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < base_.size(); ++i)
    if (i != base_.infinity()) out.push_back(static_cast<int>(i));
  out.push_back(kMovingSymbol);
  return out;
}

std::vector<Rat> MovingFamily::moving_form(const std::vector<Rat>& l) const {
  if (l.size() != n()) throw std::invalid_argument("parameter point has the wrong dimension");
  std::vector<Rat> h{Rat(1)};
  h.insert(h.end(), l.begin(), l.end());
  return h;
}

AffineForm MovingFamily::x_s(const std::vector<Rat>& l) const { return affine_in_chart(base_, moving_form(l)); }

AffineForm MovingFamily::dx_s(std::size_t k) const {
  if (k < 1 || k > n()) throw std::invalid_argument("parameter index out of range");
  std::vector<Rat> e(n() + 1);
  e[k] = 1;
  return affine_in_chart(base_, e);
}

namespace {

Poly as_poly(const AffineForm& f) {
  Poly p = f.constant;
  for (std::size_t j = 0; j < f.linear.size(); ++j) p += Poly::variable(static_cast<int>(j + 1)) * f.linear[j];
  return p;
}

// Ratio stored / true for two proportional affine forms.
Rat proportion(const AffineForm& stored, const AffineForm& truth) {
  if (!truth.constant.is_zero()) return stored.constant / truth.constant;
  for (std::size_t j = 0; j < truth.linear.size(); ++j)
    if (!truth.linear[j].is_zero()) return stored.linear[j] / truth.linear[j];
  throw std::logic_error("moving hyperplane degenerates to a constant");
}

}  // namespace

RatForm raw_derivative(const MovingFamily& f, const Arrangement& ext, const std::vector<Rat>& l,
                       const IndexSet& j, std::size_t k, const Rat& a_h) {
  const std::size_t n = f.n();
  if (k < 1 || k > n) throw ValidationError("parameter index " + std::to_string(k) + " outside 1.." + std::to_string(n));
  if (j.size() != n) throw ValidationError("basis element must have " + std::to_string(n) + " indices");
  const int s = static_cast<int>(ext.size()) - 1;
  const std::vector<AffineForm> forms = chart_forms(ext);
  QMat lam(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const int i = j[r];
    if (i < 0 || i >= s || i == static_cast<int>(ext.infinity()))
      throw ValidationError("basis index " + std::to_string(i) + " is not a finite fixed hyperplane");
    for (std::size_t c = 0; c < n; ++c) lam(r, c) = forms[static_cast<std::size_t>(i)].linear[c];
  }
  const Rat kappa = proportion(forms[static_cast<std::size_t>(s)], f.x_s(l));
  RatForm out;
  out.numerator = as_poly(f.dx_s(k)) * (a_h * kappa * determinant(lam));
  out.denominator = j;
  out.denominator.push_back(s);
  return out;
}

const GMComponent* GMConnection::find(const ProjForm& f) const {
  for (const GMComponent& c : components)
    if (c.form == f) return &c;
  return nullptr;
}

std::vector<QMat> GMConnection::evaluate(const Assignment& w) const {
  std::vector<QMat> out;
  for (const GMComponent& c : components) out.push_back(c.residue.map([&](const WeightExpr& e) { return e.evaluate(w); }));
  return out;
}

namespace {

Rat eval_h(const ProjForm& f, const std::vector<Rat>& l) {
  Rat v = f[0];
  for (std::size_t k = 0; k < l.size(); ++k) v += f[k + 1] * l[k];
  return v;
}

bool affinely_spanning(const std::vector<Assignment>& pts, const std::vector<int>& syms) {
  QMat m(pts.size(), syms.size() + 1);
  for (std::size_t r = 0; r < pts.size(); ++r) {
    m(r, 0) = 1;
    for (std::size_t c = 0; c < syms.size(); ++c) m(r, c + 1) = pts[r].at(syms[c]);
  }
  return rank(m) == syms.size() + 1;
}

std::vector<Assignment> weight_samples(const MovingFamily& f, Sampler& rng) {
  const std::vector<int> syms = f.symbols();
  if (f.weights()) {
    const WeightReport rep = validate_weights(f.base(), *f.weights());
    if (!rep.ok) throw ResonanceError("weights are not generic: " + rep.violations.front());
    return {f.weights()->assignment()};
  }
  std::vector<Assignment> out;
  const std::size_t want = syms.size() + 2;
  for (int guard = 0; out.size() < want; ++guard) {
    if (guard > 1000) throw ConsistencyError("could not draw generic weight samples");
    Assignment a;
    for (int id : syms) a[id] = Rat(rng.integer(1, 40), rng.integer(7, 31)) * Rat(rng.integer(0, 1) ? 1 : -1);
    if (!validate_weights(f.base(), Weights::from_assignment(a)).ok) continue;
    out.push_back(a);
    if (out.size() == want && !affinely_spanning(out, syms)) out.pop_back();
  }
  return out;
}

struct LSample {
  std::vector<Rat> l;
  // values[w][k - 1][j] = coordinates of the image of basis element j.
  std::vector<std::vector<std::vector<QVec>>> values;
};

}  // namespace

GMConnection gm_matrix(const MovingFamily& f, const GmOptions& opts) {
  const Arrangement& base = f.base();
  const std::size_t n = f.n();
  std::vector<Rat> h0c(n + 1);
  h0c[0] = 1;
  const ProjForm h0(h0c);

  std::vector<ProjForm> chart;
  for (const ProjForm& d : discriminant(base)) {
    bool moves = false;
    for (std::size_t k = 1; k <= n; ++k) moves = moves || !d[k].is_zero();
    if (moves) chart.push_back(d);
  }

  GMConnection out;
  out.basis = Matroid(base).nbc_bases();
  const std::size_t nb = out.basis.size();

  Sampler rng(opts.seed);
  const std::vector<Assignment> ws = weight_samples(f, rng);

  const std::size_t fit_count = chart.size() + 2;
  const std::size_t want = fit_count + 2;
  std::vector<LSample> samples;
  int failures = 0;
  while (samples.size() < want) {
    LSample smp;
    for (std::size_t k = 0; k < n; ++k) smp.l.push_back(rng.nonzero_rational(9, 5));
    bool on_disc = false;
    for (const ProjForm& d : chart) on_disc = on_disc || eval_h(d, smp.l).is_zero();
    if (on_disc) continue;
    Arrangement ext;
    try {
      ext = extend(base, f.moving_form(smp.l));
    } catch (const ValidationError&) {
      continue;  // moving hyperplane coincides with a fixed one
    }
    try {
      const AomotoComplex cx(ext, true);
      if (cx.fixed_basis() != out.basis) throw ResonanceError("fiber basis differs from the fixed nbc basis");
      const FormReducer reducer(cx.matroid());
      std::vector<LogComb> g;
      for (std::size_t k = 1; k <= n; ++k)
        for (const IndexSet& j : out.basis) g.push_back(reducer.reduce(raw_derivative(f, ext, smp.l, j, k, 1)));
      for (const Assignment& w : ws) {
        const std::vector<QVec> c = cx.reduce_to_nbc_class(g, w);
        const Rat ah = w.at(kMovingSymbol);
        std::vector<std::vector<QVec>> per_k(n);
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t j = 0; j < nb; ++j) {
            QVec col = c[k * nb + j];
            for (Rat& v : col) v *= ah;
            per_k[k].push_back(std::move(col));
          }
        smp.values.push_back(std::move(per_k));
      }
      samples.push_back(std::move(smp));
    } catch (const ResonanceError&) {
      if (++failures > 8) throw ResonanceError("resonance or discriminant sample persisted after 8 resamples");
    }
  }

  // One row per (sample, k); unknown r_p multiplies d_k f_p / f_p.
  auto design_row = [&](const std::vector<Rat>& l, std::size_t k) {
    QVec row;
    for (const ProjForm& d : chart) row.push_back(d[k] / eval_h(d, l));
    return row;
  };
  std::vector<QVec> rows;
  for (std::size_t si = 0; si < fit_count; ++si)
    for (std::size_t k = 1; k <= n; ++k) rows.push_back(design_row(samples[si].l, k));
  const QMat design = QMat::from_rows(rows);

  std::vector<QVec> rhs;  // index (w, i, j)
  for (std::size_t w = 0; w < ws.size(); ++w)
    for (std::size_t i = 0; i < nb; ++i)
      for (std::size_t j = 0; j < nb; ++j) {
        QVec b;
        for (std::size_t si = 0; si < fit_count; ++si)
          for (std::size_t k = 0; k < n; ++k) b.push_back(samples[si].values[w][k][j][i]);
        rhs.push_back(std::move(b));
      }
  LinearSolution sol;
  try {
    sol = solve_linear(design, rhs);
  } catch (const InconsistentSystem&) {
    throw ConsistencyError("connection not logarithmic along declared discriminant");
  }
  if (!sol.kernel.empty()) throw ConsistencyError("samples do not separate the discriminant components");

  for (std::size_t si = fit_count; si < want; ++si)
    for (std::size_t k = 1; k <= n; ++k) {
      const QVec row = design_row(samples[si].l, k);
      for (std::size_t w = 0; w < ws.size(); ++w)
        for (std::size_t i = 0; i < nb; ++i)
          for (std::size_t j = 0; j < nb; ++j) {
            const QVec& r = sol.particular[(w * nb + i) * nb + j];
            Rat v;
            for (std::size_t p = 0; p < chart.size(); ++p) v += row[p] * r[p];
            if (v != samples[si].values[w][k - 1][j][i])
              throw ConsistencyError("connection not logarithmic along declared discriminant");
          }
    }

  Matrix<WeightExpr> h0res(nb, nb);
  for (std::size_t p = 0; p < chart.size(); ++p) {
    Matrix<WeightExpr> res(nb, nb);
    for (std::size_t i = 0; i < nb; ++i)
      for (std::size_t j = 0; j < nb; ++j) {
        WeightExpr e;
        if (f.weights()) {
          e = sol.particular[i * nb + j][p];
        } else {
          std::vector<std::pair<Assignment, Rat>> pts;
          for (std::size_t w = 0; w < ws.size(); ++w) pts.emplace_back(ws[w], sol.particular[(w * nb + i) * nb + j][p]);
          e = affine_fit(pts);
        }
        e *= Rat(opts.sign);
        res(i, j) = e;
        h0res(i, j) -= e;
      }
    out.components.push_back({chart[p], std::move(res)});
  }
  out.components.push_back({h0, std::move(h0res)});
  return out;
}

// ---------------------------------------------------------------- flatness

namespace {

constexpr int kLVar = 1000000;

std::string describe_point(const std::vector<Rat>& l, const Assignment& w) {
  std::ostringstream os;
  os << "l = (";
  for (std::size_t k = 0; k < l.size(); ++k) os << (k ? ", " : "") << l[k];
  os << "), weights {";
  bool first = true;
  for (const auto& [id, v] : w) {
    os << (first ? "" : ", ") << symbol_name(id) << " = " << v;
    first = false;
  }
  os << "}";
  return os.str();
}

std::vector<int> weight_symbols_of(const GMConnection& g) {
  std::set<int> s;
  for (const GMComponent& c : g.components)
    for (std::size_t i = 0; i < c.residue.rows(); ++i)
      for (std::size_t j = 0; j < c.residue.cols(); ++j)
        for (const auto& kv : c.residue(i, j).coeffs()) s.insert(kv.first);
  return {s.begin(), s.end()};
}

}  // namespace

FlatnessReport flatness_check(const GMConnection& g, std::size_t trials, std::uint64_t seed, bool symbolic) {
  FlatnessReport rep;
  const std::size_t nc = g.components.size();
  if (nc == 0) return rep;
  const std::size_t n = g.components.front().form.dim();
  const std::size_t nb = g.basis.size();
  const std::vector<int> syms = weight_symbols_of(g);
  Sampler rng(seed);

  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<Rat> l;
    bool bad = true;
    while (bad) {
      l.clear();
      for (std::size_t k = 0; k < n; ++k) l.push_back(rng.nonzero_rational(11, 7));
      bad = false;
      for (const GMComponent& c : g.components) bad = bad || eval_h(c.form, l).is_zero();
    }
    Assignment w;
    for (int id : syms) w[id] = rng.rational(20, 13);
    const std::vector<QMat> a = g.evaluate(w);
    ++rep.trials;
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = i + 1; j <= n; ++j) {
        QMat curv(nb, nb);
        for (std::size_t p = 0; p < nc; ++p)
          for (std::size_t q = p + 1; q < nc; ++q) {
            const ProjForm& fp = g.components[p].form;
            const ProjForm& fq = g.components[q].form;
            const Rat coeff = (fp[i] * fq[j] - fp[j] * fq[i]) / (eval_h(fp, l) * eval_h(fq, l));
            if (coeff.is_zero()) continue;
            QMat br = a[p] * a[q] - a[q] * a[p];
            curv += br.map([&](const Rat& v) { return v * coeff; });
          }
        if (!curv.is_zero() && rep.flat) {
          rep.flat = false;
          rep.witness = describe_point(l, w) + ", dl" + std::to_string(i) + "^dl" + std::to_string(j);
        }
      }
  }

  if (symbolic && nb <= 8 && rep.flat) {
    rep.symbolic_checked = true;
    std::vector<Matrix<WeightPoly>> ap;
    for (const GMComponent& c : g.components) ap.push_back(c.residue.map([](const WeightExpr& e) { return e.to_poly(); }));
    std::vector<Poly> fl;
    for (const GMComponent& c : g.components) {
      Poly p = c.form[0];
      for (std::size_t k = 1; k <= n; ++k) p += Poly::variable(kLVar + static_cast<int>(k)) * c.form[k];
      fl.push_back(p);
    }
    for (std::size_t i = 1; i <= n && rep.flat; ++i)
      for (std::size_t j = i + 1; j <= n && rep.flat; ++j) {
        Matrix<WeightPoly> total(nb, nb);
        for (std::size_t p = 0; p < nc; ++p)
          for (std::size_t q = p + 1; q < nc; ++q) {
            const ProjForm& fp = g.components[p].form;
            const ProjForm& fq = g.components[q].form;
            const Rat coeff = fp[i] * fq[j] - fp[j] * fq[i];
            if (coeff.is_zero()) continue;
            Poly others = coeff;
            for (std::size_t r = 0; r < nc; ++r)
              if (r != p && r != q) others = others * fl[r];
            Matrix<WeightPoly> br = ap[p] * ap[q] - ap[q] * ap[p];
            total += br.map([&](const Poly& v) { return v * others; });
          }
        if (!total.is_zero()) {
          rep.flat = false;
          rep.witness = "symbolic curvature nonzero in dl" + std::to_string(i) + "^dl" + std::to_string(j);
        }
      }
  }
  return rep;
}

}  // namespace hypergm

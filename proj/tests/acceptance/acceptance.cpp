// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>

#include "hypergm/errors.hpp"
#include "hypergm/fixtures.hpp"
#include "hypergm/linalg.hpp"
#include "hypergm/monodromy.hpp"

using namespace hypergm;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
};

std::string join(const std::vector<std::string>& v, std::size_t limit = 6) {
  std::string out;
  for (std::size_t i = 0; i < v.size() && i < limit; ++i) out += (i ? "; " : "") + v[i];
  if (v.size() > limit) out += "; ... (" + std::to_string(v.size() - limit) + " more)";
  return out;
}

std::vector<std::string> connection_diff(const GMConnection& got, const GMConnection& want) {
  std::vector<std::string> out;
  if (got.basis != want.basis) out.push_back("basis differs");
  for (const GMComponent& w : want.components) {
    const GMComponent* g = got.find(w.form);
    if (!g) {
      out.push_back("no component " + w.form.to_string('h'));
      continue;
    }
    for (std::size_t i = 0; i < w.residue.rows(); ++i)
      for (std::size_t j = 0; j < w.residue.cols(); ++j)
        if (!(g->residue(i, j) == w.residue(i, j)))
          out.push_back(w.form.to_string('h') + " (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                        "): " + g->residue(i, j).to_string() + " vs " + w.residue(i, j).to_string());
  }
  if (got.components.size() != want.components.size()) out.push_back("component count differs");
  return out;
}

std::vector<IndexSet> supports(const std::vector<BrokenCircuit>& bs) {
  std::vector<IndexSet> out;
  for (const BrokenCircuit& b : bs) out.push_back(b.support);
  return out;
}

// ---------------------------------------------------------------- 1

Outcome combinatorics() {
  Outcome o;
  const Fixtures& fx = fixtures();
  const Matroid ceva(fx.ceva.arrangement);
  o.require(ceva.affine_circuits() == fx.ceva_affine_circuits, "Ceva circuits");
  o.require(ceva.nbc_bases() == fx.ceva.basis, "Ceva nbc bases");
  o.require(supports(ceva.affine_broken_circuits()) == fx.ceva_broken_circuits, "Ceva broken circuits");
  const OSAlgebra os(ceva);
  std::vector<ExtElem> rel;
  for (const Relation& r : os.relation_basis_top()) rel.push_back(r.element);
  o.require(rel == fx.ceva_relations, "Ceva J_2 basis");
  o.require(Matroid(fx.example1.arrangement).nbc_bases() == fx.example1.basis, "Example I nbc bases");
  return o;
}

// ---------------------------------------------------------------- 2

Outcome discriminants() {
  Outcome o;
  for (const WorkedExample* f : {&fixtures().example1, &fixtures().ceva}) {
    const auto got = discriminant(f->arrangement);
    const std::set<ProjForm> a(got.begin(), got.end()), b(f->discriminant.begin(), f->discriminant.end());
    o.require(a == b, f->name + " discriminant");
  }
  o.require(fixtures().example1.discriminant.size() == 6, "Example I has 6 components");
  o.require(fixtures().ceva.discriminant.size() == 7, "Ceva has 7 components");
  return o;
}

// ---------------------------------------------------------------- 3, 4

Outcome gauss_manin(const WorkedExample& f) {
  Outcome o;
  const GMConnection g = gm_matrix(MovingFamily(f.arrangement));
  for (const std::string& d : connection_diff(g, f.connection)) o.require(false, d);
  for (const GMComponent& s : f.stated_residues) {
    const GMComponent* c = g.find(s.form);
    o.require(c && c->residue == s.residue, "stated residue along " + s.form.to_string('h'));
  }
  return o;
}

// ---------------------------------------------------------------- 5

// P(l) = integral over -1/l < x < 0 of |x|^a1 |1 + l x|^ah dx / x, with
// x = -t / l. In closed form P = -l^-a1 B(a1, ah + 1), never used here.
double line_period(double a1, double ah, double l) {
  boost::math::quadrature::tanh_sinh<double> ts;
  auto f = [&](double t, double tc) {
    const double lo = std::max(tc < 0 ? -tc : t, 1e-150);
    const double hi = std::max(tc > 0 ? tc : 1 - t, 1e-150);
    const double x = -lo / l;
    return std::pow(lo / l, a1) * std::pow(hi, ah) / x / l;
  };
  return ts.integrate(f, 0.0, 1.0);
}

Outcome line_oracle() {
  Outcome o;
  std::vector<std::vector<Rat>> raw{{1, 0}, {0, 1}};
  const GMConnection g = gm_matrix(MovingFamily(validate(raw, 0)));
  const WeightExpr a1 = WeightExpr::symbol(1, 1);
  o.require(g.components.size() == 2, "two components");
  if (!o.pass) return o;
  o.require(g.components[0].form.to_string('h') == "h1" && g.components[0].residue(0, 0) == -1 * a1,
            "residue along h1 is -a1");
  o.require(g.components[1].form.to_string('h') == "h0" && g.components[1].residue(0, 0) == a1,
            "residue along h0 is a1");

  const Assignment w{{1, Rat(1, 3)}, {kMovingSymbol, Rat(-1, 5)}};
  for (double l : {0.7, 1.3, 2.9}) {
    const double h = 1e-4 * l;
    const double p = line_period(1.0 / 3, -0.2, l);
    const double dp = (line_period(1.0 / 3, -0.2, l + h) - line_period(1.0 / 3, -0.2, l - h)) / (2 * h);
    double model = 0;
    for (const GMComponent& c : g.components) {
      const ProjForm& f = c.form;
      model += c.residue(0, 0).evaluate(w).to_double() * f[1].to_double() / (f[0].to_double() + f[1].to_double() * l);
    }
    const double rel = std::abs(dp / p - model) / std::abs(model);
    std::ostringstream s;
    s << "l = " << l << ": dlogP/dl = " << dp / p << ", connection " << model << ", rel " << rel;
    o.require(rel < 1e-6, s.str());
  }
  return o;
}

// ---------------------------------------------------------------- 6

bool sum_zero(const GMConnection& g) {
  for (std::size_t i = 0; i < g.basis.size(); ++i)
    for (std::size_t j = 0; j < g.basis.size(); ++j) {
      WeightExpr s;
      for (const GMComponent& c : g.components) s += c.residue(i, j);
      if (!s.is_zero()) return false;
    }
  return true;
}

long binom(long n, long k) {
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Outcome invariants() {
  Outcome o;
  Sampler rng(kDefaultSeed);
  for (const WorkedExample* f : {&fixtures().example1, &fixtures().ceva}) {
    const std::string tag = f->name + ": ";
    const GMConnection g = gm_matrix(MovingFamily(f->arrangement));
    o.require(sum_zero(g), tag + "residues sum to zero");
    const bool small = f->name == "example1";
    const FlatnessReport fr = flatness_check(g, 5, kDefaultSeed, small);
    o.require(fr.flat && (!small || fr.symbolic_checked), tag + "flatness " + fr.witness);

    const Matroid m(f->arrangement);
    const OSAlgebra os(m);
    const std::size_t n = m.n();
    const auto tops = subsets(m.ground(), n);
    for (int t = 0; t < 20; ++t) {
      ExtElem e, top;
      for (const IndexSet& s : subsets(m.ground(), n + 1 <= m.ground().size() ? n + 1 : n))
        if (rng.integer(0, 1)) e.add(s, rng.rational(5, 3));
      o.require(boundary(boundary(e)).is_zero(), tag + "boundary squares to zero");
      for (const IndexSet& s : tops)
        if (rng.integer(0, 1)) top.add(s, rng.rational(5, 3));
      const ExtElem nf = os.normal_form(top);
      o.require(os.normal_form(nf) == nf, tag + "normal form idempotent");
    }
    std::vector<ExtElem> rel;
    for (const Relation& r : os.relation_basis_top()) rel.push_back(r.element);
    QMat rm(rel.size(), tops.size());
    for (std::size_t r = 0; r < rel.size(); ++r)
      for (std::size_t c = 0; c < tops.size(); ++c) rm(r, c) = rel[r].coeff(tops[c]);
    const std::size_t rk = rel.empty() ? 0 : rank(rm);
    o.require(rel.size() == rk && static_cast<long>(rk) == binom(static_cast<long>(m.ground().size()),
                                                                 static_cast<long>(n)) -
                                                              static_cast<long>(m.nbc_bases().size()),
              tag + "relation count identity");

    // Fibers over a generic parameter point, weights resampled until generic.
    const MovingFamily fam(f->arrangement);
    const AomotoComplex cx(extend(f->arrangement, fam.moving_form({Rat(3, 7), Rat(-5, 11)})), true);
    std::vector<std::size_t> want(n + 1, 0);
    want[n] = m.nbc_bases().size();
    for (int t = 0; t < 10; ++t) {
      Assignment w;
      do {
        for (int id : cx.symbols()) w[id] = rng.nonzero_rational(9, 17);
      } while (!cx.validate(w).ok);
      o.require(cx.cohomology_dims(w) == want, tag + "twisted cohomology dims");
    }
  }
  return o;
}

// ---------------------------------------------------------------- 7

Outcome monodromy_check() {
  Outcome o;
  const Assignment w{{1, Rat(1, 3)}, {2, Rat(1, 7)}, {3, Rat(1, 5)}, {kMovingSymbol, Rat(-1, 2)}};
  const WorkedExample& f = fixtures().example1;
  o.require(f.stated_residues.size() == 6, "six residue matrices");
  for (std::size_t k = 0; k < f.stated_residues.size(); ++k) {
    const GMComponent& c = f.stated_residues[k];
    const std::string tag = c.form.to_string('h') + ": ";
    const auto t = projector_structure(c.residue);
    o.require(t && *t == f.stated_traces[k], tag + "projector structure with the listed trace");
    if (!t) continue;
    const MonodromyResult cf = monodromy(c.residue, w, MonodromyMode::closed_form);
    const MonodromyResult nu = monodromy(c.residue, w, MonodromyMode::numeric);
    o.require((cf.matrix - nu.matrix).cwiseAbs().maxCoeff() < 1e-10, tag + "closed form vs exponential");
    const cplx det = std::exp(cplx(0, -2 * std::numbers::pi * t->evaluate(w).to_double()));
    o.require(std::abs(cf.matrix.determinant() - det) < 1e-9, tag + "determinant");
  }
  return o;
}

// ---------------------------------------------------------------- 8

Poly linear_poly(const AffineForm& f) {
  Poly p = f.constant;
  for (std::size_t j = 0; j < f.linear.size(); ++j) p += Poly::variable(static_cast<int>(j + 1)) * f.linear[j];
  return p;
}

Outcome reduction_oracle() {
  Outcome o;
  const MovingFamily fam(fixtures().example1.arrangement);
  const Arrangement ext = extend(fam.base(), fam.moving_form({Rat(2), Rat(5)}));
  const Matroid m(ext);
  const FormReducer red(m);
  const auto forms = chart_forms(ext);
  Sampler rng(kDefaultSeed);
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    // A random form: numerator of degree |poles| - 2 built from dlog wedges,
    // then handed over only as numerator and poles.
    IndexSet poles;
    for (int i : m.ground())
      if (rng.integer(0, 2)) poles.push_back(i);
    if (poles.size() < 2) poles = {1, 4};
    RatForm f{Poly(), poles};
    for (const IndexSet& s : subsets(poles, 2)) {
      if (rng.integer(0, 1) == 0) continue;
      const auto& a = forms[static_cast<std::size_t>(s[0])].linear;
      const auto& b = forms[static_cast<std::size_t>(s[1])].linear;
      Poly term = rng.nonzero_rational(7, 5) * (a[0] * b[1] - a[1] * b[0]);
      for (int i : poles)
        if (i != s[0] && i != s[1]) term = term * linear_poly(forms[static_cast<std::size_t>(i)]);
      f.numerator += term;
    }
    const LogComb g = red.reduce(f);
    for (int p = 0; p < 3;) {
      std::vector<Rat> x{rng.rational(23, 19), rng.rational(23, 19)};
      bool pole = false;
      for (int i : poles) pole = pole || forms[static_cast<std::size_t>(i)].evaluate(x).is_zero();
      if (pole) continue;
      ++p;
      ++checked;
      if (!(evaluate_logcomb(g, forms, x) == f.evaluate(forms, x)))
        o.require(false, "form " + std::to_string(t) + " differs at a sample point");
    }
  }
  o.require(checked == 600, "600 evaluations");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{
      {"1 combinatorics goldens", combinatorics},
      {"2 discriminants", discriminants},
      {"3 Gauss-Manin Example I", [] { return gauss_manin(fixtures().example1); }},
      {"4 Gauss-Manin Ceva", [] { return gauss_manin(fixtures().ceva); }},
      {"5 independent n = 1 period oracle", line_oracle},
      {"6 structural invariants", invariants},
      {"7 monodromy closed forms", monodromy_check},
      {"8 reduction oracle", reduction_oracle},
  };
  int failed = 0;
  for (const Criterion& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream line;
    line << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.name << " (" << secs << " s)";
    if (!o.pass) line << ": " << join(o.notes);
    std::cout << line.str() << "\n";
    failed += !o.pass;
  }
  std::cout << (all.size() - failed) << "/" << all.size() << " criteria passed\n";
  return failed ? 1 : 0;
}

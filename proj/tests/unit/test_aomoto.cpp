#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "hypergm/aomoto.hpp"
#include "hypergm/errors.hpp"
#include "hypergm/linalg.hpp"
#include "hypergm/sampling.hpp"

using namespace hypergm;
using namespace testutil;

namespace {

Weights ceva_weights(std::initializer_list<Rat> a) {
  Weights w;
  int i = 1;
  for (const Rat& v : a) w.a[i++] = v;
  return w;
}

bool all_zero(const QMat& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!m(r, c).is_zero()) return false;
  return true;
}

Poly linear_poly(const AffineForm& f) {
  Poly p = f.constant;
  for (std::size_t j = 0; j < f.linear.size(); ++j) p += Poly::variable(static_cast<int>(j + 1)) * f.linear[j];
  return p;
}

// Rational top form of a dlog combination over the union of its poles.
RatForm as_rational(const LogComb& g, const std::vector<AffineForm>& forms) {
  IndexSet poles;
  for (const auto& [s, c] : g.terms()) poles.insert(poles.end(), s.begin(), s.end());
  std::sort(poles.begin(), poles.end());
  poles.erase(std::unique(poles.begin(), poles.end()), poles.end());
  RatForm f{Poly(), poles};
  for (const auto& [s, c] : g.terms()) {
    const std::size_t n = s.size();
    QMat m(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t k = 0; k < n; ++k) m(r, k) = forms[static_cast<std::size_t>(s[r])].linear[k];
    Poly term = c * determinant(m);
    for (int i : poles)
      if (!std::binary_search(s.begin(), s.end(), i)) term = term * linear_poly(forms[static_cast<std::size_t>(i)]);
    f.numerator += term;
  }
  return f;
}

ExtElem omega(const AomotoComplex& cx, const Assignment& w) {
  ExtElem out;
  for (int i : cx.matroid().ground()) out.add({i}, w.at(cx.symbol_of(i)));
  return out;
}

}  // namespace

TEST_CASE("weight validation on Ceva") {
  const Arrangement a = ceva();
  const Rat s(1, 7);
  CHECK(validate_weights(a, ceva_weights({s, s, s, s, s})).ok);

  const WeightReport integral = validate_weights(a, ceva_weights({2, s, s, s, s}));
  CHECK_FALSE(integral.ok);
  CHECK(integral.violations.front() == "a1 = 2 is an integer");

  const Rat t(1, 3);
  const WeightReport flat = validate_weights(a, ceva_weights({t, t, s, s, t}));
  CHECK_FALSE(flat.ok);
  REQUIRE(flat.violations.size() == 1);
  CHECK(flat.violations[0] == "weight sum over flat {a1+a2+a5} = 1 is an integer");

  Weights with_h = ceva_weights({s, s, s, s, s});
  with_h.a_h = Rat(-1);
  CHECK_FALSE(validate_weights(a, with_h).ok);
  with_h.a_h = Rat(2, 7);  // a0 = -1 now
  const WeightReport a0 = validate_weights(a, with_h);
  CHECK_FALSE(a0.ok);
  CHECK(a0.violations.front() == "a0 = -1 is an integer");

  Weights missing = ceva_weights({s, s, s, s});
  CHECK_THROWS_AS(validate_weights(a, missing), ValidationError);
  missing.a[0] = s;
  CHECK_THROWS_AS(validate_weights(a, missing), ValidationError);
}

TEST_CASE("wedge with omega") {
  const AomotoComplex cx(extend(example1(), {1, 2, 5}), true);
  CHECK(cx.moving_index() == 4);
  CHECK(cx.symbols() == std::vector<int>{kMovingSymbol, 1, 2, 3});
  const auto w1 = cx.wedge_omega_matrix(1);
  REQUIRE(w1.cols() == 1);
  for (std::size_t r = 0; r < w1.rows(); ++r)
    CHECK(w1(r, 0) == WeightExpr::symbol(cx.symbol_of(cx.nbc(1)[r].front()), 1));
  CHECK_THROWS(cx.wedge_omega_matrix(0));

  Sampler rng(4);
  for (const Arrangement& a : {extend(example1(), {1, 2, 5}), extend(ceva(), {1, 3, -7}), ceva()}) {
    const bool moving = a.size() != 6;
    const AomotoComplex c(a, moving);
    Assignment w;
    for (int id : c.symbols()) w[id] = rng.nonzero_rational(9, 11);
    for (std::size_t p = 2; p <= c.n(); ++p)
      CHECK(all_zero(c.wedge_omega_matrix(p, w) * c.wedge_omega_matrix(p - 1, w)));
  }
}

TEST_CASE("Aomoto cohomology concentrates in top degree") {
  const Assignment ex{{1, Rat(1, 3)}, {2, Rat(1, 7)}, {3, Rat(1, 5)}, {kMovingSymbol, Rat(-1, 2)}};
  CHECK(AomotoComplex(extend(example1(), {1, 2, 5}), true).cohomology_dims(ex) == std::vector<std::size_t>{0, 0, 3});

  Assignment cv{{kMovingSymbol, Rat(2, 9)}};
  for (int i = 1; i <= 5; ++i) cv[i] = Rat(1, 3 + 2 * i);
  CHECK(AomotoComplex(extend(ceva(), {1, 3, -7}), true).cohomology_dims(cv) == std::vector<std::size_t>{0, 0, 6});

  CHECK(AomotoComplex(make({{1, 0}, {0, 1}}), false).cohomology_dims({{1, Rat(1, 4)}}) ==
        std::vector<std::size_t>{0, 0});
  CHECK(AomotoComplex(extend(make({{1, 0}, {0, 1}}), {1, 3}), true)
            .cohomology_dims({{1, Rat(1, 4)}, {kMovingSymbol, Rat(1, 3)}}) == std::vector<std::size_t>{0, 1});

  Assignment bad = ex;
  bad[1] = Rat(1);
  CHECK_THROWS_AS(AomotoComplex(extend(example1(), {1, 2, 5}), true).cohomology_dims(bad), ResonanceError);
}

TEST_CASE("rational forms reduce to dlog wedges") {
  const Arrangement a = example1();
  const LogComb g = reduce_rational_form(RatForm{Poly(1), {1, 2, 3}}, a);
  CHECK(g == ExtElem::monomial({1, 2}) - ExtElem::monomial({1, 3}) + ExtElem::monomial({2, 3}));
  CHECK(reduce_rational_form(RatForm{Poly(3), {1, 2}}, a) == ExtElem::monomial({1, 2}, 3));
  CHECK_THROWS_AS(reduce_rational_form(RatForm{Poly(1), {1, 1}}, a), NotLogarithmic);
  const Poly x1 = Poly::variable(1);
  CHECK_THROWS_AS(reduce_rational_form(RatForm{x1 * x1, {1, 2, 3}}, a), NotLogarithmic);
  CHECK_THROWS_AS(reduce_rational_form(RatForm{Poly(1), {1, 7}}, a), ValidationError);
}

TEST_CASE("reduction reproduces random dlog combinations pointwise") {
  Sampler rng(8);
  for (const Arrangement& a : {ceva(), extend(ceva(), {1, 3, -7}), extend(example1(), {1, 2, 5}),
                               make({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 1, 0, 0},
                                     {0, 1, 1, 0}, {1, 1, 1, 1}})}) {
    const Matroid m(a);
    const auto forms = chart_forms(a);
    const FormReducer red(m);
    const auto bases = subsets(m.ground(), a.n());
    for (int t = 0; t < 15; ++t) {
      LogComb g;
      for (int k = 0; k < 3; ++k) {
        const IndexSet& s = bases[static_cast<std::size_t>(rng.integer(0, static_cast<long>(bases.size()) - 1))];
        if (!m.dependent_with_infinity(s)) g.add(s, rng.nonzero_rational(5, 3));
      }
      const RatForm f = as_rational(g, forms);
      const LogComb r = red.reduce(f);
      for (const auto& [s, c] : r.terms()) CHECK_FALSE(m.dependent_with_infinity(s));
      for (int p = 0; p < 3; ++p) {
        std::vector<Rat> x(a.n());
        for (Rat& v : x) v = rng.rational(17, 13);
        bool on_pole = false;
        for (int i : f.denominator) on_pole = on_pole || forms[static_cast<std::size_t>(i)].evaluate(x).is_zero();
        if (on_pole) continue;
        CHECK(evaluate_logcomb(r, forms, x) == f.evaluate(forms, x));
        CHECK(evaluate_logcomb(g, forms, x) == f.evaluate(forms, x));
      }
    }
  }
}

TEST_CASE("class reduction onto the fixed basis") {
  const AomotoComplex cx(extend(example1(), {1, 2, 5}), true);
  CHECK(cx.fixed_basis() == std::vector<IndexSet>{{1, 2}, {1, 3}, {2, 3}});
  const Assignment w{{1, Rat(1, 3)}, {2, Rat(1, 7)}, {3, Rat(1, 5)}, {kMovingSymbol, Rat(-1, 2)}};
  for (std::size_t k = 0; k < 3; ++k) {
    QVec unit(3);
    unit[k] = 1;
    CHECK(cx.reduce_to_nbc_class(ExtElem::monomial(cx.fixed_basis()[k]), w) == unit);
  }
  // omega ^ e1 = -(a2 e12 + a3 e13 + ah e14) is exact.
  const Rat ah = w.at(kMovingSymbol);
  CHECK(cx.reduce_to_nbc_class(ExtElem::monomial({1, 4}), w) == QVec{-w.at(2) / ah, -w.at(3) / ah, 0});
  for (int i : cx.matroid().ground())
    CHECK(cx.reduce_to_nbc_class(wedge(omega(cx, w), ExtElem::monomial({i})), w) == QVec{0, 0, 0});

  const AomotoComplex line(extend(make({{1, 0}, {0, 1}}), {1, 3}), true);
  const Assignment w1{{1, Rat(1, 4)}, {kMovingSymbol, Rat(2, 3)}};
  CHECK(line.reduce_to_nbc_class(ExtElem::monomial({2}), w1) == QVec{-Rat(1, 4) / Rat(2, 3)});
  CHECK_THROWS_AS(line.reduce_to_nbc_class(ExtElem::monomial({2}), {{1, Rat(1, 4)}, {kMovingSymbol, 0}}),
                  ResonanceError);
  CHECK_THROWS_AS(AomotoComplex(ceva(), false).reduce_to_nbc_class(ExtElem::monomial({1, 2}), {}), ValidationError);
}

#include "hypergm/aomoto.hpp"

#include <algorithm>
#include <set>

#include "hypergm/errors.hpp"
#include "hypergm/linalg.hpp"

namespace hypergm {

// ---------------------------------------------------------------- weights

Rat Weights::a0() const {
  Rat s;
  for (const auto& kv : a) s -= kv.second;
  if (a_h) s -= *a_h;
  return s;
}

Assignment Weights::assignment() const {
  Assignment out(a.begin(), a.end());
  if (a_h) out[kMovingSymbol] = *a_h;
  return out;
}

Weights Weights::from_assignment(const Assignment& at) {
  Weights w;
  for (const auto& [id, v] : at) {
    if (id == kMovingSymbol)
      w.a_h = v;
    else
      w.a[id] = v;
  }
  return w;
}

namespace {

WeightReport check_index_weights(const Arrangement& a, const std::map<int, Rat>& by_index,
                                 const std::map<int, std::string>& label, const std::optional<Rat>& a_h) {
  WeightReport r;
  const int inf = static_cast<int>(a.infinity());
  std::map<int, Rat> w = by_index;
  Rat a0 = a_h ? -*a_h : Rat(0);
  for (const auto& kv : by_index) a0 -= kv.second;
  w[inf] = a0;
  auto name = [&](int i) {
    auto it = label.find(i);
    return it == label.end() ? symbol_name(i) : it->second;
  };
  auto flag = [&](const std::string& what, const Rat& v) {
    if (!v.is_integer()) return;
    r.ok = false;
    r.violations.push_back(what + " = " + v.to_string() + " is an integer");
  };
  for (const auto& [i, v] : w) flag(name(i), v);
  if (a_h) flag("ah", *a_h);
  for (const Flat& f : bad_loci(a)) {
    Rat s;
    std::string terms;
    for (int i : f.support) {
      auto it = w.find(i);
      if (it == w.end()) throw ValidationError("no weight for hyperplane " + std::to_string(i));
      s += it->second;
      terms += (terms.empty() ? "" : "+") + name(i);
    }
    flag("weight sum over flat {" + terms + "}", s);
  }
  return r;
}

}  // namespace

WeightReport validate_weights(const Arrangement& a, const Weights& w) {
  const int inf = static_cast<int>(a.infinity());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int ii = static_cast<int>(i);
    if (ii != inf && !w.a.count(ii)) throw ValidationError("missing weight " + symbol_name(ii));
  }
  for (const auto& kv : w.a)
    if (kv.first == inf || kv.first < 0 || kv.first >= static_cast<int>(a.size()))
      throw ValidationError("weight " + symbol_name(kv.first) + " names no finite hyperplane");
  return check_index_weights(a, w.a, {{inf, "a0"}}, w.a_h);
}

// ---------------------------------------------------------------- forms

Arrangement extend(const Arrangement& fixed, const std::vector<Rat>& moving) {
  std::vector<std::vector<Rat>> raw;
  for (const ProjForm& f : fixed.forms()) raw.push_back(f.coeffs());
  raw.push_back(moving);
  return validate(raw, fixed.infinity());
}

std::vector<AffineForm> chart_forms(const Arrangement& a) {
  std::vector<AffineForm> out;
  for (const ProjForm& f : a.forms()) out.push_back(affine_in_chart(a, f.coeffs()));
  return out;
}

namespace {

Poly as_poly(const AffineForm& f) {
  Poly p = f.constant;
  for (std::size_t j = 0; j < f.linear.size(); ++j) p += Poly::variable(static_cast<int>(j + 1)) * f.linear[j];
  return p;
}

Rat wedge_det(const std::vector<AffineForm>& forms, const IndexSet& s) {
  const std::size_t n = s.size();
  QMat m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = forms[static_cast<std::size_t>(s[r])].linear[c];
  return determinant(m);
}

Assignment coords(const std::vector<Rat>& x) {
  Assignment at;
  for (std::size_t j = 0; j < x.size(); ++j) at[static_cast<int>(j + 1)] = x[j];
  return at;
}

}  // namespace

Rat RatForm::evaluate(const std::vector<AffineForm>& forms, const std::vector<Rat>& x) const {
  Rat den = 1;
  for (int i : denominator) den *= forms[static_cast<std::size_t>(i)].evaluate(x);
  return numerator.evaluate(coords(x)) / den;
}

Rat evaluate_logcomb(const LogComb& g, const std::vector<AffineForm>& forms, const std::vector<Rat>& x) {
  Rat v;
  for (const auto& [idx, c] : g.terms()) {
    Rat den = 1;
    for (int i : idx) den *= forms[static_cast<std::size_t>(i)].evaluate(x);
    v += c * wedge_det(forms, idx) / den;
  }
  return v;
}

FormReducer::FormReducer(const Matroid& m) : m_(&m), forms_(chart_forms(m.arrangement())) {
  const int inf = m.infinity();
  for (const Circuit& c : m.circuits()) {
    if (!c.contains_infinity) continue;
    ChartCircuit cc;
    for (std::size_t k = 0; k < c.support.size(); ++k) {
      if (c.support[k] == inf) {
        cc.c = -c.dependency[k];
      } else {
        cc.support.push_back(c.support[k]);
        cc.mu.push_back(c.dependency[k]);
      }
    }
    chart_circuits_.push_back(std::move(cc));
  }
  std::sort(chart_circuits_.begin(), chart_circuits_.end(),
            [](const ChartCircuit& x, const ChartCircuit& y) { return x.support < y.support; });
}

namespace {

struct BySizeLex {
  bool operator()(const IndexSet& x, const IndexSet& y) const {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  }
};

constexpr int kFrameVar = 1000;

IndexSet without(const IndexSet& s, int i) {
  IndexSet out;
  for (int v : s)
    if (v != i) out.push_back(v);
  return out;
}

}  // namespace

LogComb FormReducer::reduce(const RatForm& f) const {
  const std::size_t n = m_->n();
  const int inf = m_->infinity();
  const IndexSet& den = f.denominator;
  if (!std::is_sorted(den.begin(), den.end())) throw ValidationError("denominator indices must be sorted");
  if (std::adjacent_find(den.begin(), den.end()) != den.end())
    throw NotLogarithmic("repeated pole: the form is not logarithmic");
  for (int i : den)
    if (i < 0 || i >= static_cast<int>(forms_.size()) || i == inf)
      throw ValidationError("pole " + std::to_string(i) + " is not a hyperplane of the chart");

  std::map<IndexSet, Poly, BySizeLex> work;
  work[den] = f.numerator;
  LogComb out;
  std::vector<std::pair<IndexSet, Poly>> leftovers;

  auto push = [&](const IndexSet& s, const Poly& p) {
    if (p.is_zero()) return;
    auto [it, inserted] = work.emplace(s, p);
    if (!inserted) it->second += p;
  };

  while (!work.empty()) {
    auto last = std::prev(work.end());
    const IndexSet s = last->first;
    const Poly p = last->second;
    work.erase(last);
    if (p.is_zero()) continue;

    // A chart circuit sum mu_i f_i = c != 0 inside s lowers the pole count.
    const ChartCircuit* cc = nullptr;
    for (const ChartCircuit& c : chart_circuits_)
      if (contains(s, c.support)) {
        cc = &c;
        break;
      }
    if (cc) {
      for (std::size_t k = 0; k < cc->support.size(); ++k)
        push(without(s, cc->support[k]), p * (cc->mu[k] / cc->c));
      continue;
    }

    // Frame y = (f_t for t in a maximal independent part of s, remaining x's).
    std::vector<int> frame;
    std::vector<QVec> lin;
    auto try_add = [&](const QVec& v) {
      std::vector<QVec> trial = lin;
      trial.push_back(v);
      if (rank(QMat::from_rows(trial)) == trial.size()) {
        lin.push_back(v);
        return true;
      }
      return false;
    };
    std::vector<Rat> shift;
    for (int i : s)
      if (lin.size() < n && try_add(forms_[static_cast<std::size_t>(i)].linear)) {
        frame.push_back(i);
        shift.push_back(forms_[static_cast<std::size_t>(i)].constant);
      }
    const std::size_t t = frame.size();
    for (std::size_t j = 0; j < n && lin.size() < n; ++j) {
      QVec e(n);
      e[j] = 1;
      if (try_add(e)) shift.push_back(0);
    }
    const QMat mtx = QMat::from_rows(lin);

    std::vector<QVec> units;
    for (std::size_t k = 0; k < n; ++k) {
      QVec e(n);
      e[k] = 1;
      units.push_back(e);
    }
    const LinearSolution inv = solve_linear(mtx, units);  // particular[k] = column k of the inverse
    std::map<int, Poly> to_frame, to_x;
    for (std::size_t i = 0; i < n; ++i) {
      Poly xi;
      for (std::size_t k = 0; k < n; ++k) {
        const Rat& c = inv.particular[k][i];
        if (!c.is_zero()) xi += (Poly::variable(kFrameVar + static_cast<int>(k)) - shift[k]) * c;
      }
      to_frame[static_cast<int>(i + 1)] = xi;
    }
    for (std::size_t k = 0; k < n; ++k) {
      Poly yk = shift[k];
      for (std::size_t j = 0; j < n; ++j)
        if (!mtx(k, j).is_zero()) yk += Poly::variable(static_cast<int>(j + 1)) * mtx(k, j);
      to_x[kFrameVar + static_cast<int>(k)] = yk;
    }

    const Poly py = p.substitute(to_frame);
    std::map<std::size_t, Poly> children;
    Poly rest;
    for (const auto& [mono, c] : py.terms()) {
      std::size_t hit = t;
      for (const auto& [v, e] : mono)
        if (v >= kFrameVar && static_cast<std::size_t>(v - kFrameVar) < t) {
          hit = static_cast<std::size_t>(v - kFrameVar);
          break;
        }
      if (hit == t) {
        rest.add_term(mono, c);
        continue;
      }
      Monomial q;
      for (const auto& [v, e] : mono) {
        if (v == kFrameVar + static_cast<int>(hit)) {
          if (e > 1) q.emplace_back(v, e - 1);
        } else {
          q.emplace_back(v, e);
        }
      }
      children[hit].add_term(q, c);
    }
    for (auto& [k, poly] : children) push(without(s, frame[k]), poly.substitute(to_x));

    if (rest.is_zero()) continue;
    if (t == s.size() && t == n) {
      out.add(s, rest.constant_term() / determinant(mtx));
    } else {
      leftovers.emplace_back(s, rest.substitute(to_x));
    }
  }

  if (!leftovers.empty()) {
    std::set<int> all;
    for (const auto& [s, p] : leftovers) all.insert(s.begin(), s.end());
    Poly total;
    for (const auto& [s, p] : leftovers) {
      Poly term = p;
      for (int u : all)
        if (!std::binary_search(s.begin(), s.end(), u)) term = term * as_poly(forms_[static_cast<std::size_t>(u)]);
      total += term;
    }
    if (!total.is_zero()) throw NotLogarithmic("form is not a combination of logarithmic wedges");
  }
  return out;
}

LogComb reduce_rational_form(const RatForm& f, const Arrangement& a) {
  const Matroid m(a);
  return FormReducer(m).reduce(f);
}

// ---------------------------------------------------------------- complex

AomotoComplex::AomotoComplex(Arrangement a, bool has_moving) : matroid_(std::move(a)), os_(matroid_) {
  if (has_moving) moving_ = static_cast<int>(matroid_.arrangement().size()) - 1;
  if (has_moving && moving_ == matroid_.infinity()) throw ValidationError("moving hyperplane cannot be at infinity");
  const std::size_t n = matroid_.n();
  for (std::size_t p = 0; p <= n; ++p) nbc_.push_back(matroid_.nbc_sets(p));
  for (const IndexSet& j : nbc_[n])
    if (!std::binary_search(j.begin(), j.end(), moving_)) fixed_basis_.push_back(j);

  omega_.resize(n + 1);
  for (std::size_t p = 1; p <= n; ++p) {
    Matrix<WeightExpr> w(nbc_[p].size(), nbc_[p - 1].size());
    std::map<IndexSet, std::size_t> row;
    for (std::size_t r = 0; r < nbc_[p].size(); ++r) row[nbc_[p][r]] = r;
    for (std::size_t c = 0; c < nbc_[p - 1].size(); ++c)
      for (int i : matroid_.ground()) {
        auto [sign, idx] = wedge_index(i, nbc_[p - 1][c]);
        if (sign == 0) continue;
        const ExtElem nf = os_.normal_form(ExtElem::monomial(idx, Rat(sign)));
        for (const auto& [k, v] : nf.terms()) w(row.at(k), c) += WeightExpr::symbol(symbol_of(i), v);
      }
    omega_[p] = std::move(w);
  }
}

std::vector<int> AomotoComplex::symbols() const {
  std::vector<int> out;
  for (int i : matroid_.ground()) out.push_back(symbol_of(i));
  std::sort(out.begin(), out.end());
  return out;
}

Matrix<WeightExpr> AomotoComplex::wedge_omega_matrix(std::size_t p) const {
  if (p == 0 || p > n()) throw std::invalid_argument("wedge_omega_matrix degree out of range");
  return omega_[p];
}

QMat AomotoComplex::wedge_omega_matrix(std::size_t p, const Assignment& w) const {
  return wedge_omega_matrix(p).map([&](const WeightExpr& e) { return e.evaluate(w); });
}

WeightReport AomotoComplex::validate(const Assignment& w) const {
  std::map<int, Rat> by_index;
  std::map<int, std::string> label{{matroid_.infinity(), "a0"}};
  for (int i : matroid_.ground()) {
    auto it = w.find(symbol_of(i));
    if (it == w.end()) throw ValidationError("missing weight " + symbol_name(symbol_of(i)));
    by_index[i] = it->second;
    label[i] = symbol_name(symbol_of(i));
  }
  return check_index_weights(matroid_.arrangement(), by_index, label, std::nullopt);
}

std::vector<std::size_t> AomotoComplex::cohomology_dims(const Assignment& w) const {
  const WeightReport rep = validate(w);
  if (!rep.ok) throw ResonanceError("weights are not generic (" + rep.violations.front() + "); see validate_weights");
  const std::size_t nn = n();
  std::vector<std::size_t> rk(nn + 2, 0);  // rk[p] = rank of A^{p-1} -> A^p
  for (std::size_t p = 1; p <= nn; ++p) rk[p] = rank(wedge_omega_matrix(p, w));
  std::vector<std::size_t> dims;
  for (std::size_t p = 0; p <= nn; ++p) dims.push_back(nbc_[p].size() - rk[p] - rk[p + 1]);
  return dims;
}

std::vector<QVec> AomotoComplex::reduce_to_nbc_class(const std::vector<LogComb>& g, const Assignment& w) const {
  if (!has_moving()) throw ValidationError("class reduction needs a moving hyperplane");
  const std::size_t nn = n();
  const std::vector<IndexSet>& rows = nbc_[nn];
  const QMat om = wedge_omega_matrix(nn, w);
  const std::size_t nf = fixed_basis_.size();
  QMat sys(rows.size(), nf + om.cols());
  for (std::size_t c = 0; c < nf; ++c) {
    const auto pos = std::find(rows.begin(), rows.end(), fixed_basis_[c]) - rows.begin();
    sys(static_cast<std::size_t>(pos), c) = 1;
  }
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < om.cols(); ++c) sys(r, nf + c) = om(r, c);

  std::vector<QVec> rhs;
  for (const LogComb& e : g) rhs.push_back(os_.coordinates(e, rows));
  LinearSolution sol;
  try {
    sol = solve_linear(sys, rhs);
  } catch (const InconsistentSystem&) {
    throw ResonanceError("resonance or discriminant sample: class reduction is inconsistent");
  }
  for (const QVec& k : sol.kernel)
    for (std::size_t c = 0; c < nf; ++c)
      if (!k[c].is_zero()) throw ResonanceError("resonance or discriminant sample: class reduction is not unique");
  std::vector<QVec> out;
  for (const QVec& x : sol.particular) out.emplace_back(x.begin(), x.begin() + static_cast<long>(nf));
  return out;
}

QVec AomotoComplex::reduce_to_nbc_class(const LogComb& g, const Assignment& w) const {
  return reduce_to_nbc_class(std::vector<LogComb>{g}, w).front();
}

}  // namespace hypergm

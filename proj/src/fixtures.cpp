#include "hypergm/fixtures.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "hypergm/errors.hpp"

namespace hypergm {

namespace {

struct RawTerm {
  const char* coeff;
  const char* plus;
  const char* minus;
};
using RawEntry = std::vector<RawTerm>;

ProjForm h(const std::string& text) { return ProjForm::parse(text, 2); }

std::vector<DlogTerm> cook(const RawEntry& e) {
  std::vector<DlogTerm> out;
  for (const RawTerm& t : e) out.push_back({WeightExpr::parse(t.coeff), h(t.plus), h(t.minus)});
  return out;
}

// Columns as printed; entries[i][j] = columns[j][i].
std::vector<std::vector<std::vector<DlogTerm>>> from_columns(const std::vector<std::vector<RawEntry>>& cols) {
  const std::size_t nb = cols.size();
  std::vector<std::vector<std::vector<DlogTerm>>> out(nb, std::vector<std::vector<DlogTerm>>(nb));
  for (std::size_t j = 0; j < nb; ++j)
    for (std::size_t i = 0; i < nb; ++i) out[i][j] = cook(cols[j][i]);
  return out;
}

Matrix<WeightExpr> wmat(const std::vector<std::vector<const char*>>& rows) {
  Matrix<WeightExpr> m(rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = WeightExpr::parse(rows[i][j]);
  return m;
}

Arrangement projective(const std::vector<std::vector<int>>& rows) {
  std::vector<std::vector<Rat>> raw;
  for (const auto& r : rows) raw.emplace_back(r.begin(), r.end());
  return validate(raw, 0);
}

std::vector<ProjForm> forms(std::initializer_list<const char*> texts) {
  std::vector<ProjForm> out;
  for (const char* t : texts) out.push_back(h(t));
  return out;
}

WorkedExample make_example1() {
  WorkedExample f;
  f.name = "example1";
  f.arrangement = projective({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}});
  f.discriminant = forms({"h0", "h1", "h2", "h0 - h1", "h0 - h2", "h2 - h1"});
  f.basis = {{1, 2}, {1, 3}, {2, 3}};
  f.entries = from_columns({
      {
          {{"-a1", "h1", "h0"}, {"-a2", "h2", "h0"}},
          {{"-a3", "h2", "h0"}},
          {{"a3", "h1", "h0"}},
      },
      {
          {{"-a2", "h2", "h0 - h2"}},
          {{"-a1", "h1 - h2", "h0 - h2"}, {"-a3", "h2", "h0 - h2"}},
          {{"-a2", "h1 - h2", "h0 - h2"}},
      },
      {
          {{"a1", "h1", "h0 - h1"}},
          {{"-a1", "h1 - h2", "h0 - h1"}},
          {{"-a2", "h1 - h2", "h0 - h1"}, {"-a3", "h1", "h0 - h1"}},
      },
  });
  f.connection = collect_residues(f.basis, f.entries);
  f.stated_residues = {
      {h("h0"), wmat({{"a1 + a2", "0", "0"}, {"a3", "0", "0"}, {"-a3", "0", "0"}})},
      {h("h1"), wmat({{"-a1", "0", "a1"}, {"0", "0", "0"}, {"a3", "0", "-a3"}})},
      {h("h2"), wmat({{"-a2", "-a2", "0"}, {"-a3", "-a3", "0"}, {"0", "0", "0"}})},
      {h("h0 - h1"), wmat({{"0", "0", "-a1"}, {"0", "0", "a1"}, {"0", "0", "a2 + a3"}})},
      {h("h0 - h2"), wmat({{"0", "a2", "0"}, {"0", "a1 + a3", "0"}, {"0", "a2", "0"}})},
      {h("h2 - h1"), wmat({{"0", "0", "0"}, {"0", "-a1", "-a1"}, {"0", "-a2", "-a2"}})},
  };
  for (const char* t : {"a1 + a2", "-a1 - a3", "-a2 - a3", "a2 + a3", "a1 + a3", "-a1 - a2"})
    f.stated_traces.push_back(WeightExpr::parse(t));
  return f;
}

WorkedExample make_ceva() {
  WorkedExample f;
  f.name = "ceva";
  f.arrangement = projective({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, -1, 0}, {1, 0, -1}, {0, 1, -1}});
  f.discriminant = forms({"h0", "h1", "h2", "h0 + h1", "h1 + h2", "h0 + h2", "h0 + h1 + h2"});
  f.basis = {{1, 2}, {1, 4}, {1, 5}, {2, 3}, {3, 4}, {3, 5}};
  const char* P = "h0 + h2";
  const char* Q = "h1 + h2";
  const char* R = "h0 + h1";
  const char* T = "h0 + h1 + h2";
  f.entries = from_columns({
      {
          {{"-a1 - a5", "h1", "h0"}, {"-a2", "h2", "h0"}},
          {{"-a4", "h2", "h0"}},
          {{"a5", "h1", "h2"}},
          {{"a3", "h1", "h0"}},
          {},
          {},
      },
      {
          {{"-a2", "h2", P}},
          {{"-a1", "h1", P}, {"-a4", "h2", P}},
          {{"-a5", "h2", P}},
          {},
          {{"-a3 - a5", "h1", P}},
          {{"a5", "h1", P}},
      },
      {
          {{"a2", Q, "h2"}},
          {{"-a4", "h2", "h0"}},
          {{"-a1 - a2", Q, "h0"}, {"-a5", "h2", "h0"}},
          {},
          {{"a4", Q, "h0"}},
          {{"-a3 - a4", Q, "h0"}},
      },
      {
          {{"a1 + a5", "h1", R}},
          {},
          {{"-a5", "h1", R}},
          {{"-a3", "h1", R}, {"-a2", "h2", R}},
          {{"a4", "h2", R}},
          {{"a5", "h2", R}},
      },
      {
          {},
          {{"-a1", "h1", T}},
          {},
          {{"a2", "h2", T}},
          {{"-a3 - a5", "h1", T}, {"-a4", "h2", T}},
          {{"a5", "h1", "h2"}},
      },
      {
          {{"a2", Q, T}},
          {},
          {{"-a1 - a2", Q, T}},
          {{"a2", "h2", T}},
          {{"a4", Q, "h2"}},
          {{"-a3 - a4", Q, T}, {"-a5", "h2", T}},
      },
  });
  f.connection = collect_residues(f.basis, f.entries);
  return f;
}

Fixtures make_fixtures() {
  Fixtures fx{make_example1(), make_ceva(), {}, {}, {}};
  fx.ceva_affine_circuits = {{1, 3}, {2, 4}, {1, 2, 5}, {3, 4, 5}};
  fx.ceva_broken_circuits = {{2, 5}, {4, 5}};
  fx.ceva_relations = {
      ExtElem::monomial({1, 3}),
      ExtElem::monomial({2, 4}),
      ExtElem::monomial({1, 2}) - ExtElem::monomial({1, 5}) + ExtElem::monomial({2, 5}),
      ExtElem::monomial({3, 4}) - ExtElem::monomial({3, 5}) + ExtElem::monomial({4, 5}),
  };
  return fx;
}

bool is_h0(const ProjForm& f) {
  for (std::size_t k = 1; k < f.size(); ++k)
    if (!f[k].is_zero()) return false;
  return true;
}

}  // namespace

const Matrix<WeightExpr>& WorkedExample::residue(const std::string& form) const {
  const ProjForm f = ProjForm::parse(form, arrangement.n());
  if (const GMComponent* c = connection.find(f)) return c->residue;
  throw ValidationError("fixture " + name + " has no component " + form);
}

const Fixtures& fixtures() {
  static const Fixtures fx = make_fixtures();
  return fx;
}

GMConnection collect_residues(const std::vector<IndexSet>& basis,
                              const std::vector<std::vector<std::vector<DlogTerm>>>& entries) {
  const std::size_t nb = basis.size();
  std::map<ProjForm, Matrix<WeightExpr>> acc;
  auto slot = [&](const ProjForm& f) -> Matrix<WeightExpr>& {
    auto it = acc.find(f);
    if (it == acc.end()) it = acc.emplace(f, Matrix<WeightExpr>(nb, nb)).first;
    return it->second;
  };
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      for (const DlogTerm& t : entries.at(i).at(j)) {
        slot(t.plus)(i, j) += t.coeff;
        slot(t.minus)(i, j) -= t.coeff;
      }
  GMConnection g;
  g.basis = basis;
  std::optional<GMComponent> h0;
  for (auto& [form, res] : acc) {
    if (res.is_zero()) continue;
    if (is_h0(form))
      h0 = GMComponent{form, std::move(res)};
    else
      g.components.push_back({form, std::move(res)});
  }
  if (h0) g.components.push_back(std::move(*h0));
  return g;
}

namespace {

std::string dlog(const ProjForm& f) {
  const std::string s = f.to_string('h');
  if (s.find(' ') == std::string::npos && s.find('*') == std::string::npos) return "d" + s + "/" + s;
  return "d(" + s + ")/(" + s + ")";
}

std::size_t term_count(const WeightExpr& e) { return e.coeffs().size() + (e.constant().is_zero() ? 0 : 1); }

void emit(std::ostringstream& os, bool first, const WeightExpr& c, const std::string& bracket) {
  std::string s = c.to_string();
  const bool single = term_count(c) == 1;
  if (single) {
    const bool neg = s[0] == '-';
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    os << (neg ? s.substr(1) : s);
  } else {
    if (!first) os << " + ";
    os << "(" << s << ")";
  }
  os << bracket;
}

}  // namespace

std::string bracket_entry(const GMConnection& g, std::size_t i, std::size_t j) {
  std::vector<std::pair<const ProjForm*, WeightExpr>> nz;
  WeightExpr total;
  for (const GMComponent& c : g.components) {
    const WeightExpr& e = c.residue(i, j);
    if (e.is_zero()) continue;
    nz.emplace_back(&c.form, e);
    total += e;
  }
  if (nz.empty()) return "0";
  std::ostringstream os;
  if (!total.is_zero()) {
    // Not a combination of dlog differences; list each dlog separately.
    bool first = true;
    for (const auto& [f, e] : nz) {
      emit(os, first, e, " " + dlog(*f));
      first = false;
    }
    return os.str();
  }
  // Reference component: the most terms, preferring h0, then the later one.
  std::size_t ref = 0;
  for (std::size_t k = 1; k < nz.size(); ++k) {
    const std::size_t a = term_count(nz[k].second), b = term_count(nz[ref].second);
    if (a > b || (a == b && !is_h0(*nz[ref].first))) ref = k;
  }
  if (nz.size() == 2 && !is_h0(*nz[ref].first) && !is_h0(*nz[1 - ref].first)) {
    // Two plain components: put the positively displayed one first.
    ref = nz[0].second.to_string()[0] == '-' ? 0 : 1;
  }
  bool first = true;
  for (std::size_t k = 0; k < nz.size(); ++k) {
    if (k == ref) continue;
    emit(os, first, nz[k].second, "[" + dlog(*nz[k].first) + " - " + dlog(*nz[ref].first) + "]");
    first = false;
  }
  return os.str();
}

}  // namespace hypergm

#include "hypergm/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "hypergm/errors.hpp"

namespace hypergm {

json to_json(const Rat& r) { return r.to_string(); }

Rat rat_from_json(const json& j) {
  if (j.is_string()) return Rat::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long>());
  throw ParseError("expected a rational string, got " + j.dump());
}

json to_json(const WeightExpr& e) {
  json coeffs = json::object();
  // a1, a2, ... then ah
  for (const auto& [id, c] : e.coeffs())
    if (id != kMovingSymbol) coeffs[symbol_name(id)] = to_json(c);
  if (!e.coeff(kMovingSymbol).is_zero()) coeffs["ah"] = to_json(e.coeff(kMovingSymbol));
  return {{"const", to_json(e.constant())}, {"coeffs", coeffs}};
}

WeightExpr weight_expr_from_json(const json& j) {
  if (j.is_string()) return WeightExpr::parse(j.get<std::string>());
  if (!j.is_object()) throw ParseError("expected a weight expression object");
  WeightExpr e = j.contains("const") ? WeightExpr(rat_from_json(j.at("const"))) : WeightExpr();
  if (j.contains("coeffs"))
    for (const auto& [name, c] : j.at("coeffs").items()) e += WeightExpr::symbol(parse_symbol(name), rat_from_json(c));
  return e;
}

Arrangement arrangement_from_json(const json& j) {
  try {
    const std::size_t n = j.at("n").get<std::size_t>();
    std::vector<std::vector<Rat>> raw;
    for (const json& row : j.at("hyperplanes")) {
      std::vector<Rat> r;
      for (const json& c : row) r.push_back(rat_from_json(c));
      if (r.size() != n + 1)
        throw ValidationError("hyperplane " + std::to_string(raw.size()) + " needs " + std::to_string(n + 1) +
                              " coefficients");
      raw.push_back(std::move(r));
    }
    const std::size_t inf = j.value("infinity", std::size_t{0});
    return validate(raw, inf);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed arrangement: ") + e.what());
  }
}

json to_json(const Arrangement& a) {
  json hs = json::array();
  for (const ProjForm& f : a.forms()) {
    json row = json::array();
    for (const Rat& c : f.coeffs()) row.push_back(to_json(c));
    hs.push_back(row);
  }
  return {{"n", a.n()}, {"hyperplanes", hs}, {"infinity", a.infinity()}};
}

Weights weights_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("weights file must be a JSON object");
  Assignment at;
  std::optional<Rat> a0;
  for (const auto& [name, v] : j.items()) {
    if (name == "a0") {
      a0 = rat_from_json(v);
      continue;
    }
    at[parse_symbol(name)] = rat_from_json(v);
  }
  Weights w = Weights::from_assignment(at);
  if (a0 && *a0 != w.a0())
    throw ValidationError("a0 = " + a0->to_string() + " contradicts the sum rule (expected " + w.a0().to_string() + ")");
  return w;
}

json to_json(const Weights& w) {
  json out = json::object();
  for (const auto& [i, v] : w.a) out[symbol_name(i)] = to_json(v);
  if (w.a_h) out["ah"] = to_json(*w.a_h);
  out["a0"] = to_json(w.a0());
  return out;
}

namespace {

json flat_to_json(const Flat& f) { return {{"support", f.support}, {"rank", f.rank}}; }

}  // namespace

json to_json(const Lattice& l) {
  json levels = json::array();
  for (const auto& level : l.levels) {
    json row = json::array();
    for (const Flat& f : level) row.push_back(flat_to_json(f));
    levels.push_back(row);
  }
  json covers = json::array();
  for (const auto& [lo, hi] : l.covers)
    covers.push_back({{lo.first, lo.second}, {hi.first, hi.second}});
  return {{"levels", levels}, {"covers", covers}, {"flat_count", l.flat_count()}};
}

json flats_to_json(const std::vector<Flat>& flats) {
  json out = json::array();
  for (const Flat& f : flats) out.push_back(flat_to_json(f));
  return out;
}

json circuits_to_json(const std::vector<Circuit>& cs) {
  json out = json::array();
  for (const Circuit& c : cs) {
    json dep = json::array();
    for (const Rat& r : c.dependency) dep.push_back(to_json(r));
    out.push_back({{"support", c.support}, {"dependency", dep}});
  }
  return out;
}

json broken_circuits_to_json(const std::vector<BrokenCircuit>& bs) {
  json out = json::array();
  for (const BrokenCircuit& b : bs) out.push_back({{"support", b.support}, {"princ", b.princ}});
  return out;
}

json index_sets_to_json(const std::vector<IndexSet>& sets) {
  json out = json::array();
  for (const IndexSet& s : sets) out.push_back(s);
  return out;
}

json to_json(const ExtElem& e, int moving) {
  json terms = json::array();
  for (const auto& [idx, c] : e.terms()) {
    json ix = json::array();
    for (int i : idx) {
      if (i == moving)
        ix.push_back("s");
      else
        ix.push_back(i);
    }
    terms.push_back({{"idx", ix}, {"c", to_json(c)}});
  }
  return {{"terms", terms}};
}

json relations_to_json(const std::vector<Relation>& rels) {
  json out = json::array();
  for (const Relation& r : rels)
    out.push_back({{"kind", r.kind == Relation::Kind::dependent ? "dependent" : "boundary"},
                   {"source", r.source},
                   {"element", to_json(r.element)}});
  return out;
}

json to_json(const GMConnection& g) {
  json comps = json::array();
  for (const GMComponent& c : g.components) {
    json form = json::array();
    for (const Rat& r : c.form.coeffs()) form.push_back(to_json(r));
    json res = json::array();
    for (std::size_t i = 0; i < c.residue.rows(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < c.residue.cols(); ++j) row.push_back(to_json(c.residue(i, j)));
      res.push_back(row);
    }
    comps.push_back({{"form", form}, {"residue", res}});
  }
  return {{"basis", index_sets_to_json(g.basis)}, {"components", comps}};
}

GMConnection connection_from_json(const json& j) {
  try {
    GMConnection g;
    for (const json& b : j.at("basis")) g.basis.push_back(b.get<IndexSet>());
    for (const json& c : j.at("components")) {
      std::vector<Rat> form;
      for (const json& r : c.at("form")) form.push_back(rat_from_json(r));
      const json& res = c.at("residue");
      Matrix<WeightExpr> m(res.size(), res.size());
      for (std::size_t i = 0; i < res.size(); ++i) {
        if (res[i].size() != res.size()) throw ValidationError("residue matrices must be square");
        for (std::size_t k = 0; k < res.size(); ++k) m(i, k) = weight_expr_from_json(res[i][k]);
      }
      g.components.push_back({ProjForm(form), std::move(m)});
    }
    return g;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed connection: ") + e.what());
  }
}

json complex_to_json(const cplx& z) {
  char re[40], im[40];
  std::snprintf(re, sizeof re, "%.17g", z.real());
  std::snprintf(im, sizeof im, "%.17g", z.imag());
  return json::array({re, im});
}

json to_json(const MonodromyResult& r) {
  json m = json::array();
  for (Eigen::Index i = 0; i < r.matrix.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < r.matrix.cols(); ++j) row.push_back(complex_to_json(r.matrix(i, j)));
    m.push_back(row);
  }
  json conds = json::array();
  for (const EigenGap& g : r.conditions) {
    char margin[40];
    std::snprintf(margin, sizeof margin, "%.17g", g.margin);
    conds.push_back({{"lambda_i", complex_to_json(g.lambda_i)}, {"lambda_j", complex_to_json(g.lambda_j)},
                     {"margin", margin}});
  }
  json out = {{"matrix", m}, {"method", r.method}, {"conditions", conds}};
  if (r.trace) out["trace"] = to_json(*r.trace);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(what + " is not valid JSON: " + e.what());
  }
}

}  // namespace hypergm

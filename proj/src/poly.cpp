#include "hypergm/poly.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "hypergm/errors.hpp"
#include "hypergm/linalg.hpp"

namespace hypergm {

std::string symbol_name(int id) {
  if (id == kMovingSymbol) return "ah";
  return "a" + std::to_string(id);
}

int parse_symbol(const std::string& name) {
  if (name == "ah") return kMovingSymbol;
  if (name.size() >= 2 && name[0] == 'a' &&
      std::all_of(name.begin() + 1, name.end(), [](unsigned char c) { return std::isdigit(c); }))
    return std::stoi(name.substr(1));
  throw ParseError("unknown weight symbol '" + name + "'");
}

// ---------------------------------------------------------------- Poly

Poly::Poly(Rat c) {
  if (!c.is_zero()) terms_.emplace(Monomial{}, std::move(c));
}

Poly Poly::variable(int id) { return monomial({{id, 1}}, 1); }

Poly Poly::monomial(const Monomial& m, const Rat& c) {
  Poly p;
  p.add_term(m, c);
  return p;
}

void Poly::add_term(const Monomial& m, const Rat& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rat Poly::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rat(0) : it->second;
}

int Poly::total_degree() const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [m, c] : terms_) {
    int t = 0;
    for (const auto& ve : m) t += ve.second;
    d = std::max(d, t);
  }
  return d;
}

int Poly::degree_in(const std::vector<int>& vars) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [m, c] : terms_) {
    int t = 0;
    for (const auto& [v, e] : m)
      if (std::find(vars.begin(), vars.end(), v) != vars.end()) t += e;
    d = std::max(d, t);
  }
  return d;
}

std::vector<int> Poly::variables() const {
  std::set<int> s;
  for (const auto& [m, c] : terms_)
    for (const auto& ve : m) s.insert(ve.first);
  return {s.begin(), s.end()};
}

namespace {

Rat power(const Rat& base, int e) {
  Rat r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

Poly power(const Poly& base, int e) {
  Poly r = 1;
  for (int i = 0; i < e; ++i) r = r * base;
  return r;
}

}  // namespace

Rat Poly::evaluate(const Assignment& at) const {
  Rat sum;
  for (const auto& [m, c] : terms_) {
    Rat t = c;
    for (const auto& [v, e] : m) {
      auto it = at.find(v);
      if (it == at.end()) throw std::invalid_argument("evaluate: unassigned variable " + std::to_string(v));
      t *= power(it->second, e);
    }
    sum += t;
  }
  return sum;
}

Poly Poly::substitute(const std::map<int, Poly>& repl) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    Poly t = c;
    Monomial kept;
    for (const auto& [v, e] : m) {
      auto it = repl.find(v);
      if (it == repl.end())
        kept.emplace_back(v, e);
      else
        t = t * power(it->second, e);
    }
    out += t * monomial(kept, 1);
  }
  return out;
}

Poly Poly::specialize(const Assignment& at) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    Rat k = c;
    Monomial kept;
    for (const auto& [v, e] : m) {
      auto it = at.find(v);
      if (it == at.end())
        kept.emplace_back(v, e);
      else
        k *= power(it->second, e);
    }
    out.add_term(kept, k);
  }
  return out;
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Rat& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& kv : terms_) kv.second *= c;
  return *this;
}

Monomial monomial_product(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(monomial_product(ma, mb), ca * cb);
  return out;
}

std::string Poly::to_string(std::string (*name)(int)) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rat mag = c.abs();
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    const bool show_coeff = m.empty() || mag != Rat(1);
    if (show_coeff) os << mag;
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (show_coeff || k > 0) os << "*";
      os << (name ? name(m[k].first) : "x" + std::to_string(m[k].first));
      if (m[k].second > 1) os << "^" << m[k].second;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- WeightExpr

WeightExpr WeightExpr::symbol(int id, const Rat& coeff) {
  WeightExpr e;
  if (!coeff.is_zero()) e.coeffs_[id] = coeff;
  return e;
}

WeightExpr WeightExpr::a0_expr(const std::vector<int>& symbols) {
  WeightExpr e;
  for (int id : symbols) e -= symbol(id);
  return e;
}

Rat WeightExpr::coeff(int id) const {
  auto it = coeffs_.find(id);
  return it == coeffs_.end() ? Rat(0) : it->second;
}

Rat WeightExpr::evaluate(const Assignment& at) const {
  Rat v = constant_;
  for (const auto& [id, c] : coeffs_) {
    auto it = at.find(id);
    if (it == at.end()) throw ValidationError("no value for weight " + symbol_name(id));
    v += c * it->second;
  }
  return v;
}

WeightPoly WeightExpr::to_poly() const {
  Poly p = constant_;
  for (const auto& [id, c] : coeffs_) p += Poly::variable(id) * c;
  return p;
}

WeightExpr& WeightExpr::operator+=(const WeightExpr& o) {
  constant_ += o.constant_;
  for (const auto& [id, c] : o.coeffs_) {
    Rat& slot = coeffs_[id];
    slot += c;
    if (slot.is_zero()) coeffs_.erase(id);
  }
  return *this;
}

WeightExpr& WeightExpr::operator-=(const WeightExpr& o) { return *this += -WeightExpr(o); }

WeightExpr& WeightExpr::operator*=(const Rat& c) {
  if (c.is_zero()) {
    *this = WeightExpr();
    return *this;
  }
  constant_ *= c;
  for (auto& kv : coeffs_) kv.second *= c;
  return *this;
}

namespace {

// Orders a_1, a_2, ..., then a_h.
std::vector<std::pair<int, Rat>> display_order(const std::map<int, Rat>& coeffs) {
  std::vector<std::pair<int, Rat>> out(coeffs.begin(), coeffs.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    const bool hx = x.first == kMovingSymbol, hy = y.first == kMovingSymbol;
    if (hx != hy) return hy;
    return x.first < y.first;
  });
  return out;
}

}  // namespace

std::string WeightExpr::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  auto emit = [&](const Rat& c, const std::string& sym) {
    if (first)
      os << (c.sign() < 0 ? "-" : "");
    else
      os << (c.sign() < 0 ? " - " : " + ");
    first = false;
    const Rat mag = c.abs();
    if (sym.empty())
      os << mag;
    else if (mag == Rat(1))
      os << sym;
    else
      os << mag << "*" << sym;
  };
  for (const auto& [id, c] : display_order(coeffs_)) emit(c, symbol_name(id));
  if (!constant_.is_zero()) emit(constant_, "");
  return os.str();
}

WeightExpr WeightExpr::parse(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw ParseError("empty weight expression");
  WeightExpr out;
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    const std::string tok = s.substr(i, j - i);
    if (tok.empty()) throw ParseError("malformed weight expression '" + text + "'");
    const auto star = tok.find('*');
    Rat c = sign;
    std::string sym;
    if (star != std::string::npos) {
      c *= Rat::parse(tok.substr(0, star));
      sym = tok.substr(star + 1);
    } else if (tok[0] == 'a') {
      sym = tok;
    } else {
      c *= Rat::parse(tok);
    }
    out += sym.empty() ? WeightExpr(c) : symbol(parse_symbol(sym), c);
    i = j;
  }
  return out;
}

WeightExpr affine_fit(const std::vector<std::pair<Assignment, Rat>>& samples) {
  std::set<int> ids;
  for (const auto& [a, v] : samples)
    for (const auto& kv : a) ids.insert(kv.first);
  const std::vector<int> syms(ids.begin(), ids.end());
  if (samples.size() < syms.size() + 1)
    throw ValidationError("affine_fit needs at least " + std::to_string(syms.size() + 1) + " samples");

  QMat m(samples.size(), syms.size() + 1);
  QVec b(samples.size());
  for (std::size_t r = 0; r < samples.size(); ++r) {
    m(r, 0) = 1;
    for (std::size_t k = 0; k < syms.size(); ++k) {
      auto it = samples[r].first.find(syms[k]);
      if (it == samples[r].first.end()) throw ValidationError("sample misses weight " + symbol_name(syms[k]));
      m(r, k + 1) = it->second;
    }
    b[r] = samples[r].second;
  }
  LinearSolution sol;
  try {
    sol = solve_linear(m, {b});
  } catch (const InconsistentSystem& e) {
    throw NonlinearInWeights("nonlinear in weights (sample " + std::to_string(e.row()) + " off the affine fit)");
  }
  if (!sol.kernel.empty()) throw ValidationError("affine_fit: sample points do not affinely span");
  WeightExpr out = sol.particular[0][0];
  for (std::size_t k = 0; k < syms.size(); ++k) out += WeightExpr::symbol(syms[k], sol.particular[0][k + 1]);
  return out;
}

}  // namespace hypergm

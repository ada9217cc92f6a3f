#include "hypergm/arrangement.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "hypergm/errors.hpp"
#include "hypergm/linalg.hpp"

namespace hypergm {

std::vector<Rat> normalize_form(std::vector<Rat> v) {
  auto lead = std::find_if(v.begin(), v.end(), [](const Rat& r) { return !r.is_zero(); });
  if (lead == v.end()) throw ValidationError("zero linear form");
  const mpz_class l = lcm_of_denominators(v.data(), v.data() + v.size());
  mpz_class g = 0;
  for (const Rat& r : v) {
    mpz_class num = r.num() * (l / r.den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
  }
  Rat scale = Rat(l) / Rat(g);
  if (lead->sign() < 0) scale = -scale;
  for (Rat& r : v) r *= scale;
  return v;
}

ProjForm::ProjForm(std::vector<Rat> coeffs) : c_(normalize_form(std::move(coeffs))) {}

std::string ProjForm::to_string(char var) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    if (first)
      os << (c_[i].sign() < 0 ? "-" : "");
    else
      os << (c_[i].sign() < 0 ? " - " : " + ");
    first = false;
    if (c_[i].abs() != Rat(1)) os << c_[i].abs() << "*";
    os << var << i;
  }
  return os.str();
}

ProjForm ProjForm::parse(const std::string& text, std::size_t dim) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  std::vector<Rat> c(dim + 1);
  std::size_t i = 0;
  if (s.empty()) throw ParseError("empty linear form");
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    std::string tok = s.substr(i, j - i);
    std::size_t k = 0;
    while (k < tok.size() && !std::isalpha(static_cast<unsigned char>(tok[k]))) ++k;
    if (k == tok.size() || k + 1 >= tok.size()) throw ParseError("malformed linear form '" + text + "'");
    std::string coeff = tok.substr(0, k);
    if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
    const Rat r = coeff.empty() ? Rat(1) : Rat::parse(coeff);
    const std::string idx = tok.substr(k + 1);
    if (!std::all_of(idx.begin(), idx.end(), [](unsigned char ch) { return std::isdigit(ch); }))
      throw ParseError("malformed linear form '" + text + "'");
    const std::size_t v = std::stoul(idx);
    if (v > dim) throw ParseError("variable index out of range in '" + text + "'");
    c[v] += r * Rat(sign);
    i = j;
  }
  return ProjForm(c);
}

QMat Arrangement::rows(const std::vector<int>& idx) const {
  QMat m(idx.size(), n_ + 1);
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (std::size_t c = 0; c <= n_; ++c) m(r, c) = forms_[static_cast<std::size_t>(idx[r])][c];
  return m;
}

std::size_t rank_of(const Arrangement& a, const std::vector<int>& idx) {
  if (idx.empty()) return 0;
  return rank(a.rows(idx));
}

Arrangement validate(const std::vector<std::vector<Rat>>& raw, std::size_t infinity) {
  if (raw.empty()) throw ValidationError("arrangement needs at least one hyperplane");
  const std::size_t width = raw.front().size();
  if (width < 2) throw ValidationError("forms need at least two coordinates");
  Arrangement a;
  a.n_ = width - 1;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].size() != width)
      throw ValidationError("hyperplane " + std::to_string(i) + " has " + std::to_string(raw[i].size()) +
                            " coefficients, expected " + std::to_string(width));
    try {
      a.forms_.emplace_back(raw[i]);
    } catch (const ValidationError&) {
      throw ValidationError("hyperplane " + std::to_string(i) + " is the zero form");
    }
  }
  for (std::size_t i = 0; i < a.forms_.size(); ++i)
    for (std::size_t j = i + 1; j < a.forms_.size(); ++j)
      if (a.forms_[i] == a.forms_[j])
        throw ValidationError("duplicate hyperplane: " + std::to_string(i) + " and " + std::to_string(j));
  const std::size_t lead = std::min(a.forms_.size(), a.n_ + 1);
  std::vector<int> frame(lead);
  for (std::size_t i = 0; i < lead; ++i) frame[i] = static_cast<int>(i);
  if (rank_of(a, frame) < lead) throw ValidationError("leading frame dependent");
  if (infinity >= a.forms_.size())
    throw ValidationError("infinity index " + std::to_string(infinity) + " out of range");
  a.infinity_ = infinity;
  return a;
}

Rat AffineForm::evaluate(const std::vector<Rat>& x) const {
  Rat v = constant;
  for (std::size_t j = 0; j < linear.size(); ++j)
    if (!linear[j].is_zero()) v += linear[j] * x[j];
  return v;
}

std::string AffineForm::to_string() const {
  std::ostringstream os;
  bool first = true;
  auto emit = [&](const Rat& c, const std::string& v) {
    if (c.is_zero()) return;
    if (first)
      os << (c.sign() < 0 ? "-" : "");
    else
      os << (c.sign() < 0 ? " - " : " + ");
    first = false;
    if (v.empty())
      os << c.abs();
    else if (c.abs() == Rat(1))
      os << v;
    else
      os << c.abs() << "*" << v;
  };
  emit(constant, "");
  for (std::size_t j = 0; j < linear.size(); ++j) emit(linear[j], "x" + std::to_string(j + 1));
  return first ? "0" : os.str();
}

Arrangement cone(const AffineArrangement& a) {
  std::vector<std::vector<Rat>> raw;
  std::vector<Rat> inf(a.n + 1);
  inf[0] = 1;
  raw.push_back(inf);
  for (const AffineForm& f : a.forms) {
    if (f.linear.size() != a.n) throw ValidationError("affine form has the wrong number of coefficients");
    std::vector<Rat> h{f.constant};
    h.insert(h.end(), f.linear.begin(), f.linear.end());
    raw.push_back(std::move(h));
  }
  return validate(raw, 0);
}

AffineForm affine_in_chart(const Arrangement& a, const std::vector<Rat>& f) {
  const ProjForm& u = a.form(a.infinity());
  std::size_t p = 0;
  while (u[p].is_zero()) ++p;
  AffineForm out;
  out.constant = f[p] / u[p];
  for (std::size_t q = 0; q <= a.n(); ++q) {
    if (q == p) continue;
    out.linear.push_back(f[q] - f[p] * u[q] / u[p]);
  }
  return out;
}

AffineArrangement decone(const Arrangement& a) {
  AffineArrangement out;
  out.n = a.n();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i == a.infinity()) continue;
    out.forms.push_back(affine_in_chart(a, a.form(i).coeffs()));
    out.source.push_back(i);
  }
  return out;
}

std::size_t Lattice::flat_count() const {
  std::size_t c = 0;
  for (const auto& l : levels) c += l.size();
  return c;
}

namespace {

std::vector<int> closure(const Arrangement& a, const std::vector<int>& support, std::size_t r) {
  std::vector<int> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int ii = static_cast<int>(i);
    if (std::binary_search(support.begin(), support.end(), ii)) {
      out.push_back(ii);
      continue;
    }
    std::vector<int> test = support;
    test.push_back(ii);
    if (rank_of(a, test) == r) out.push_back(ii);
  }
  return out;
}

}  // namespace

Lattice lattice(const Arrangement& a) {
  Lattice lat;
  Flat ambient;
  ambient.rank = 0;
  {
    QMat id = QMat::identity(a.n() + 1);
    for (std::size_t c = 0; c <= a.n(); ++c) ambient.closure_witness.push_back(id.col(c));
  }
  lat.levels.push_back({ambient});

  for (std::size_t r = 1; r <= a.n(); ++r) {
    std::map<std::vector<int>, Flat> found;
    const auto& prev = lat.levels[r - 1];
    for (const Flat& f : prev) {
      for (std::size_t h = 0; h < a.size(); ++h) {
        const int hi = static_cast<int>(h);
        if (std::binary_search(f.support.begin(), f.support.end(), hi)) continue;
        std::vector<int> s = f.support;
        s.insert(std::upper_bound(s.begin(), s.end(), hi), hi);
        std::vector<int> cl = closure(a, s, r);
        if (found.count(cl)) continue;
        Flat g;
        g.support = cl;
        g.rank = r;
        g.closure_witness = kernel_basis(a.rows(cl));
        found.emplace(cl, std::move(g));
      }
    }
    if (found.empty()) break;
    std::vector<Flat> level;
    for (auto& kv : found) level.push_back(std::move(kv.second));
    lat.levels.push_back(std::move(level));
  }

  for (std::size_t r = 0; r + 1 < lat.levels.size(); ++r)
    for (std::size_t i = 0; i < lat.levels[r].size(); ++i)
      for (std::size_t j = 0; j < lat.levels[r + 1].size(); ++j) {
        const auto& lo = lat.levels[r][i].support;
        const auto& hi = lat.levels[r + 1][j].support;
        if (std::includes(hi.begin(), hi.end(), lo.begin(), lo.end()))
          lat.covers.push_back({{r, i}, {r + 1, j}});
      }
  return lat;
}

std::vector<Flat> bad_loci(const Arrangement& a) {
  std::vector<Flat> out;
  const Lattice lat = lattice(a);
  for (const auto& level : lat.levels)
    for (const Flat& f : level)
      if (f.support.size() > f.rank) out.push_back(f);
  return out;
}

std::vector<ProjForm> discriminant(const Arrangement& a) {
  const std::size_t n = a.n();
  std::set<ProjForm> out;
  std::vector<int> pick(n);
  // Walk every n-subset in lexicographic order.
  for (std::size_t i = 0; i < n; ++i) pick[i] = static_cast<int>(i);
  if (a.size() < n) return {};
  while (true) {
    QMat m = a.rows(pick);
    if (rank(m) == n) {
      // The determinant with a symbolic last row h is the kernel vector of m
      // up to scale, which is all a canonical form keeps.
      std::vector<QVec> k = kernel_basis(m);
      out.insert(ProjForm(k.front()));
    }
    int i = static_cast<int>(n) - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == static_cast<int>(a.size() - n) + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (std::size_t j = static_cast<std::size_t>(i) + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  return {out.begin(), out.end()};
}

}  // namespace hypergm

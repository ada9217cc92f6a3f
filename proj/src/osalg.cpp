#include "hypergm/osalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hypergm {

ExtElem ExtElem::unit() { return monomial({}, 1); }

ExtElem ExtElem::monomial(IndexSet idx, const Rat& c) {
  if (!std::is_sorted(idx.begin(), idx.end()) || std::adjacent_find(idx.begin(), idx.end()) != idx.end())
    throw std::invalid_argument("exterior monomial indices must be strictly increasing");
  ExtElem e;
  e.add(idx, c);
  return e;
}

Rat ExtElem::coeff(const IndexSet& idx) const {
  auto it = terms_.find(idx);
  return it == terms_.end() ? Rat(0) : it->second;
}

int ExtElem::degree() const {
  if (terms_.empty()) return -1;
  const std::size_t d = terms_.begin()->first.size();
  for (const auto& kv : terms_)
    if (kv.first.size() != d) throw std::invalid_argument("element is not homogeneous");
  return static_cast<int>(d);
}

void ExtElem::add(const IndexSet& idx, const Rat& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(idx, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

ExtElem& ExtElem::operator+=(const ExtElem& o) {
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

ExtElem& ExtElem::operator-=(const ExtElem& o) {
  for (const auto& [k, c] : o.terms_) add(k, -c);
  return *this;
}

ExtElem& ExtElem::operator*=(const Rat& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& kv : terms_) kv.second *= c;
  return *this;
}

std::string ExtElem::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, c] : terms_) {
    if (first)
      os << (c.sign() < 0 ? "-" : "");
    else
      os << (c.sign() < 0 ? " - " : " + ");
    first = false;
    if (c.abs() != Rat(1) || idx.empty()) os << c.abs();
    if (!idx.empty()) {
      if (c.abs() != Rat(1)) os << "*";
      os << "e";
      for (std::size_t k = 0; k < idx.size(); ++k) os << (k ? "," : "") << idx[k];
    }
  }
  return os.str();
}

std::pair<int, IndexSet> wedge_index(int i, const IndexSet& j) {
  auto pos = std::lower_bound(j.begin(), j.end(), i);
  if (pos != j.end() && *pos == i) return {0, {}};
  IndexSet out = j;
  const auto k = pos - j.begin();
  out.insert(out.begin() + k, i);
  return {k % 2 ? -1 : 1, out};
}

ExtElem wedge(const ExtElem& a, const ExtElem& b) {
  ExtElem out;
  for (const auto& [x, cx] : a.terms())
    for (const auto& [y, cy] : b.terms()) {
      IndexSet cur = y;
      int sign = 1;
      bool zero = false;
      for (auto it = x.rbegin(); it != x.rend() && !zero; ++it) {
        auto [s, next] = wedge_index(*it, cur);
        if (s == 0) zero = true;
        sign *= s;
        cur = std::move(next);
      }
      if (!zero) out.add(cur, cx * cy * Rat(sign));
    }
  return out;
}

ExtElem boundary(const ExtElem& e) {
  ExtElem out;
  for (const auto& [idx, c] : e.terms())
    for (std::size_t k = 0; k < idx.size(); ++k) {
      IndexSet rest = idx;
      rest.erase(rest.begin() + static_cast<long>(k));
      out.add(rest, k % 2 ? -c : c);
    }
  return out;
}

ExtElem OSAlgebra::normal_form(const ExtElem& e) const {
  const Matroid& m = *m_;
  ExtElem::Terms work = e.terms();
  ExtElem done;
  while (!work.empty()) {
    auto last = std::prev(work.end());
    const IndexSet t = last->first;
    const Rat c = last->second;
    work.erase(last);
    if (m.dependent_with_infinity(t)) continue;
    const auto bc = m.least_broken_circuit_in(t);
    if (!bc) {
      done.add(t, c);
      continue;
    }
    // boundary(e_{t + q}) = 0 with q the princ; every other term replaces an
    // element of t by the smaller q, so the rewrite only moves downward.
    const ExtElem rel = boundary(ExtElem::monomial(wedge_index(bc->princ, t).second));
    const Rat self = rel.coeff(t);
    for (const auto& [idx, rc] : rel.terms()) {
      if (idx == t) continue;
      const Rat v = -c * rc / self;
      auto [it, inserted] = work.emplace(idx, v);
      if (!inserted) {
        it->second += v;
        if (it->second.is_zero()) work.erase(it);
      }
    }
  }
  return done;
}

std::vector<Relation> OSAlgebra::relation_basis(std::size_t p) const {
  const Matroid& m = *m_;
  std::vector<Relation> out;
  for (const IndexSet& b : subsets(m.ground(), p)) {
    if (m.dependent_with_infinity(b)) {
      out.push_back({Relation::Kind::dependent, b, ExtElem::monomial(b)});
      continue;
    }
    const auto bc = m.least_broken_circuit_in(b);
    if (!bc) continue;
    IndexSet hat = wedge_index(bc->princ, b).second;
    out.push_back({Relation::Kind::boundary, hat, boundary(ExtElem::monomial(hat))});
  }
  return out;
}

QVec OSAlgebra::coordinates(const ExtElem& e, const std::vector<IndexSet>& basis) const {
  const ExtElem nf = normal_form(e);
  QVec out(basis.size());
  std::size_t hit = 0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    out[i] = nf.coeff(basis[i]);
    if (!out[i].is_zero()) ++hit;
  }
  if (hit != nf.terms().size()) throw std::logic_error("normal form left the given basis");
  return out;
}

}  // namespace hypergm

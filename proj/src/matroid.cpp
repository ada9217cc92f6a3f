#include "hypergm/matroid.hpp"

#include <algorithm>
#include <map>

#include "hypergm/linalg.hpp"

namespace hypergm {

bool contains(const IndexSet& big, const IndexSet& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::vector<IndexSet> subsets(const IndexSet& from, std::size_t k) {
  std::vector<IndexSet> out;
  const std::size_t m = from.size();
  if (k > m) return out;
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    IndexSet s(k);
    for (std::size_t i = 0; i < k; ++i) s[i] = from[pick[i]];
    out.push_back(std::move(s));
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == m - k + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

namespace {

bool size_then_lex(const IndexSet& x, const IndexSet& y) {
  if (x.size() != y.size()) return x.size() < y.size();
  return x < y;
}

}  // namespace

Matroid::Matroid(Arrangement a) : a_(std::move(a)) {
  const int inf = infinity();
  order_.resize(a_.size());
  int next = 1;
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (static_cast<int>(i) == inf) {
      order_[i] = 0;
    } else {
      order_[i] = next++;
      ground_.push_back(static_cast<int>(i));
    }
  }
  if (inf != 0)
    warnings_.push_back("hyperplane " + std::to_string(inf) +
                        " is at infinity and is ranked least, ahead of lower indices");

  IndexSet all(a_.size());
  for (std::size_t i = 0; i < a_.size(); ++i) all[i] = static_cast<int>(i);
  for (std::size_t k = 1; k <= std::min(a_.size(), a_.n() + 2); ++k) {
    for (IndexSet& s : subsets(all, k)) {
      bool has_known = false;
      for (const Circuit& c : circuits_)
        if (contains(s, c.support)) {
          has_known = true;
          break;
        }
      if (has_known) continue;
      if (auto dep = dependency(s)) {
        Circuit c;
        c.support = std::move(s);
        c.dependency = std::move(*dep);
        c.contains_infinity = std::binary_search(c.support.begin(), c.support.end(), inf);
        circuits_.push_back(std::move(c));
      }
    }
  }

  std::map<IndexSet, int> best;
  for (const Circuit& c : circuits_) {
    const int p = least(c.support);
    IndexSet bc;
    for (int i : c.support)
      if (i != p) bc.push_back(i);
    auto it = best.find(bc);
    if (it == best.end() || order(p) < order(it->second)) best[bc] = p;
  }
  for (const auto& [s, p] : best) broken_.push_back({s, p});
  std::sort(broken_.begin(), broken_.end(),
            [](const BrokenCircuit& x, const BrokenCircuit& y) { return size_then_lex(x.support, y.support); });
}

int Matroid::least(const IndexSet& s) const {
  return *std::min_element(s.begin(), s.end(), [&](int x, int y) { return order(x) < order(y); });
}

std::size_t Matroid::rank(const IndexSet& s) const { return rank_of(a_, s); }

std::optional<QVec> Matroid::dependency(const IndexSet& s) const {
  if (s.empty()) return std::nullopt;
  const std::vector<QVec> k = kernel_basis(a_.rows(s).transpose());
  if (k.empty()) return std::nullopt;
  QVec d = k.front();
  auto lead = std::find_if(d.begin(), d.end(), [](const Rat& r) { return !r.is_zero(); });
  const Rat scale = lead->inverse();
  for (Rat& r : d) r *= scale;
  return d;
}

bool Matroid::dependent_with_infinity(const IndexSet& s) const {
  IndexSet t = s;
  const int inf = infinity();
  if (std::binary_search(t.begin(), t.end(), inf)) return true;
  t.insert(std::upper_bound(t.begin(), t.end(), inf), inf);
  return !independent(t);
}

std::optional<BrokenCircuit> Matroid::least_broken_circuit_in(const IndexSet& s) const {
  std::optional<BrokenCircuit> out;
  for (const BrokenCircuit& b : broken_) {
    if (!contains(s, b.support)) continue;
    if (!out || order(b.princ) < order(out->princ) ||
        (b.princ == out->princ && b.support < out->support))
      out = b;
  }
  return out;
}

bool Matroid::is_nbc(const IndexSet& s) const {
  if (dependent_with_infinity(s)) return false;
  for (const BrokenCircuit& b : broken_)
    if (contains(s, b.support)) return false;
  return true;
}

std::vector<IndexSet> Matroid::nbc_sets(std::size_t p) const {
  std::vector<IndexSet> out;
  for (IndexSet& s : subsets(ground_, p))
    if (is_nbc(s)) out.push_back(std::move(s));
  return out;
}

std::vector<IndexSet> Matroid::affine_circuits() const {
  std::vector<IndexSet> out;
  const int inf = infinity();
  for (const Circuit& c : circuits_) {
    if (c.support.size() > n() + 1) continue;
    IndexSet s;
    for (int i : c.support)
      if (i != inf) s.push_back(i);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), size_then_lex);
  return out;
}

std::vector<BrokenCircuit> Matroid::affine_broken_circuits() const {
  std::map<IndexSet, int> best;
  for (const Circuit& c : circuits_) {
    if (c.contains_infinity) continue;
    // A circuit meets in the chart iff infinity is outside its span.
    IndexSet with_inf = c.support;
    with_inf.insert(std::upper_bound(with_inf.begin(), with_inf.end(), infinity()), infinity());
    if (rank(with_inf) == rank(c.support)) continue;
    const int p = least(c.support);
    IndexSet bc;
    for (int i : c.support)
      if (i != p) bc.push_back(i);
    auto it = best.find(bc);
    if (it == best.end() || order(p) < order(it->second)) best[bc] = p;
  }
  std::vector<BrokenCircuit> out;
  for (const auto& [s, p] : best) out.push_back({s, p});
  std::sort(out.begin(), out.end(),
            [](const BrokenCircuit& x, const BrokenCircuit& y) { return size_then_lex(x.support, y.support); });
  return out;
}

std::vector<IndexSet> Matroid::affine_nbc_bases() const {
  const std::vector<BrokenCircuit> bcs = affine_broken_circuits();
  std::vector<IndexSet> out;
  for (IndexSet& s : subsets(ground_, n())) {
    if (dependent_with_infinity(s)) continue;
    bool broken = false;
    for (const BrokenCircuit& b : bcs)
      if (contains(s, b.support)) broken = true;
    if (!broken) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace hypergm

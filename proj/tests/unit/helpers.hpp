#pragma once

#include <initializer_list>
#include <vector>

#include "hypergm/arrangement.hpp"
#include "hypergm/matroid.hpp"

namespace testutil {

using hypergm::Arrangement;
using hypergm::QMat;
using hypergm::Rat;

inline Arrangement make(std::initializer_list<std::initializer_list<long>> rows, std::size_t infinity = 0) {
  std::vector<std::vector<Rat>> raw;
  for (const auto& r : rows) {
    std::vector<Rat> v;
    for (long c : r) v.emplace_back(c);
    raw.push_back(std::move(v));
  }
  return hypergm::validate(raw, infinity);
}

inline Arrangement example1() { return make({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}}); }
inline Arrangement ceva() { return make({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, -1, 0}, {1, 0, -1}, {0, 1, -1}}); }
inline Arrangement boolean2() { return make({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}); }

/// Plain Gauss-Jordan rank over the rationals, kept separate from the
/// fraction-free solver under test.
inline std::size_t naive_rank(std::vector<std::vector<Rat>> m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      const Rat f = m[i][c] / m[r][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    ++r;
  }
  return r;
}

inline std::size_t rank_of_forms(const Arrangement& a, const std::vector<int>& idx) {
  std::vector<std::vector<Rat>> rows;
  for (int i : idx) rows.push_back(a.form(static_cast<std::size_t>(i)).coeffs());
  return naive_rank(rows);
}

/// All k-subsets of {0..m-1} in lexicographic order.
inline std::vector<std::vector<int>> all_subsets(int m, std::size_t k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < m; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

inline long binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace testutil

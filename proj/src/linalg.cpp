#include "hypergm/linalg.hpp"

#include <numeric>
#include <stdexcept>

#include "hypergm/errors.hpp"

namespace hypergm {

namespace {

using ZMat = std::vector<std::vector<mpz_class>>;

// Fraction-free row echelon form of an integer matrix. Only the first
// `pivot_cols` columns are eligible as pivots; trailing columns ride along.
struct Echelon {
  ZMat rows;
  std::vector<std::size_t> pivots;       // pivot column of echelon row i
  std::vector<std::size_t> origin;       // original row index of echelon row i
  int swaps = 0;
};

Echelon bareiss(ZMat a, std::size_t pivot_cols) {
  Echelon e;
  const std::size_t nrows = a.size();
  const std::size_t ncols = nrows ? a.front().size() : 0;
  e.origin.resize(nrows);
  std::iota(e.origin.begin(), e.origin.end(), std::size_t{0});

  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_cols && r < nrows; ++c) {
    std::size_t p = r;
    while (p < nrows && a[p][c] == 0) ++p;
    if (p == nrows) continue;
    if (p != r) {
      std::swap(a[p], a[r]);
      std::swap(e.origin[p], e.origin[r]);
      ++e.swaps;
    }
    const mpz_class& piv = a[r][c];
    for (std::size_t i = r + 1; i < nrows; ++i) {
      const mpz_class lead = a[i][c];
      for (std::size_t j = c + 1; j < ncols; ++j) {
        mpz_class v = piv * a[i][j] - lead * a[r][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = std::move(v);
      }
      a[i][c] = 0;
    }
    prev = piv;
    e.pivots.push_back(c);
    ++r;
  }
  e.rows = std::move(a);
  return e;
}

// Scales each row of [m | rhs...] to integers.
ZMat integer_rows(const QMat& m, const std::vector<QVec>& rhs) {
  ZMat out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::vector<Rat> row = m.row(i);
    for (const QVec& b : rhs) row.push_back(b[i]);
    const mpz_class l = lcm_of_denominators(row.data(), row.data() + row.size());
    out[i].reserve(row.size());
    for (const Rat& v : row) out[i].push_back(v.num() * (l / v.den()));
  }
  return out;
}

// Solves the echelon system for pivot variables, given values already placed
// in the free positions of `x`. `rhs_col` < 0 means a homogeneous system.
void back_substitute(const Echelon& e, std::size_t ncols, long rhs_col, QVec& x) {
  for (std::size_t i = e.pivots.size(); i-- > 0;) {
    const std::size_t pc = e.pivots[i];
    Rat s = rhs_col < 0 ? Rat(0) : Rat(e.rows[i][static_cast<std::size_t>(rhs_col)]);
    for (std::size_t j = pc + 1; j < ncols; ++j) {
      if (x[j].is_zero() || e.rows[i][j] == 0) continue;
      s -= Rat(e.rows[i][j]) * x[j];
    }
    x[pc] = s / Rat(e.rows[i][pc]);
  }
}

}  // namespace

LinearSolution solve_linear(const QMat& m, const std::vector<QVec>& rhs) {
  for (const QVec& b : rhs)
    if (b.size() != m.rows()) throw std::invalid_argument("right-hand side length differs from row count");

  const std::size_t ncols = m.cols();
  const Echelon e = bareiss(integer_rows(m, rhs), ncols);
  const std::size_t rk = e.pivots.size();

  for (std::size_t k = 0; k < rhs.size(); ++k) {
    for (std::size_t i = rk; i < e.rows.size(); ++i) {
      if (e.rows[i][ncols + k] != 0)
        throw InconsistentSystem(e.origin[i], "inconsistent linear system at row " +
                                                   std::to_string(e.origin[i]));
    }
  }

  LinearSolution sol;
  for (std::size_t k = 0; k < rhs.size(); ++k) {
    QVec x(ncols);
    back_substitute(e, ncols, static_cast<long>(ncols + k), x);
    sol.particular.push_back(std::move(x));
  }

  std::vector<bool> is_pivot(ncols, false);
  for (std::size_t pc : e.pivots) is_pivot[pc] = true;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    QVec x(ncols);
    x[f] = 1;
    back_substitute(e, ncols, -1, x);
    sol.kernel.push_back(std::move(x));
  }
  return sol;
}

std::size_t rank(const QMat& m) { return bareiss(integer_rows(m, {}), m.cols()).pivots.size(); }

std::vector<QVec> kernel_basis(const QMat& m) { return solve_linear(m, {}).kernel; }

Rat determinant(const QMat& m) {
  if (!m.square()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  // Row scaling by l_i multiplies the determinant by l_i; undo afterwards.
  ZMat z = integer_rows(m, {});
  mpz_class scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rat> row = m.row(i);
    scale *= lcm_of_denominators(row.data(), row.data() + row.size());
  }
  const Echelon e = bareiss(std::move(z), n);
  if (e.pivots.size() < n) return 0;
  Rat d(e.rows[n - 1][n - 1]);
  if (e.swaps % 2) d = -d;
  return d / Rat(scale);
}

QVec mat_vec(const QMat& m, const QVec& x) {
  if (x.size() != m.cols()) throw std::invalid_argument("mat_vec shape mismatch");
  QVec y(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!x[j].is_zero()) y[i] += m(i, j) * x[j];
  return y;
}

}  // namespace hypergm

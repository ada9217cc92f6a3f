#pragma once

#include <cstddef>
#include <vector>

#include "hypergm/matrix.hpp"

namespace hypergm {

/// One particular solution per right-hand side plus a basis of ker(M).
struct LinearSolution {
  std::vector<QVec> particular;
  std::vector<QVec> kernel;
};

/// Solves M x = b for every b in `rhs` by fraction-free (Bareiss) elimination.
/// Free variables are set to zero in the particular solutions.
/// Throws InconsistentSystem carrying the index of an original row of M that
/// cannot be satisfied.
LinearSolution solve_linear(const QMat& m, const std::vector<QVec>& rhs);

std::size_t rank(const QMat& m);
std::vector<QVec> kernel_basis(const QMat& m);
Rat determinant(const QMat& m);

QVec mat_vec(const QMat& m, const QVec& x);

}  // namespace hypergm

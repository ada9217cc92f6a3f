#pragma once

#include <complex>

#include <Eigen/Dense>

namespace hypergm {

using CMat = Eigen::MatrixXcd;
using cplx = std::complex<double>;

/// exp(A) by scaling and squaring with a degree-13 Pade approximant.
/// Throws ValidationError for non-square input or non-finite entries.
CMat cexp_matrix(const CMat& a);

bool all_finite(const CMat& a);

}  // namespace hypergm

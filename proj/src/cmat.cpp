#include "hypergm/cmat.hpp"

#include <cmath>

#include "hypergm/errors.hpp"

namespace hypergm {

bool all_finite(const CMat& a) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const cplx v = a.data()[i];
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

CMat cexp_matrix(const CMat& a) {
  if (a.rows() != a.cols()) throw ValidationError("matrix exponential of a non-square matrix");
  if (!all_finite(a)) throw ValidationError("matrix exponential of a non-finite matrix");
  const Eigen::Index n = a.rows();
  if (n == 0) return a;

  // Higham (2005), m = 13.
  static constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                 1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                 670442572800.0,      33522128640.0,       1323241920.0,
                                 40840800.0,          960960.0,            16380.0,
                                 182.0,               1.0};
  static constexpr double theta13 = 5.371920351148152;

  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int s = 0;
  if (norm1 > theta13) s = std::max(0, static_cast<int>(std::ceil(std::log2(norm1 / theta13))));
  const CMat x = a / std::ldexp(1.0, s);

  const CMat id = CMat::Identity(n, n);
  const CMat x2 = x * x;
  const CMat x4 = x2 * x2;
  const CMat x6 = x4 * x2;
  const CMat u = x * (x6 * (b[13] * x6 + b[11] * x4 + b[9] * x2) + b[7] * x6 + b[5] * x4 + b[3] * x2 + b[1] * id);
  const CMat v = x6 * (b[12] * x6 + b[10] * x4 + b[8] * x2) + b[6] * x6 + b[4] * x4 + b[2] * x2 + b[0] * id;

  CMat r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < s; ++k) r = r * r;
  return r;
}

}  // namespace hypergm

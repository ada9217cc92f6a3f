#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypergm/aomoto.hpp"
#include "hypergm/sampling.hpp"

namespace hypergm {

/// Fixed arrangement plus the hyperplane sum h_i z_i = 0 moving over the
/// chart h_0 = 1 of the dual space, with l_i = h_i / h_0.
class MovingFamily {
 public:
  /// `weights` empty means symbolic weights.
  MovingFamily(Arrangement base, std::optional<Weights> weights = std::nullopt);

  const Arrangement& base() const { return base_; }
  const std::optional<Weights>& weights() const { return weights_; }
  std::size_t n() const { return base_.n(); }
  /// Weight symbols: the finite fixed hyperplanes, then a_h.
  std::vector<int> symbols() const;
  int moving_index() const { return static_cast<int>(base_.size()); }

  /// Homogeneous coefficients (1, l_1, ..., l_n) of the moving hyperplane.
  std::vector<Rat> moving_form(const std::vector<Rat>& l) const;
  /// x_s in the affine chart of the fixed arrangement.
  AffineForm x_s(const std::vector<Rat>& l) const;
  /// Derivative of x_s with respect to l_k (k = 1..n).
  AffineForm dx_s(std::size_t k) const;

 private:
  Arrangement base_;
  std::optional<Weights> weights_;
};

/// dl_k coefficient of the absolute connection applied to e_J:
/// a_h (d x_s / d l_k) / x_s e_J, as a rational form over `ext` (the fiber
/// at l, moving hyperplane last).
RatForm raw_derivative(const MovingFamily& f, const Arrangement& ext, const std::vector<Rat>& l,
                       const IndexSet& j, std::size_t k, const Rat& a_h);

struct GMComponent {
  ProjForm form;                  // in h_0..h_n
  Matrix<WeightExpr> residue;     // column j = image of basis element j
};

struct GMConnection {
  std::vector<IndexSet> basis;
  std::vector<GMComponent> components;  // canonical order, h_0 last

  const GMComponent* find(const ProjForm& f) const;
  /// Residue matrices evaluated at numeric weights.
  std::vector<QMat> evaluate(const Assignment& w) const;
};

struct GmOptions {
  std::uint64_t seed = kDefaultSeed;
  int sign = 1;  // global sign of the dl extraction
};

GMConnection gm_matrix(const MovingFamily& f, const GmOptions& opts = {});

struct FlatnessReport {
  bool flat = true;
  std::size_t trials = 0;
  bool symbolic_checked = false;
  std::string witness;  // first failing point, if any
};

/// Curvature of sum_p A_p dlog f_p at random rational points, plus the exact
/// polynomial identity in weights and l when the basis has at most 8
/// elements.
FlatnessReport flatness_check(const GMConnection& g, std::size_t trials, std::uint64_t seed = kDefaultSeed,
                              bool symbolic = true);

}  // namespace hypergm

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hypergm/matrix.hpp"

namespace hypergm {

/// Homogeneous linear form c_0 z_0 + ... + c_n z_n, kept in canonical form:
/// coprime integer coefficients with the first nonzero one positive.
class ProjForm {
 public:
  ProjForm() = default;
  explicit ProjForm(std::vector<Rat> coeffs);

  const std::vector<Rat>& coeffs() const { return c_; }
  const Rat& operator[](std::size_t i) const { return c_[i]; }
  std::size_t size() const { return c_.size(); }
  std::size_t dim() const { return c_.size() - 1; }

  /// e.g. "h0 - h1", "z0 + z1 + z2", "2*h1".
  std::string to_string(char var) const;
  /// Parses the to_string format (any variable letter); `dim` fixes the
  /// number of coordinates minus one.
  static ProjForm parse(const std::string& text, std::size_t dim);

  friend bool operator==(const ProjForm& a, const ProjForm& b) { return a.c_ == b.c_; }
  /// Lexicographic on the canonical coefficient vectors.
  friend bool operator<(const ProjForm& a, const ProjForm& b) { return a.c_ < b.c_; }

 private:
  std::vector<Rat> c_;
};

/// Canonical representative of the line spanned by `v` (throws on zero).
std::vector<Rat> normalize_form(std::vector<Rat> v);

class Arrangement {
 public:
  Arrangement() = default;

  std::size_t n() const { return n_; }
  std::size_t size() const { return forms_.size(); }
  const std::vector<ProjForm>& forms() const { return forms_; }
  const ProjForm& form(std::size_t i) const { return forms_[i]; }
  std::size_t infinity() const { return infinity_; }

  /// Coefficient matrix whose rows are the forms indexed by `idx`.
  QMat rows(const std::vector<int>& idx) const;

 private:
  friend Arrangement validate(const std::vector<std::vector<Rat>>&, std::size_t);
  std::size_t n_ = 0;
  std::vector<ProjForm> forms_;
  std::size_t infinity_ = 0;
};

/// Normalizes and checks a raw arrangement: no zero or proportional forms,
/// independent leading frame, valid infinity index.
Arrangement validate(const std::vector<std::vector<Rat>>& raw, std::size_t infinity);

/// Affine linear function c + sum_j k_j x_j on affine n-space.
struct AffineForm {
  Rat constant;
  std::vector<Rat> linear;  // k_1..k_n

  Rat evaluate(const std::vector<Rat>& x) const;
  std::string to_string() const;
  friend bool operator==(const AffineForm&, const AffineForm&) = default;
};

struct AffineArrangement {
  std::size_t n = 0;
  std::vector<AffineForm> forms;
  /// Projective index of each affine form (filled in by decone).
  std::vector<std::size_t> source;
};

/// Homogenizes affine forms; the hyperplane at infinity z_0 is placed at
/// index 0 and the affine forms follow in their given order.
Arrangement cone(const AffineArrangement& a);

/// Affine chart where the infinity form equals 1.
AffineArrangement decone(const Arrangement& a);

/// Affine form of an arbitrary homogeneous form in the chart of `a`'s
/// infinity hyperplane. The infinity form itself maps to the constant 1.
AffineForm affine_in_chart(const Arrangement& a, const std::vector<Rat>& homogeneous);

struct Flat {
  std::vector<int> support;
  std::size_t rank = 0;
  std::vector<QVec> closure_witness;  // basis of the common solution space
};

struct Lattice {
  std::vector<std::vector<Flat>> levels;  // levels[r] = flats of rank r
  /// Cover relations as ((rank, pos), (rank + 1, pos)) pairs.
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>>> covers;

  std::size_t flat_count() const;
};

Lattice lattice(const Arrangement& a);

/// Flats contained in more hyperplanes than their codimension, ordered by
/// rank and then support.
std::vector<Flat> bad_loci(const Arrangement& a);

/// Components of the locus in the dual space where a moving hyperplane
/// h_0 z_0 + ... + h_n z_n passes through a point of the lattice, sorted.
std::vector<ProjForm> discriminant(const Arrangement& a);

/// Rank of the forms indexed by `idx`.
std::size_t rank_of(const Arrangement& a, const std::vector<int>& idx);

}  // namespace hypergm

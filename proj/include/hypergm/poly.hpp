#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypergm/rational.hpp"

namespace hypergm {

/// Symbol id of the moving-hyperplane weight a_h. Fixed hyperplanes use their
/// own (non-negative) index as the id of their weight.
inline constexpr int kMovingSymbol = -1;

std::string symbol_name(int id);
/// Inverse of symbol_name; throws ParseError on anything else.
int parse_symbol(const std::string& name);

using Assignment = std::map<int, Rat>;

/// Sorted (variable, exponent) pairs with positive exponents.
using Monomial = std::vector<std::pair<int, int>>;

/// Sparse multivariate polynomial with rational coefficients over integer
/// variable ids.
class Poly {
 public:
  Poly() = default;
  Poly(Rat c);  // NOLINT
  Poly(long c) : Poly(Rat(c)) {}  // NOLINT

  static Poly variable(int id);
  static Poly monomial(const Monomial& m, const Rat& c);

  const std::map<Monomial, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rat constant_term() const;
  int total_degree() const;
  /// Degree counting only the listed variables.
  int degree_in(const std::vector<int>& vars) const;
  std::vector<int> variables() const;

  Rat evaluate(const Assignment& at) const;
  /// Replaces listed variables by polynomials; others stay as they are.
  Poly substitute(const std::map<int, Poly>& repl) const;
  /// Partial evaluation: variables in `at` become constants.
  Poly specialize(const Assignment& at) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rat& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= Rat(-1); }
  friend Poly operator*(Poly a, const Rat& c) { return a *= c; }
  friend Poly operator*(const Rat& c, Poly a) { return a *= c; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  void add_term(const Monomial& m, const Rat& c);

  std::string to_string(std::string (*name)(int) = nullptr) const;

 private:
  std::map<Monomial, Rat> terms_;
};

Monomial monomial_product(const Monomial& a, const Monomial& b);

using WeightPoly = Poly;

/// Affine-linear expression c + sum_i k_i * a_i in the weight symbols.
/// The infinity weight a_0 never appears; callers eliminate it with a0_expr.
class WeightExpr {
 public:
  WeightExpr() = default;
  WeightExpr(Rat c) : constant_(std::move(c)) {}  // NOLINT
  WeightExpr(long c) : constant_(c) {}            // NOLINT

  static WeightExpr symbol(int id, const Rat& coeff = 1);
  /// a_0 = -(sum of the given symbols).
  static WeightExpr a0_expr(const std::vector<int>& symbols);

  const Rat& constant() const { return constant_; }
  const std::map<int, Rat>& coeffs() const { return coeffs_; }
  Rat coeff(int id) const;
  bool is_zero() const { return constant_.is_zero() && coeffs_.empty(); }
  bool is_constant() const { return coeffs_.empty(); }

  Rat evaluate(const Assignment& at) const;
  WeightPoly to_poly() const;

  WeightExpr& operator+=(const WeightExpr& o);
  WeightExpr& operator-=(const WeightExpr& o);
  WeightExpr& operator*=(const Rat& c);
  friend WeightExpr operator+(WeightExpr a, const WeightExpr& b) { return a += b; }
  friend WeightExpr operator-(WeightExpr a, const WeightExpr& b) { return a -= b; }
  friend WeightExpr operator-(WeightExpr a) { return a *= Rat(-1); }
  friend WeightExpr operator*(WeightExpr a, const Rat& c) { return a *= c; }
  friend WeightExpr operator*(const Rat& c, WeightExpr a) { return a *= c; }
  friend bool operator==(const WeightExpr& a, const WeightExpr& b) {
    return a.constant_ == b.constant_ && a.coeffs_ == b.coeffs_;
  }

  /// Human form such as "-a1 - a3 + 1/2"; "0" for zero.
  std::string to_string() const;
  /// Inverse of to_string, also accepting "-a1-a3" and rational multiples
  /// written as "2/3*a1".
  static WeightExpr parse(const std::string& text);

 private:
  Rat constant_;
  std::map<int, Rat> coeffs_;
};

/// Recovers the affine-linear function matching every (assignment, value)
/// sample. Throws NonlinearInWeights if no affine function fits and
/// ValidationError if the sample points do not pin one down.
WeightExpr affine_fit(const std::vector<std::pair<Assignment, Rat>>& samples);

}  // namespace hypergm

#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace hypergm {

/// Exact rational number. Always in lowest terms with a positive denominator.
class Rat {
 public:
  Rat() = default;
  Rat(long value) : v_(value) {}  // NOLINT: integer literals convert freely
  Rat(long num, long den);
  explicit Rat(const mpz_class& value) : v_(value) {}
  Rat(const mpz_class& num, const mpz_class& den);
  explicit Rat(const mpq_class& value) : v_(value) { v_.canonicalize(); }

  /// Accepts "p", "-p", "p/q" (whitespace around the tokens is ignored).
  static Rat parse(std::string_view text);

  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }
  const mpq_class& value() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }
  double to_double() const { return v_.get_d(); }
  Rat abs() const;
  Rat inverse() const;

  /// "p/q", with "/q" omitted when q = 1.
  std::string to_string() const;

  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.v_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

/// Distance from `r` to the nearest integer is zero.
inline bool is_integral(const Rat& r) { return r.is_integer(); }

mpz_class lcm_of_denominators(const Rat* begin, const Rat* end);

}  // namespace hypergm

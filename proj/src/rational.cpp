#include "hypergm/rational.hpp"

#include <cctype>
#include <ostream>

#include "hypergm/errors.hpp"

namespace hypergm {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  s = trim(s);
  std::size_t i = 0;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) throw ParseError("malformed rational literal '" + std::string(whole) + "'");
  for (std::size_t k = i; k < s.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(s[k])))
      throw ParseError("malformed rational literal '" + std::string(whole) + "'");
  }
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return mpz_class(digits, 10);
}

}  // namespace

Rat::Rat(long num, long den) : v_(num, den) {
  if (den == 0) throw ValidationError("zero denominator");
  v_.canonicalize();
}

Rat::Rat(const mpz_class& num, const mpz_class& den) : v_(num, den) {
  if (den == 0) throw ValidationError("zero denominator");
  v_.canonicalize();
}

Rat Rat::parse(std::string_view text) {
  const std::string_view t = trim(text);
  const auto slash = t.find('/');
  if (slash == std::string_view::npos) return Rat(parse_integer(t, text));
  const mpz_class num = parse_integer(t.substr(0, slash), text);
  const mpz_class den = parse_integer(t.substr(slash + 1), text);
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rat(num, den);
}

Rat Rat::abs() const { return sign() < 0 ? -*this : *this; }

Rat Rat::inverse() const {
  if (is_zero()) throw ValidationError("inverse of zero");
  return Rat(mpq_class(1 / v_));
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw ValidationError("division by zero");
  v_ /= o.v_;
  return *this;
}

std::string Rat::to_string() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.to_string(); }

mpz_class lcm_of_denominators(const Rat* begin, const Rat* end) {
  mpz_class l = 1;
  for (const Rat* it = begin; it != end; ++it) {
    mpz_class d = it->den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  return l;
}

}  // namespace hypergm

#include "addcomb/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace addcomb {

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  if (!is_integer_literal(num)) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  if (slash == std::string_view::npos) return Rational(parse_integer(num));

  const std::string_view den = text.substr(slash + 1);
  if (!is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  return Rational(parse_integer(num), parse_integer(den));
}

std::string Rational::str() const {
  if (is_integer()) return num().get_str();
  return num().get_str() + "/" + den().get_str();
}

std::string Rational::fraction_str() const { return num().get_str() + "/" + den().get_str(); }

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  value_ /= o.value_;
  return *this;
}

mpz_class floor(const Rational& r) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), r.num().get_mpz_t(), r.den().get_mpz_t());
  return out;
}

mpz_class ceil(const Rational& r) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), r.num().get_mpz_t(), r.den().get_mpz_t());
  return out;
}

Rational pow(const Rational& r, unsigned k) {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), r.num().get_mpz_t(), k);
  mpz_pow_ui(d.get_mpz_t(), r.den().get_mpz_t(), k);
  return Rational(n, d);
}

}  // namespace addcomb

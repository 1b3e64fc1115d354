#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include <Eigen/Core>

namespace addcomb {

/// Exact rational number, always held in lowest terms with a positive
/// denominator. Thin value wrapper over mpq_class so that every operator
/// returns a concrete Rational (Eigen cannot consume gmpxx expression
/// templates).
class Rational {
 public:
  Rational() = default;

  template <std::signed_integral I>
  Rational(I v) : value_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)

  template <std::unsigned_integral I>
  Rational(I v) : value_(static_cast<unsigned long>(v)) {}  // NOLINT(google-explicit-constructor)

  explicit Rational(const mpz_class& integer) : value_(integer) {}

  /// Throws std::domain_error on a zero denominator.
  Rational(const mpz_class& num, const mpz_class& den);

  explicit Rational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

  /// Parses "num" or "num/den" (optional leading sign, no whitespace).
  static Rational parse(std::string_view text);

  const mpz_class& num() const { return value_.get_num(); }
  const mpz_class& den() const { return value_.get_den(); }
  const mpq_class& mpq() const { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }
  Rational abs() const { return Rational(mpq_class(::abs(value_))); }

  /// "num" for integers, "num/den" otherwise.
  std::string str() const;
  /// Always "num/den", including "n/1" for integers.
  std::string fraction_str() const;

  Rational& operator+=(const Rational& o) {
    value_ += o.value_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    value_ -= o.value_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    value_ *= o.value_;
    return *this;
  }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class value_;
};

/// floor and ceiling of an exact rational.
mpz_class floor(const Rational& r);
mpz_class ceil(const Rational& r);

/// r^k for k >= 0.
Rational pow(const Rational& r, unsigned k);

// Used by Eigen's generic kernels.
inline const Rational& conj(const Rational& x) { return x; }
inline const Rational& real(const Rational& x) { return x; }
inline Rational imag(const Rational&) { return Rational(0); }
inline Rational abs2(const Rational& x) { return x * x; }

}  // namespace addcomb

namespace Eigen {

template <>
struct NumTraits<addcomb::Rational> : GenericNumTraits<addcomb::Rational> {
  typedef addcomb::Rational Real;
  typedef addcomb::Rational NonInteger;
  typedef addcomb::Rational Nested;
  typedef addcomb::Rational Literal;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 50,
    MulCost = 50
  };

  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

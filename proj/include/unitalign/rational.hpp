#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <iosfwd>
#include <string>

namespace unitalign {

// Exact rational number over arbitrary-precision integers.
// Invariant: lowest terms, denominator > 0, zero is 0/1.
class Rational {
 public:
  using Int = boost::multiprecision::cpp_int;

  Rational() : num_(0), den_(1) {}
  Rational(long long value) : num_(value), den_(1) {}
  Rational(Int numerator, Int denominator);

  // Reads integer ("86400"), fraction ("5/9"), decimal ("273.15") or
  // scientific ("1e-3", "2.5E+2") notation. Throws NotANumber otherwise.
  static Rational fromLexical(const std::string& text);

  const Int& numerator() const { return num_; }
  const Int& denominator() const { return den_; }

  bool isZero() const { return num_ == 0; }
  bool isOne() const { return num_ == 1 && den_ == 1; }
  bool isInteger() const { return den_ == 1; }
  bool isNegative() const { return num_ < 0; }

  Rational operator-() const;
  Rational inverse() const;  // throws std::domain_error on zero

  Rational& operator+=(const Rational& other);
  Rational& operator-=(const Rational& other);
  Rational& operator*=(const Rational& other);
  Rational& operator/=(const Rational& other);  // throws std::domain_error on zero divisor

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  // Integer power; a negative exponent inverts (zero base then throws).
  Rational pow(int exponent) const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  // "p" when integral, "p/q" otherwise.
  std::string str() const;

  // Decimal rendering, exact when terminating within maxFractionDigits,
  // otherwise rounded to maxFractionDigits places.
  std::string decimalStr(int maxFractionDigits = 12) const;

  double toDouble() const;

 private:
  Int num_;
  Int den_;

  void normalize();
};

std::ostream& operator<<(std::ostream& os, const Rational& value);

}  // namespace unitalign

#include "unitalign/rational.hpp"

#include <cctype>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "unitalign/errors.hpp"

namespace unitalign {

namespace mp = boost::multiprecision;

Rational::Rational(Int numerator, Int denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_ == 0) {
    throw std::domain_error("rational with zero denominator");
  }
  normalize();
}

void Rational::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  Int g = mp::gcd(num_ < 0 ? Int(-num_) : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

Rational Rational::inverse() const {
  if (num_ == 0) {
    throw std::domain_error("inverse of zero");
  }
  return Rational(den_, num_);
}

Rational& Rational::operator+=(const Rational& other) {
  num_ = num_ * other.den_ + other.num_ * den_;
  den_ = den_ * other.den_;
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& other) {
  num_ = num_ * other.den_ - other.num_ * den_;
  den_ = den_ * other.den_;
  normalize();
  return *this;
}

Rational& Rational::operator*=(const Rational& other) {
  num_ *= other.num_;
  den_ *= other.den_;
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& other) {
  if (other.num_ == 0) {
    throw std::domain_error("division by zero");
  }
  num_ *= other.den_;
  den_ *= other.num_;
  normalize();
  return *this;
}

Rational Rational::pow(int exponent) const {
  if (exponent == 0) {
    return Rational(1);
  }
  if (exponent < 0) {
    return inverse().pow(-exponent);
  }
  Int n = mp::pow(num_, static_cast<unsigned>(exponent));
  Int d = mp::pow(den_, static_cast<unsigned>(exponent));
  Rational r;
  r.num_ = std::move(n);
  r.den_ = std::move(d);
  return r;  // powers of a normalized value stay normalized
}

Rational Rational::fromLexical(const std::string& text) {
  const char* s = text.c_str();
  std::size_t i = 0;
  std::size_t n = text.size();
  auto fail = [&text]() -> Rational {
    throw NotANumber("not a number: \"" + text + "\"");
  };

  bool negative = false;
  if (i < n && (s[i] == '+' || s[i] == '-')) {
    negative = s[i] == '-';
    ++i;
  }

  std::string intDigits;
  while (i < n && std::isdigit(static_cast<unsigned char>(s[i]))) {
    intDigits += s[i++];
  }

  // Fraction form: digits "/" digits, nothing else.
  if (i < n && s[i] == '/') {
    ++i;
    bool denNegative = false;
    if (i < n && (s[i] == '+' || s[i] == '-')) {
      denNegative = s[i] == '-';
      ++i;
    }
    std::string denDigits;
    while (i < n && std::isdigit(static_cast<unsigned char>(s[i]))) {
      denDigits += s[i++];
    }
    if (intDigits.empty() || denDigits.empty() || i != n) {
      return fail();
    }
    Int num(intDigits);
    Int den(denDigits);
    if (den == 0) {
      return fail();
    }
    if (negative) num = -num;
    if (denNegative) den = -den;
    return Rational(num, den);
  }

  std::string fracDigits;
  if (i < n && s[i] == '.') {
    ++i;
    while (i < n && std::isdigit(static_cast<unsigned char>(s[i]))) {
      fracDigits += s[i++];
    }
  }
  if (intDigits.empty() && fracDigits.empty()) {
    return fail();
  }

  long long exp10 = 0;
  if (i < n && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool expNegative = false;
    if (i < n && (s[i] == '+' || s[i] == '-')) {
      expNegative = s[i] == '-';
      ++i;
    }
    std::string expDigits;
    while (i < n && std::isdigit(static_cast<unsigned char>(s[i]))) {
      expDigits += s[i++];
    }
    if (expDigits.empty() || expDigits.size() > 6) {
      return fail();
    }
    exp10 = std::stoll(expDigits);
    if (expNegative) exp10 = -exp10;
  }
  if (i != n) {
    return fail();
  }

  Int num(intDigits.empty() ? "0" : intDigits);
  for (char c : fracDigits) {
    num = num * 10 + (c - '0');
  }
  Int den = mp::pow(Int(10), static_cast<unsigned>(fracDigits.size()));
  if (exp10 > 0) {
    num *= mp::pow(Int(10), static_cast<unsigned>(exp10));
  } else if (exp10 < 0) {
    den *= mp::pow(Int(10), static_cast<unsigned>(-exp10));
  }
  if (negative) num = -num;
  return Rational(num, den);
}

std::string Rational::str() const {
  std::string out = num_.str();
  if (den_ != 1) {
    out += "/" + den_.str();
  }
  return out;
}

std::string Rational::decimalStr(int maxFractionDigits) const {
  Int absNum = num_ < 0 ? Int(-num_) : num_;
  Int whole = absNum / den_;
  Int rem = absNum % den_;
  std::string out = (num_ < 0 && (whole != 0 || rem != 0)) ? "-" : "";
  out += whole.str();
  if (rem == 0) {
    return out;
  }
  std::string frac;
  for (int k = 0; k < maxFractionDigits && rem != 0; ++k) {
    rem *= 10;
    Int digit = rem / den_;
    frac += digit.str();
    rem %= den_;
  }
  if (rem != 0) {
    // Round the last digit half-up; carries may ripple into the whole part.
    rem *= 10;
    Int next = rem / den_;
    if (next >= 5) {
      int k = static_cast<int>(frac.size()) - 1;
      while (k >= 0 && frac[k] == '9') {
        frac[k--] = '0';
      }
      if (k >= 0) {
        ++frac[k];
      } else {
        whole += 1;
        out = (num_ < 0 ? "-" : "") + whole.str();
      }
    }
  }
  while (!frac.empty() && frac.back() == '0') {
    frac.pop_back();
  }
  if (!frac.empty()) {
    out += "." + frac;
  }
  return out;
}

double Rational::toDouble() const {
  return num_.convert_to<double>() / den_.convert_to<double>();
}

std::ostream& operator<<(std::ostream& os, const Rational& value) {
  return os << value.str();
}

}  // namespace unitalign

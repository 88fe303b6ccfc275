#include "caustic_bench/rational.hpp"

#include <numeric>
#include <ostream>

namespace caustics {

namespace {

using I128 = __int128;

std::int64_t checked_narrow(I128 v, const char* what) {
  if (v > INT64_MAX || v < INT64_MIN) {
    throw std::overflow_error(std::string("rational overflow in ") + what);
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_ == 0) den_ = 1;
}

Rational Rational::parse(const std::string& text) {
  std::size_t slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      if (text == "inf" || text == "infinity") {
        throw std::invalid_argument("infinity is not a rational");
      }
      std::size_t pos = 0;
      std::int64_t n = std::stoll(text, &pos);
      if (pos != text.size()) throw std::invalid_argument("trailing characters");
      return Rational(n);
    }
    std::size_t pos = 0;
    std::int64_t n = std::stoll(text.substr(0, slash), &pos);
    if (pos != slash) throw std::invalid_argument("bad numerator");
    std::int64_t d = std::stoll(text.substr(slash + 1), &pos);
    if (pos != text.size() - slash - 1) throw std::invalid_argument("bad denominator");
    return Rational(n, d);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("cannot parse rational: '" + text + "'");
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("rational out of range: '" + text + "'");
  }
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational& Rational::operator+=(const Rational& o) {
  I128 n = I128(num_) * o.den_ + I128(o.num_) * den_;
  I128 d = I128(den_) * o.den_;
  num_ = checked_narrow(n, "+");
  den_ = checked_narrow(d, "+");
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  I128 n = I128(num_) * o.num_;
  I128 d = I128(den_) * o.den_;
  num_ = checked_narrow(n, "*");
  den_ = checked_narrow(d, "*");
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw std::domain_error("rational division by zero");
  return *this *= Rational(o.den_, o.num_);
}

bool operator<(const Rational& a, const Rational& b) {
  return I128(a.num_) * b.den_ < I128(b.num_) * a.den_;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace caustics

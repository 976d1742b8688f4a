#include "surgery/integer.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace surgery {

namespace mp = boost::multiprecision;

Integer Integer::from_string(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw std::invalid_argument("bad integer literal '" + text + "'");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') throw std::invalid_argument("bad integer literal '" + text + "'");
  }
  mp::cpp_int v(text.substr(start));
  return Integer(text[0] == '-' ? mp::cpp_int(-v) : v);
}

Integer& Integer::operator/=(const Integer& o) {
  if (o.is_zero()) throw std::domain_error("integer division by zero");
  v_ /= o.v_;
  return *this;
}

Integer& Integer::operator%=(const Integer& o) {
  if (o.is_zero()) throw std::domain_error("integer modulo by zero");
  v_ %= o.v_;
  return *this;
}

bool Integer::fits_int64() const {
  return v_ >= std::numeric_limits<std::int64_t>::min() && v_ <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t Integer::to_int64() const {
  if (!fits_int64()) throw std::overflow_error("integer " + str() + " does not fit in 64 bits");
  return v_.convert_to<std::int64_t>();
}

std::ostream& operator<<(std::ostream& os, const Integer& x) { return os << x.raw(); }

Integer abs(const Integer& x) { return x.sign() < 0 ? -x : x; }

Integer gcd(const Integer& a, const Integer& b) { return Integer(mp::gcd(a.raw(), b.raw())); }

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b).sign() != 0 && ((a.sign() < 0) != (b.sign() < 0))) q -= 1;
  return q;
}

Integer ceil_div(const Integer& a, const Integer& b) { return -floor_div(-a, b); }

Integer mod(const Integer& a, const Integer& m) {
  if (m.sign() <= 0) throw std::domain_error("modulus must be positive");
  Integer r = a % m;
  if (r.sign() < 0) r += m;
  return r;
}

Integer isqrt(const Integer& x) {
  if (x.sign() < 0) throw std::domain_error("isqrt of negative integer");
  return Integer(mp::sqrt(x.raw()));
}

Rational::Rational(Integer n, Integer d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

void Rational::normalize() {
  if (den_.is_zero()) throw std::domain_error("rational with zero denominator");
  if (den_.sign() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_.is_zero()) {
    den_ = 1;
    return;
  }
  Integer g = gcd(num_, den_);
  if (g != 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational& Rational::operator+=(const Rational& o) {
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  num_ = num_ * o.den_ - o.num_ * den_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_.is_zero()) throw std::domain_error("rational division by zero");
  num_ *= o.den_;
  den_ *= o.num_;
  normalize();
  return *this;
}

std::string Rational::str() const { return is_integer() ? num_.str() : num_.str() + "/" + den_.str(); }

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }

bool LexLess::operator()(const IntVector& a, const IntVector& b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

}  // namespace surgery

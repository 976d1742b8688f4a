#pragma once

// Exact scalar types shared by every module: an arbitrary-precision Integer,
// a normalized Rational, and the Eigen glue that lets both sit inside dense
// Eigen matrices.

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace surgery {

/// Arbitrary-precision signed integer.
///
/// Thin value wrapper over boost's cpp_int. The wrapper exists so the type
/// can be used as an Eigen scalar: its converting constructor only accepts
/// builtin integrals, which keeps Eigen's scalar-promotion machinery from
/// probing boost's generic constructors.
class Integer {
 public:
  Integer() = default;
  template <std::integral I>
  Integer(I v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Integer(boost::multiprecision::cpp_int v) : v_(std::move(v)) {}

  /// Parses an optionally signed decimal literal; throws std::invalid_argument.
  static Integer from_string(const std::string& text);

  Integer& operator+=(const Integer& o) { v_ += o.v_; return *this; }
  Integer& operator-=(const Integer& o) { v_ -= o.v_; return *this; }
  Integer& operator*=(const Integer& o) { v_ *= o.v_; return *this; }
  /// Truncating division; throws std::domain_error on zero divisor.
  Integer& operator/=(const Integer& o);
  /// Remainder with the sign of the dividend (C++ semantics).
  Integer& operator%=(const Integer& o);

  friend Integer operator+(Integer a, const Integer& b) { return a += b; }
  friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
  friend Integer operator*(Integer a, const Integer& b) { return a *= b; }
  friend Integer operator/(Integer a, const Integer& b) { return a /= b; }
  friend Integer operator%(Integer a, const Integer& b) { return a %= b; }
  friend Integer operator-(const Integer& a) { return Integer(-a.v_); }

  friend bool operator==(const Integer& a, const Integer& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b) {
    const int c = a.v_.compare(b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c == 0 ? std::strong_ordering::equal : std::strong_ordering::greater);
  }

  [[nodiscard]] int sign() const { return v_.sign(); }
  [[nodiscard]] bool is_zero() const { return v_.is_zero(); }
  [[nodiscard]] bool is_odd() const { return boost::multiprecision::bit_test(v_, 0); }

  /// True when the value fits in int64_t.
  [[nodiscard]] bool fits_int64() const;
  /// Checked narrowing; throws std::overflow_error.
  [[nodiscard]] std::int64_t to_int64() const;

  [[nodiscard]] std::string str() const { return v_.str(); }
  [[nodiscard]] const boost::multiprecision::cpp_int& raw() const { return v_; }

 private:
  boost::multiprecision::cpp_int v_;
};

std::ostream& operator<<(std::ostream& os, const Integer& x);

Integer abs(const Integer& x);
Integer gcd(const Integer& a, const Integer& b);
/// Floor division (rounds toward negative infinity).
Integer floor_div(const Integer& a, const Integer& b);
/// Ceiling division.
Integer ceil_div(const Integer& a, const Integer& b);
/// Least non-negative residue of a modulo m (m > 0).
Integer mod(const Integer& a, const Integer& m);
/// Largest r with r*r <= x; throws std::domain_error for negative x.
Integer isqrt(const Integer& x);

/// Exact rational number, always in lowest terms with positive denominator.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(Integer n) : num_(std::move(n)), den_(1) {}  // NOLINT(google-explicit-constructor)
  template <std::integral I>
  Rational(I n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(Integer n, Integer d);

  [[nodiscard]] const Integer& num() const { return num_; }
  [[nodiscard]] const Integer& den() const { return den_; }
  [[nodiscard]] bool is_integer() const { return den_ == 1; }
  [[nodiscard]] int sign() const { return num_.sign(); }

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ <=> b.num_ * a.den_;
  }

  /// "n" for integers, "n/d" otherwise.
  [[nodiscard]] std::string str() const;

 private:
  void normalize();

  Integer num_;
  Integer den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& x);

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<Integer>;
using IntVector = Vector<Integer>;
using RatMatrix = Matrix<Rational>;
using RatVector = Vector<Rational>;

/// Strict weak order on integer vectors: shorter first, then lexicographic.
struct LexLess {
  bool operator()(const IntVector& a, const IntVector& b) const;
};

}  // namespace surgery

namespace Eigen {

template <>
struct NumTraits<surgery::Integer> : GenericNumTraits<surgery::Integer> {
  using Real = surgery::Integer;
  using NonInteger = surgery::Rational;
  using Nested = surgery::Integer;
  using Literal = surgery::Integer;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 8,
    MulCost = 16
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<surgery::Rational> : GenericNumTraits<surgery::Rational> {
  using Real = surgery::Rational;
  using NonInteger = surgery::Rational;
  using Nested = surgery::Rational;
  using Literal = surgery::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 32,
    MulCost = 32
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

#pragma once

#include <compare>
#include <complex>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "fasim/error.hpp"

namespace fasim {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number, always stored in lowest terms with a positive
/// denominator. Zero is 0/1.
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(long long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  ExactScalar(const BigInt& numerator, const BigInt& denominator);

  static ExactScalar from_integer(const BigInt& value);

  BigInt numerator() const;
  BigInt denominator() const;

  bool is_zero() const;
  bool is_integer() const;
  int sign() const;

  ExactScalar abs() const;
  ExactScalar reciprocal() const;

  friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b);
  friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b);
  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b);
  friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b);
  ExactScalar operator-() const;

  ExactScalar& operator+=(const ExactScalar& b) { return *this = *this + b; }
  ExactScalar& operator-=(const ExactScalar& b) { return *this = *this - b; }
  ExactScalar& operator*=(const ExactScalar& b) { return *this = *this * b; }
  ExactScalar& operator/=(const ExactScalar& b) { return *this = *this / b; }

  friend bool operator==(const ExactScalar& a, const ExactScalar& b);
  friend std::strong_ordering operator<=>(const ExactScalar& a, const ExactScalar& b);

 private:
  using Rational = boost::multiprecision::cpp_rational;
  explicit ExactScalar(Rational value) : value_(std::move(value)) {}

  Rational value_;
};

enum class ArithOp { Add, Sub, Mul, Div };

/// Dispatching form of the field operations; throws DivisionByZero.
ExactScalar rational_arith(const ExactScalar& a, const ExactScalar& b, ArithOp op);
std::strong_ordering rational_cmp(const ExactScalar& a, const ExactScalar& b);

/// Parses `[+-]?digits[.digits]?([eE][+-]?digits)?` exactly. No floating
/// point is involved at any stage.
ExactScalar parse_decimal(std::string_view text);

/// Accepts everything parse_decimal does plus the exact fraction form
/// `[+-]?digits/digits` used for non-terminating coefficients.
ExactScalar parse_coefficient(std::string_view text);

bool has_terminating_decimal(const ExactScalar& x);

/// Shortest plain decimal for x (no exponent, no trailing fractional
/// zeros, no point for integers). Throws NonTerminatingDecimal.
std::string format_decimal(const ExactScalar& x);

/// format_decimal when it terminates, `p/q` otherwise; inverse of
/// parse_coefficient.
std::string format_coefficient(const ExactScalar& x);

/// HOL Light real literal: `&n`, `#d.ddd`, `&p / &q`, negatives as `--(...)`.
std::string format_hol_literal(const ExactScalar& x);

/// Inverse of format_hol_literal.
ExactScalar parse_hol_literal(std::string_view text);

/// Nearest binary64, ties to even. Throws Overflow when |x| rounds past
/// the largest finite double.
double to_float(const ExactScalar& x);

/// Complex value with finite components; the constructor rejects NaN/Inf.
class ComplexF {
 public:
  ComplexF() = default;
  ComplexF(double re, double im = 0.0);  // NOLINT(google-explicit-constructor)
  ComplexF(std::complex<double> z);      // NOLINT(google-explicit-constructor)

  double re() const noexcept { return value_.real(); }
  double im() const noexcept { return value_.imag(); }
  std::complex<double> value() const noexcept { return value_; }
  operator std::complex<double>() const noexcept { return value_; }  // NOLINT

  friend bool operator==(const ComplexF& a, const ComplexF& b) = default;

 private:
  std::complex<double> value_{};
};

}  // namespace fasim

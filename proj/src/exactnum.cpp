#include "fasim/exactnum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fasim {

namespace mp = boost::multiprecision;

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::MalformedNumber: return "MalformedNumber";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::NonTerminatingDecimal: return "NonTerminatingDecimal";
    case ErrorKind::DegreeZero: return "DegreeZero";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DegenerateODE: return "DegenerateODE";
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::NonzeroInitialConditions: return "NonzeroInitialConditions";
    case ErrorKind::TailUnbounded: return "TailUnbounded";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::PoleOnAxis: return "PoleOnAxis";
    case ErrorKind::RepeatedPole: return "RepeatedPole";
    case ErrorKind::NotStrictlyProper: return "NotStrictlyProper";
    case ErrorKind::ImproperSystem: return "ImproperSystem";
    case ErrorKind::PoleAtZero: return "PoleAtZero";
    case ErrorKind::MissingComponent: return "MissingComponent";
    case ErrorKind::NonPositiveComponent: return "NonPositiveComponent";
    case ErrorKind::UnknownFilter: return "UnknownFilter";
    case ErrorKind::MalformedXML: return "MalformedXML";
    case ErrorKind::SchemaViolation: return "SchemaViolation";
    case ErrorKind::MalformedODEFile: return "MalformedODEFile";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::IOError: return "IOError";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// ExactScalar

ExactScalar::ExactScalar(const BigInt& numerator, const BigInt& denominator) {
  if (denominator == 0) {
    throw Error(ErrorKind::DivisionByZero, "zero denominator in rational");
  }
  if (denominator < 0) {
    value_ = Rational(BigInt(-numerator), BigInt(-denominator));
  } else {
    value_ = Rational(numerator, denominator);
  }
}

ExactScalar ExactScalar::from_integer(const BigInt& value) { return ExactScalar(Rational(value)); }

BigInt ExactScalar::numerator() const { return mp::numerator(value_); }
BigInt ExactScalar::denominator() const { return mp::denominator(value_); }

bool ExactScalar::is_zero() const { return value_.is_zero(); }
bool ExactScalar::is_integer() const { return mp::denominator(value_) == 1; }
int ExactScalar::sign() const { return value_.sign(); }

ExactScalar ExactScalar::abs() const { return ExactScalar(Rational(mp::abs(value_))); }

ExactScalar ExactScalar::reciprocal() const {
  if (is_zero()) {
    throw Error(ErrorKind::DivisionByZero, "reciprocal of zero");
  }
  return ExactScalar(Rational(1) / value_);
}

ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) { return ExactScalar(ExactScalar::Rational(a.value_ + b.value_)); }
ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) { return ExactScalar(ExactScalar::Rational(a.value_ - b.value_)); }
ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) { return ExactScalar(ExactScalar::Rational(a.value_ * b.value_)); }

ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) {
  if (b.is_zero()) {
    throw Error(ErrorKind::DivisionByZero, "division by zero");
  }
  return ExactScalar(ExactScalar::Rational(a.value_ / b.value_));
}

ExactScalar ExactScalar::operator-() const { return ExactScalar(Rational(-value_)); }

bool operator==(const ExactScalar& a, const ExactScalar& b) { return a.value_ == b.value_; }

std::strong_ordering operator<=>(const ExactScalar& a, const ExactScalar& b) {
  const int c = a.value_.compare(b.value_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

ExactScalar rational_arith(const ExactScalar& a, const ExactScalar& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Div: return a / b;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown arithmetic op");
}

std::strong_ordering rational_cmp(const ExactScalar& a, const ExactScalar& b) { return a <=> b; }

// ---------------------------------------------------------------------------
// Decimal text

namespace {

constexpr long kMaxExponent = 10000;

bool is_digit(char c) { return c >= '0' && c <= '9'; }

BigInt pow10(unsigned n) {
  BigInt r = 1;
  BigInt base = 10;
  while (n != 0) {
    if (n & 1U) r *= base;
    base *= base;
    n >>= 1U;
  }
  return r;
}

[[noreturn]] void malformed(std::string_view text, std::string_view why) {
  throw Error(ErrorKind::MalformedNumber, "'" + std::string(text) + "': " + std::string(why));
}

// Boost reads a leading 0 as an octal prefix, so strip it first.
BigInt from_digits(std::string_view digits) {
  const auto first = digits.find_first_not_of('0');
  return first == std::string_view::npos ? BigInt(0) : BigInt(std::string(digits.substr(first)));
}

std::size_t scan_digits(std::string_view text, std::size_t pos) {
  while (pos < text.size() && is_digit(text[pos])) ++pos;
  return pos;
}

}  // namespace

ExactScalar parse_decimal(std::string_view text) {
  if (text.empty()) {
    throw Error(ErrorKind::EmptyInput, "empty numeral");
  }
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  const std::size_t int_begin = pos;
  pos = scan_digits(text, pos);
  if (pos == int_begin) malformed(text, "expected digit");
  std::string digits(text.substr(int_begin, pos - int_begin));

  long frac_len = 0;
  if (pos < text.size() && text[pos] == '.') {
    const std::size_t frac_begin = ++pos;
    pos = scan_digits(text, pos);
    if (pos == frac_begin) malformed(text, "expected digit after '.'");
    digits.append(text.substr(frac_begin, pos - frac_begin));
    frac_len = static_cast<long>(pos - frac_begin);
  }

  long exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool exp_negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      exp_negative = text[pos] == '-';
      ++pos;
    }
    const std::size_t exp_begin = pos;
    pos = scan_digits(text, pos);
    if (pos == exp_begin) malformed(text, "expected exponent digits");
    if (pos - exp_begin > 6) malformed(text, "exponent out of range");
    exponent = std::stol(std::string(text.substr(exp_begin, pos - exp_begin)));
    if (exp_negative) exponent = -exponent;
  }
  if (pos != text.size()) malformed(text, "trailing characters");

  const long scale = exponent - frac_len;
  if (scale > kMaxExponent || scale < -kMaxExponent) malformed(text, "exponent out of range");

  BigInt mantissa = from_digits(digits);
  if (negative) mantissa = -mantissa;
  if (scale >= 0) {
    return ExactScalar::from_integer(mantissa * pow10(static_cast<unsigned>(scale)));
  }
  return ExactScalar(mantissa, pow10(static_cast<unsigned>(-scale)));
}

ExactScalar parse_coefficient(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return parse_decimal(text);
  }
  std::string_view num = text.substr(0, slash);
  std::string_view den = text.substr(slash + 1);
  bool negative = false;
  if (!num.empty() && (num.front() == '+' || num.front() == '-')) {
    negative = num.front() == '-';
    num.remove_prefix(1);
  }
  if (num.empty() || den.empty() || scan_digits(num, 0) != num.size() || scan_digits(den, 0) != den.size()) {
    malformed(text, "fraction must be digits/digits");
  }
  BigInt p = from_digits(num);
  BigInt q = from_digits(den);
  if (q == 0) malformed(text, "zero denominator");
  return ExactScalar(negative ? BigInt(-p) : p, q);
}

bool has_terminating_decimal(const ExactScalar& x) {
  BigInt d = x.denominator();
  while (d % 2 == 0) d /= 2;
  while (d % 5 == 0) d /= 5;
  return d == 1;
}

std::string format_decimal(const ExactScalar& x) {
  BigInt d = x.denominator();
  unsigned twos = 0;
  unsigned fives = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  if (d != 1) {
    throw Error(ErrorKind::NonTerminatingDecimal, "denominator " + x.denominator().str() + " has factors other than 2 and 5");
  }
  const unsigned places = std::max(twos, fives);
  const BigInt scaled = mp::abs(x.numerator()) * pow10(places) / x.denominator();
  std::string digits = scaled.str();
  if (digits.size() <= places) {
    digits.insert(0, places + 1 - digits.size(), '0');
  }
  std::string out = x.sign() < 0 ? "-" : "";
  const std::size_t int_len = digits.size() - places;
  out.append(digits, 0, int_len);
  std::string frac = digits.substr(int_len);
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  if (!frac.empty()) {
    out += '.';
    out += frac;
  }
  return out;
}

std::string format_coefficient(const ExactScalar& x) {
  if (has_terminating_decimal(x)) return format_decimal(x);
  return x.numerator().str() + "/" + x.denominator().str();
}

std::string format_hol_literal(const ExactScalar& x) {
  if (x.sign() < 0) {
    return "--(" + format_hol_literal(-x) + ")";
  }
  if (x.is_integer()) {
    return "&" + x.numerator().str();
  }
  if (has_terminating_decimal(x)) {
    return "#" + format_decimal(x);
  }
  return "&" + x.numerator().str() + " / &" + x.denominator().str();
}

ExactScalar parse_hol_literal(std::string_view text) {
  if (text.empty()) {
    throw Error(ErrorKind::EmptyInput, "empty literal");
  }
  if (text.starts_with("--(")) {
    if (!text.ends_with(")")) malformed(text, "unbalanced negation");
    const ExactScalar inner = parse_hol_literal(text.substr(3, text.size() - 4));
    if (inner.sign() <= 0) malformed(text, "negation must wrap a positive literal");
    return -inner;
  }
  if (text.front() == '#') {
    const std::string_view body = text.substr(1);
    if (body.empty() || !is_digit(body.front())) malformed(text, "expected decimal after '#'");
    return parse_decimal(body);
  }
  if (text.front() != '&') malformed(text, "expected '&', '#' or '--('");
  const auto slash = text.find(" / &");
  const std::string_view p = text.substr(1, slash == std::string_view::npos ? std::string_view::npos : slash - 1);
  if (p.empty() || scan_digits(p, 0) != p.size()) malformed(text, "expected digits after '&'");
  if (slash == std::string_view::npos) {
    return ExactScalar::from_integer(from_digits(p));
  }
  const std::string_view q = text.substr(slash + 4);
  if (q.empty() || scan_digits(q, 0) != q.size()) malformed(text, "expected digits after '/ &'");
  return ExactScalar(from_digits(p), from_digits(q));
}

// ---------------------------------------------------------------------------
// Conversion to binary64

double to_float(const ExactScalar& x) {
  if (x.is_zero()) return 0.0;
  const bool negative = x.sign() < 0;
  const BigInt n = mp::abs(x.numerator());
  const BigInt d = x.denominator();

  // Scale so that q = floor(n * 2^shift / d) lies in [2^54, 2^55).
  long shift = 54 - (static_cast<long>(mp::msb(n)) - static_cast<long>(mp::msb(d)));
  BigInt q;
  BigInt rem;
  auto divide = [&](long s) {
    if (s >= 0) {
      mp::divide_qr(BigInt(n << static_cast<unsigned>(s)), d, q, rem);
    } else {
      mp::divide_qr(n, BigInt(d << static_cast<unsigned>(-s)), q, rem);
    }
  };
  divide(shift);
  if (mp::msb(q) < 54) {
    ++shift;
    divide(shift);
  }
  bool sticky = rem != 0;

  // value = (q + frac) * 2^-shift with leading bit at 2^exponent.
  const long exponent = 54 - shift;
  long drop = 2;
  if (exponent < -1022) drop += -1022 - exponent;
  if (drop > 56) {
    return negative ? -0.0 : 0.0;
  }
  const BigInt mask = (BigInt(1) << static_cast<unsigned>(drop)) - 1;
  const BigInt low = q & mask;
  q >>= static_cast<unsigned>(drop);
  const BigInt half = BigInt(1) << static_cast<unsigned>(drop - 1);
  if (low > half || (low == half && (sticky || (q & 1) != 0))) {
    q += 1;
  }
  const double mantissa = q.convert_to<double>();  // at most 2^53, exact
  const double result = std::ldexp(mantissa, static_cast<int>(drop - shift));
  if (std::isinf(result)) {
    throw Error(ErrorKind::Overflow, "value exceeds binary64 range");
  }
  return negative ? -result : result;
}

// ---------------------------------------------------------------------------
// ComplexF

ComplexF::ComplexF(double re, double im) : ComplexF(std::complex<double>(re, im)) {}

ComplexF::ComplexF(std::complex<double> z) : value_(z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(ErrorKind::Overflow, "non-finite complex value");
  }
}

}  // namespace fasim

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <gmpxx.h>

#include <cstdlib>
#include <random>
#include <string>

#include "fasim/exactnum.hpp"

using fasim::BigInt;
using fasim::Error;
using fasim::ErrorKind;
using fasim::ExactScalar;

namespace {

ExactScalar q(long long p, long long d) { return ExactScalar(BigInt(p), BigInt(d)); }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected fasim::Error");
  return ErrorKind::InvalidArgument;
}

// GMP is the independent big-integer oracle for the arithmetic checks.
mpq_class to_mpq(const ExactScalar& x) {
  mpq_class r(mpz_class(x.numerator().str()), mpz_class(x.denominator().str()));
  r.canonicalize();
  return r;
}

std::string random_digits(std::mt19937_64& rng, int n, bool allow_leading_zero) {
  std::uniform_int_distribution<int> digit(0, 9);
  std::string s;
  for (int i = 0; i < n; ++i) {
    int d = digit(rng);
    if (i == 0 && !allow_leading_zero && d == 0) d = 1;
    s += static_cast<char>('0' + d);
  }
  return s;
}

}  // namespace

TEST_CASE("parse_decimal examples") {
  CHECK(fasim::parse_decimal("62500.0000039063") == ExactScalar(BigInt("625000000039063"), BigInt("10000000000")));
  CHECK(fasim::parse_decimal("0") == ExactScalar(0));
  CHECK(fasim::parse_decimal("0").denominator() == 1);
  CHECK(fasim::parse_decimal("7.813e9") == ExactScalar(7813000000LL));
  CHECK(fasim::parse_decimal("-1.5E-3") == q(-3, 2000));
  CHECK(fasim::parse_decimal("+16e3") == ExactScalar(16000));
  CHECK(fasim::parse_decimal("1e-9") == q(1, 1000000000));
}

TEST_CASE("leading zeros are decimal, not octal") {
  CHECK(fasim::parse_decimal("012") == ExactScalar(12));
  CHECK(fasim::parse_decimal("0.08") == q(2, 25));
  CHECK(fasim::parse_decimal("000") == ExactScalar(0));
  CHECK(fasim::parse_coefficient("09/010") == q(9, 10));
  CHECK(fasim::parse_hol_literal("&007") == ExactScalar(7));
}

TEST_CASE("parse_decimal rejects malformed text") {
  CHECK(kind_of([] { fasim::parse_decimal(""); }) == ErrorKind::EmptyInput);
  for (const char* bad : {".5", "5.", "1e", "e5", "--1", "1.2.3", "1e+", " 1", "1 ", "abc", "+", "0x10", "1,5"}) {
    CAPTURE(bad);
    CHECK(kind_of([&] { fasim::parse_decimal(bad); }) == ErrorKind::MalformedNumber);
  }
  CHECK(kind_of([] { fasim::parse_decimal("1e99999"); }) == ErrorKind::MalformedNumber);
}

TEST_CASE("format_hol_literal rules") {
  CHECK(fasim::format_hol_literal(ExactScalar(1)) == "&1");
  CHECK(fasim::format_hol_literal(fasim::parse_decimal("62500.0000039063")) == "#62500.0000039063");
  CHECK(fasim::format_hol_literal(q(1, 3)) == "&1 / &3");
  CHECK(fasim::format_hol_literal(ExactScalar(-1)) == "--(&1)");
  CHECK(fasim::format_hol_literal(q(-1, 4)) == "--(#0.25)");
  CHECK(fasim::format_hol_literal(q(-2, 7)) == "--(&2 / &7)");
  CHECK(fasim::format_hol_literal(ExactScalar(0)) == "&0");
}

TEST_CASE("format_decimal normalizes trailing zeros") {
  CHECK(fasim::format_decimal(fasim::parse_decimal("1.2500")) == "1.25");
  CHECK(fasim::format_decimal(fasim::parse_decimal("7.813e9")) == "7813000000");
  CHECK(fasim::format_decimal(fasim::parse_decimal("-0.000")) == "0");
  CHECK(fasim::format_decimal(q(1, 1024)) == "0.0009765625");
  CHECK(fasim::format_decimal(q(-3, 2000)) == "-0.0015");
  CHECK(kind_of([] { fasim::format_decimal(q(1, 3)); }) == ErrorKind::NonTerminatingDecimal);
}

TEST_CASE("rational_arith examples") {
  using fasim::ArithOp;
  CHECK(fasim::rational_arith(q(1, 2), q(1, 3), ArithOp::Add) == q(5, 6));
  CHECK(fasim::rational_arith(ExactScalar(62500), ExactScalar(62500), ArithOp::Mul) == ExactScalar(3906250000LL));
  CHECK(fasim::rational_arith(q(7, 2), q(7, 2), ArithOp::Div) == ExactScalar(1));
  CHECK(fasim::rational_cmp(q(1, 3), q(1, 2)) == std::strong_ordering::less);
  CHECK(kind_of([] { fasim::rational_arith(ExactScalar(1), ExactScalar(0), ArithOp::Div); }) == ErrorKind::DivisionByZero);
  CHECK(kind_of([] { ExactScalar(0).reciprocal(); }) == ErrorKind::DivisionByZero);
}

TEST_CASE("stored form is reduced with positive denominator") {
  const ExactScalar x(BigInt(6), BigInt(-4));
  CHECK(x.numerator() == -3);
  CHECK(x.denominator() == 2);
  CHECK(ExactScalar(BigInt(0), BigInt(-7)).denominator() == 1);
}

TEST_CASE("to_float examples") {
  CHECK(fasim::to_float(q(1, 2)) == 0.5);
  CHECK(fasim::to_float(ExactScalar(0)) == 0.0);
  CHECK(fasim::to_float(fasim::parse_decimal("62500.0000039063")) == std::strtod("62500.0000039063", nullptr));
  CHECK(fasim::to_float(q(1, 3)) == 1.0 / 3.0);
  CHECK(kind_of([] { fasim::to_float(fasim::parse_decimal("1e400")); }) == ErrorKind::Overflow);
  CHECK(fasim::to_float(fasim::parse_decimal("4.9406564584124654e-324")) == std::strtod("4.9406564584124654e-324", nullptr));
  CHECK(fasim::to_float(fasim::parse_decimal("1e-400")) == 0.0);
}

TEST_CASE("to_float matches correctly-rounded strtod on random decimals") {
  // glibc strtod is correctly rounded and independent of this code path.
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<int> len(1, 25);
  std::uniform_int_distribution<int> exp(-330, 310);
  for (int i = 0; i < 3000; ++i) {
    std::string text = random_digits(rng, len(rng), false);
    if (i % 3 == 0) text += "." + random_digits(rng, len(rng), true);
    text += "e" + std::to_string(exp(rng));
    const double expected = std::strtod(text.c_str(), nullptr);
    if (std::isinf(expected)) continue;
    CAPTURE(text);
    CHECK(fasim::to_float(fasim::parse_decimal(text)) == expected);
  }
  // Halfway cases: 2^53 + 1 and 2^53 + 3 tie to even.
  CHECK(fasim::to_float(ExactScalar(9007199254740993LL)) == 9007199254740992.0);
  CHECK(fasim::to_float(ExactScalar(9007199254740995LL)) == 9007199254740996.0);
}

TEST_CASE("property: parse then format reproduces random decimals") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> int_len(1, 15);
  std::uniform_int_distribution<int> frac_len(0, 15);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int i = 0; i < 2000; ++i) {
    std::string text = random_digits(rng, int_len(rng), false);
    const int fl = frac_len(rng);
    if (fl > 0) {
      std::string frac = random_digits(rng, fl, true);
      frac.back() = static_cast<char>('1' + (frac.back() - '0') % 9);  // canonical: no trailing zero
      text += "." + frac;
    }
    if (coin(rng) != 0) text = "-" + text;
    CAPTURE(text);
    const ExactScalar x = fasim::parse_decimal(text);
    CHECK(fasim::format_decimal(x) == text);
    CHECK(fasim::parse_decimal(fasim::format_decimal(x)) == x);
    CHECK(fasim::parse_hol_literal(fasim::format_hol_literal(x)) == x);
  }
}

TEST_CASE("property: hol literal round trip covers fractions") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long long> num(-1000000, 1000000);
  std::uniform_int_distribution<long long> den(1, 100000);
  for (int i = 0; i < 1000; ++i) {
    const ExactScalar x = q(num(rng), den(rng));
    CAPTURE(x.numerator().str());
    CAPTURE(x.denominator().str());
    const std::string lit = fasim::format_hol_literal(x);
    CHECK(fasim::parse_hol_literal(lit) == x);
    CHECK(fasim::parse_coefficient(fasim::format_coefficient(x)) == x);
  }
}

TEST_CASE("property: arithmetic agrees with GMP on random pairs") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> len(1, 30);
  for (int i = 0; i < 1000; ++i) {
    const ExactScalar a(BigInt(random_digits(rng, len(rng), false)) * (i % 2 ? -1 : 1), BigInt(random_digits(rng, len(rng), false)));
    const ExactScalar b(BigInt(random_digits(rng, len(rng), false)) * (i % 3 ? 1 : -1), BigInt(random_digits(rng, len(rng), false)));
    const mpq_class ga = to_mpq(a);
    const mpq_class gb = to_mpq(b);
    CHECK(to_mpq(a + b) == ga + gb);
    CHECK(to_mpq(a - b) == ga - gb);
    CHECK(to_mpq(a * b) == ga * gb);
    CHECK(to_mpq(a / b) == ga / gb);
    CHECK(((a <=> b) < 0) == (cmp(ga, gb) < 0));
    const ExactScalar s = a * b;
    CHECK(boost::multiprecision::gcd(s.numerator(), s.denominator()) == 1);
  }
}

TEST_CASE("ComplexF rejects non-finite components") {
  CHECK(kind_of([] { fasim::ComplexF(std::nan(""), 0.0); }) == ErrorKind::Overflow);
  CHECK(kind_of([] { fasim::ComplexF(0.0, HUGE_VAL); }) == ErrorKind::Overflow);
  const fasim::ComplexF z(2.0, 3.0);
  CHECK(z.re() == 2.0);
  CHECK(z.im() == 3.0);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "fasim/poly.hpp"

using fasim::BigInt;
using fasim::ComplexF;
using fasim::ExactScalar;
using fasim::Poly;

namespace {

ExactScalar q(long long p, long long d) { return ExactScalar(BigInt(p), BigInt(d)); }

Poly random_poly(std::mt19937_64& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<long long> num(-50, 50);
  std::uniform_int_distribution<long long> den(1, 9);
  std::vector<ExactScalar> c(deg(rng) + 1);
  for (auto& v : c) v = q(num(rng), den(rng));
  return Poly(c);
}

// Independent root oracle: expand prod (s - r_i) from integer roots.
Poly from_roots(const std::vector<long long>& rs) {
  Poly p{ExactScalar(1)};
  for (long long r : rs) p = fasim::poly_mul(p, Poly{ExactScalar(-r), ExactScalar(1)});
  return p;
}

}  // namespace

TEST_CASE("Poly trims leading zeros") {
  CHECK(Poly{1, 2, 0, 0}.coeffs().size() == 2);
  CHECK(Poly{0, 0}.is_zero());
  CHECK(Poly(std::vector<ExactScalar>{}).is_zero());
  CHECK(Poly{0}.degree() == 0);
}

TEST_CASE("poly_eval examples") {
  const Poly eq2_den{ExactScalar(3906250000LL), ExactScalar(62500), ExactScalar(1)};
  CHECK(std::complex<double>(fasim::poly_eval(eq2_den, 0.0)) == std::complex<double>(3.90625e9, 0.0));
  CHECK(std::complex<double>(fasim::poly_eval(Poly(), ComplexF(4.0, -1.0))) == std::complex<double>(0.0, 0.0));
  CHECK(std::complex<double>(fasim::poly_eval(Poly{0, 1}, ComplexF(2.0, 3.0))) == std::complex<double>(2.0, 3.0));
}

TEST_CASE("poly arithmetic examples") {
  CHECK(fasim::poly_mul(Poly{1, 1}, Poly{1, -1}) == Poly{1, 0, -1});
  const Poly p{q(1, 2), 3, -7};
  CHECK(fasim::poly_mul(p, Poly{1}) == p);
  CHECK(fasim::poly_mul(Poly{2, 1}, Poly{3, 1}) == Poly{6, 5, 1});
  CHECK(fasim::poly_add(Poly{1, 2, 3}, Poly{0, 0, -3}) == Poly{1, 2});
  CHECK(fasim::poly_scale(p, 0).is_zero());
  CHECK(Poly{5, 3, 2}.derivative() == Poly{3, 4});
}

TEST_CASE("poly_equal_up_to_scale examples") {
  CHECK(fasim::poly_equal_up_to_scale(Poly{2, 4}, Poly{1, 2}) == ExactScalar(2));
  CHECK_FALSE(fasim::poly_equal_up_to_scale(Poly{1, 2}, Poly{1, 3}).has_value());
  const Poly eq2_den{fasim::parse_decimal("3.90625e9"), ExactScalar(62500), ExactScalar(1)};
  CHECK(fasim::poly_equal_up_to_scale(eq2_den, Poly{ExactScalar(3906250000LL), ExactScalar(62500), ExactScalar(1)}) == ExactScalar(1));
  CHECK_FALSE(fasim::poly_equal_up_to_scale(Poly{1, 2}, Poly{1, 2, 3}).has_value());
  CHECK_FALSE(fasim::poly_equal_up_to_scale(Poly(), Poly{1}).has_value());
}

TEST_CASE("roots examples") {
  const Poly eq2_den{ExactScalar(3906250000LL), ExactScalar(62500), ExactScalar(1)};
  const auto r = fasim::roots(eq2_den);
  REQUIRE(r.size() == 2);
  CHECK(r[0].re() == -31250.0);
  CHECK(r[0].im() == doctest::Approx(-54126.5877365274154).epsilon(1e-14));
  CHECK(r[1].im() == doctest::Approx(54126.5877365274154).epsilon(1e-14));

  const auto one = fasim::roots(Poly{-1, 1});
  REQUIRE(one.size() == 1);
  CHECK(one[0].re() == 1.0);

  const auto cube = fasim::roots(Poly{-1, 0, 0, 1});
  REQUIRE(cube.size() == 3);
  const double h = std::sqrt(3.0) / 2.0;
  CHECK(std::abs(std::complex<double>(cube[0]) - std::complex<double>(-0.5, -h)) < 1e-12);
  CHECK(std::abs(std::complex<double>(cube[1]) - std::complex<double>(-0.5, h)) < 1e-12);
  CHECK(std::abs(std::complex<double>(cube[2]) - std::complex<double>(1.0, 0.0)) < 1e-12);

  CHECK_THROWS_AS(fasim::roots(Poly{3}), fasim::Error);
}

TEST_CASE("roots of real-root quadratics avoid cancellation") {
  // s^2 - (1e8 + 1e-8) s + 1 has roots 1e8 and 1e-8.
  const Poly p{ExactScalar(1), -fasim::parse_decimal("100000000.00000001"), ExactScalar(1)};
  const auto r = fasim::roots(p);
  CHECK(r[0].re() == doctest::Approx(1e-8).epsilon(1e-12));
  CHECK(r[1].re() == doctest::Approx(1e8).epsilon(1e-12));
}

TEST_CASE("property: Durand-Kerner recovers distinct integer roots") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> deg(3, 6);
  std::uniform_int_distribution<long long> root(-8, 8);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<long long> rs;
    const int n = deg(rng);
    while (static_cast<int>(rs.size()) < n) {
      const long long r = root(rng);
      if (std::find(rs.begin(), rs.end(), r) == rs.end()) rs.push_back(r);
    }
    std::sort(rs.begin(), rs.end());
    const auto found = fasim::roots(from_roots(rs));
    REQUIRE(found.size() == rs.size());
    for (std::size_t i = 0; i < rs.size(); ++i) {
      CHECK(std::abs(std::complex<double>(found[i]) - std::complex<double>(static_cast<double>(rs[i]), 0.0)) < 1e-9);
    }
  }
}

TEST_CASE("property: ring laws hold exactly") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const Poly a = random_poly(rng, 5);
    const Poly b = random_poly(rng, 5);
    const Poly c = random_poly(rng, 5);
    CHECK(fasim::poly_mul(a, b) == fasim::poly_mul(b, a));
    CHECK(fasim::poly_mul(fasim::poly_mul(a, b), c) == fasim::poly_mul(a, fasim::poly_mul(b, c)));
    CHECK(fasim::poly_mul(a, fasim::poly_add(b, c)) == fasim::poly_add(fasim::poly_mul(a, b), fasim::poly_mul(a, c)));
  }
}

TEST_CASE("property: evaluation is multiplicative") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    const Poly a = random_poly(rng, 4);
    const Poly b = random_poly(rng, 4);
    const ComplexF s(coord(rng), coord(rng));
    const std::complex<double> lhs = fasim::poly_eval(fasim::poly_mul(a, b), s);
    const std::complex<double> rhs = std::complex<double>(fasim::poly_eval(a, s)) * std::complex<double>(fasim::poly_eval(b, s));
    CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("property: scale is recovered") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long long> num(-30, 30);
  std::uniform_int_distribution<long long> den(1, 30);
  for (int i = 0; i < 200; ++i) {
    const Poly a = random_poly(rng, 6);
    if (a.is_zero()) continue;
    ExactScalar c = q(num(rng), den(rng));
    if (c.is_zero()) c = ExactScalar(3);
    CHECK(fasim::poly_equal_up_to_scale(fasim::poly_scale(a, c), a) == c);
  }
}

TEST_CASE("TransferFunction rejects zero denominator") {
  CHECK_THROWS_AS(fasim::TransferFunction(Poly{1}, Poly()), fasim::Error);
  const fasim::TransferFunction tf(Poly{1}, Poly{2, 1});
  CHECK(tf.proper());
  CHECK(tf.strictly_proper());
  CHECK_FALSE(fasim::TransferFunction(Poly{0, 0, 1}, Poly{2, 1}).proper());
}

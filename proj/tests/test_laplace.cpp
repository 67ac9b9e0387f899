#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <regex>

#include "fasim/laplace.hpp"
#include "workspace_data.hpp"

using fasim::BigInt;
using fasim::ComplexF;
using fasim::ExactScalar;
using fasim::LinearODE;
using fasim::ObligationStatus;
using fasim::Poly;
using fasim::TimeSignal;
using fasim::TransferFunction;

namespace {

ExactScalar q(long long p, long long d) { return ExactScalar(BigInt(p), BigInt(d)); }

using cplx = std::complex<double>;

cplx laplace(const TimeSignal& f, double s, double horizon = 40.0) {
  return fasim::numeric_laplace(f, ComplexF(s), horizon, 1e-10).value;
}

int count_theorem_ids(const fasim::ObligationReport& r) {
  static const std::regex id("A[0-9]");
  int n = 0;
  for (const auto& o : r.obligations) n += std::regex_match(o.id, id) ? 1 : 0;
  return n;
}

LinearODE random_ode(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> order(0, 6);
  std::uniform_int_distribution<long long> num(1, 999);
  std::uniform_int_distribution<long long> den(1, 64);
  std::uniform_int_distribution<int> sign(0, 1);
  auto coeff = [&] { return q(sign(rng) ? num(rng) : -num(rng), den(rng)); };
  std::vector<ExactScalar> out(order(rng) + 1);
  std::vector<ExactScalar> in(std::uniform_int_distribution<std::size_t>(1, out.size())(rng));
  for (auto& c : out) c = coeff();
  for (auto& c : in) c = coeff();
  return LinearODE(in, out);
}

}  // namespace

TEST_CASE("LinearODE rejects degenerate output") {
  CHECK_THROWS_AS(LinearODE({1}, {1, 0}), fasim::Error);
  CHECK_THROWS_AS(LinearODE({}, {1}), fasim::Error);
  CHECK_THROWS_AS(LinearODE({1}, {}), fasim::Error);
}

TEST_CASE("ode_to_tf examples") {
  const auto ws = fasim::ode_to_tf(fasim_test::workspace_ode());
  CHECK(ws.tf == fasim_test::workspace_tf());
  CHECK(ws.report.find("A-alg")->status == ObligationStatus::VerifiedExact);

  const auto ident = fasim::ode_to_tf(LinearODE({1}, {1}));
  CHECK(ident.tf == TransferFunction(Poly{1}, Poly{1}));
  CHECK(ident.report.find("A3")->status == ObligationStatus::VerifiedExact);

  const auto first = fasim::ode_to_tf(LinearODE({1}, {2, 1}));
  CHECK(first.tf == TransferFunction(Poly{1}, Poly{2, 1}));
}

TEST_CASE("ode_to_tf ledger mirrors the eight assumptions of the tf theorem") {
  const auto r = fasim::ode_to_tf(fasim_test::workspace_ode()).report;
  CHECK(count_theorem_ids(r) == 8);
  for (const char* id : {"A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8"}) {
    CAPTURE(id);
    REQUIRE(r.find(id) != nullptr);
    CHECK(r.find(id)->status == ObligationStatus::EmittedAssumption);
  }
  CHECK(r.find("A9") == nullptr);
  CHECK(r.find("A3")->description == "zero_init_conditions 1 V0");
  CHECK(r.sigma0 == 1.0);
}

TEST_CASE("tf_to_ode examples and ledger") {
  const auto ws = fasim::tf_to_ode(fasim_test::workspace_tf());
  CHECK(ws.ode == fasim_test::workspace_ode());
  CHECK(count_theorem_ids(ws.report) == 9);
  CHECK(ws.report.find("A6")->status == ObligationStatus::CheckedNumeric);
  CHECK(ws.report.find("A-alg")->status == ObligationStatus::VerifiedExact);
  CHECK(ws.report.find("A-alg")->detail.find("uniqueness") != std::string::npos);

  CHECK(fasim::tf_to_ode(TransferFunction(Poly{1}, Poly{1})).ode == LinearODE({1}, {1}));
  CHECK(fasim::tf_to_ode(TransferFunction(Poly{1}, Poly{2, 1})).ode == LinearODE({1}, {2, 1}));
  CHECK_THROWS_AS(fasim::tf_to_ode(TransferFunction(Poly{1}, Poly())), fasim::Error);
}

TEST_CASE("A6 fails when sigma0 is not positive") {
  const auto r = fasim::tf_to_ode(TransferFunction(Poly{1}, Poly{2, 1}), -1.0).report;
  CHECK(r.find("A6")->status == ObligationStatus::Failed);
}

TEST_CASE("check_equivalence examples") {
  const auto ws = fasim::check_equivalence(fasim_test::workspace_ode(), fasim_test::workspace_tf());
  CHECK(ws.find("A-alg")->status == ObligationStatus::VerifiedExact);
  CHECK(ws.scale == ExactScalar(1));

  const auto gain = fasim::check_equivalence(LinearODE({1}, {1}), TransferFunction(Poly{2}, Poly{1}));
  CHECK(gain.find("A-alg")->status == ObligationStatus::Failed);
  CHECK(gain.find("A-alg")->detail.starts_with("at coefficient 0"));
  CHECK(gain.any_failed());

  const auto scaled = fasim::check_equivalence(LinearODE({1}, {2, 1}), TransferFunction(Poly{3}, Poly{6, 3}));
  CHECK(scaled.find("A-alg")->status == ObligationStatus::VerifiedExact);
  CHECK(scaled.scale == q(1, 3));

  // Ideal circuit values do not match the noisy workspace lists exactly.
  CHECK(fasim::check_equivalence(fasim_test::workspace_ode(), fasim_test::ideal_sallen_key_tf()).any_failed());
}

TEST_CASE("check_equivalence accepts a common polynomial factor without a literal scale") {
  // (s+1)/((s+1)(s+2)) against v_o' + 2 v_o = v_i.
  const auto r = fasim::check_equivalence(LinearODE({1}, {2, 1}), TransferFunction(Poly{1, 1}, Poly{2, 3, 1}));
  CHECK(r.find("A-alg")->status == ObligationStatus::VerifiedExact);
  CHECK_FALSE(r.scale.has_value());
}

TEST_CASE("property: round trip and equivalence on random ODEs") {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 300; ++i) {
    const LinearODE ode = random_ode(rng);
    const auto forward = fasim::ode_to_tf(ode);
    const auto back = fasim::tf_to_ode(forward.tf);
    const auto c = fasim::poly_equal_up_to_scale(Poly(back.ode.out_coeffs()), Poly(ode.out_coeffs()));
    REQUIRE(c.has_value());
    CHECK(Poly(back.ode.in_coeffs()) == fasim::poly_scale(Poly(ode.in_coeffs()), *c));
    CHECK(fasim::check_equivalence(ode, forward.tf).find("A-alg")->status == ObligationStatus::VerifiedExact);
  }
}

TEST_CASE("abscissa examples") {
  CHECK(fasim::abscissa(fasim_test::workspace_tf()) == 1.0);
  CHECK(fasim::abscissa(TransferFunction(Poly{1}, Poly{-5, 1})) == 6.0);
  CHECK(fasim::abscissa(TransferFunction(Poly{1}, Poly{1, 1})) == 1.0);
  CHECK(fasim::abscissa(TransferFunction(Poly{1}, Poly{1, 1}), 0.25) == 0.25);
  CHECK(fasim::abscissa(TransferFunction(Poly{1}, Poly{2})) == 1.0);  // no poles: margin only
}

TEST_CASE("check_denominator_region") {
  auto r = fasim::ode_to_tf(fasim_test::workspace_ode()).report;
  fasim::check_denominator_region(r, fasim_test::workspace_tf());
  CHECK(r.find("A5")->status == ObligationStatus::CheckedNumeric);

  auto unstable = fasim::tf_to_ode(TransferFunction(Poly{1}, Poly{-5, 1})).report;
  CHECK(unstable.sigma0 == 6.0);
  unstable.sigma0 = 4.0;
  fasim::check_denominator_region(unstable, TransferFunction(Poly{1}, Poly{-5, 1}));
  CHECK(unstable.find("A4")->status == ObligationStatus::Failed);
}

TEST_CASE("numeric_laplace examples") {
  CHECK(std::abs(laplace(TimeSignal::exponential(-2.0), 3.0) - cplx(0.2, 0.0)) < 1e-6);
  const auto zero = fasim::numeric_laplace(TimeSignal::step(0.0), ComplexF(1.0), 10.0, 1e-8);
  CHECK(std::complex<double>(zero.value) == cplx(0.0, 0.0));
  CHECK(std::abs(laplace(TimeSignal::step(), 1.0) - cplx(1.0, 0.0)) < 1e-6);
  // Complex s: L[sin t](1 + i) = 1 / ((1+i)^2 + 1).
  const cplx s(1.0, 1.0);
  const cplx got = fasim::numeric_laplace(TimeSignal::sine(1.0), ComplexF(s), 40.0, 1e-10).value;
  CHECK(std::abs(got - 1.0 / (s * s + 1.0)) < 1e-8);
}

TEST_CASE("numeric_laplace tail bound and errors") {
  const auto r = fasim::numeric_laplace(TimeSignal::step(), ComplexF(1.0), 20.0, 1e-10);
  REQUIRE(r.tail_bound.has_value());
  CHECK(*r.tail_bound == doctest::Approx(std::exp(-20.0)));
  CHECK(std::abs(std::complex<double>(r.value) + *r.tail_bound - 1.0) < 1e-9);
  CHECK_THROWS_AS(fasim::numeric_laplace(TimeSignal::exponential(2.0), ComplexF(1.0), 10.0, 1e-8), fasim::Error);
  try {
    fasim::numeric_laplace(TimeSignal::exponential(2.0), ComplexF(2.0), 10.0, 1e-8);
  } catch (const fasim::Error& e) {
    CHECK(e.kind() == fasim::ErrorKind::TailUnbounded);
  }
}

TEST_CASE("numeric_laplace of a sampled table") {
  const double dt = 1e-3;
  std::vector<double> xs(20001);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = std::exp(-2.0 * dt * static_cast<double>(i));
  const auto r = fasim::numeric_laplace(TimeSignal::table(dt, xs), ComplexF(3.0), 20.0, 1e-10);
  CHECK(std::abs(std::complex<double>(r.value) - 0.2) < 1e-10);
  CHECK(r.quadrature_error < 1e-12);
}

TEST_CASE("derivative rule: L[f'](s) = s F(s) - f(0)") {
  struct Case {
    TimeSignal f;
    std::function<cplx(cplx)> F;  // closed-form transform
  };
  const std::vector<Case> cases = {
      {TimeSignal::exponential(-1.0), [](cplx s) { return 1.0 / (s + 1.0); }},
      {TimeSignal::damped_sine(1.0, 1.0), [](cplx s) { return 1.0 / ((s + 1.0) * (s + 1.0) + 1.0); }},
      {TimeSignal::sine(3.0), [](cplx s) { return 3.0 / (s * s + 9.0); }},
  };
  for (const auto& c : cases) {
    for (double s : {2.0, 5.0, 10.0}) {
      CAPTURE(c.f.describe());
      CAPTURE(s);
      const cplx lhs = laplace(c.f.derivative(), s);
      const cplx rhs = s * c.F(s) - c.f(0.0);
      CHECK(std::abs(lhs - rhs) <= 1e-4 * std::abs(rhs));
    }
  }
}

TEST_CASE("linearity") {
  const TimeSignal f = TimeSignal::damped_sine(0.5, 2.0);
  const TimeSignal g = TimeSignal::step();
  for (double a : {-2.0, 0.5, 3.0}) {
    for (double b : {1.0, -0.25}) {
      const double s = 1.5;
      const cplx combined = laplace(TimeSignal::combine(a, f, b, g), s);
      CHECK(std::abs(combined - (a * laplace(f, s) + b * laplace(g, s))) < 1e-6);
    }
  }
}

TEST_CASE("exp_order_check examples") {
  CHECK(fasim::exp_order_check(TimeSignal::exponential(2.0), {1.0, 2.0}, 10.0, 101).holds_on_grid);
  const auto violated = fasim::exp_order_check(TimeSignal::exponential(2.0), {1.0, 1.0}, 10.0, 101);
  CHECK_FALSE(violated.holds_on_grid);
  REQUIRE(violated.witness.has_value());
  CHECK(*violated.witness > 0.0);
  const auto sine = fasim::exp_order_check(TimeSignal::sine(1.0), {1.0, 0.0}, 100.0, 10001);
  CHECK(sine.holds_on_grid);
  CHECK(sine.note.find("not exhaustive") != std::string::npos);
  CHECK_THROWS_AS(fasim::exp_order_check(TimeSignal::sine(1.0), {1.0, 0.0}, 1.0, 1), fasim::Error);
}

TEST_CASE("signal bounds hold on a grid") {
  for (const TimeSignal& f : {TimeSignal::step(2.0), TimeSignal::exponential(-3.0, 4.0), TimeSignal::sine(5.0),
                              TimeSignal::damped_sine(1.0, 7.0), TimeSignal::ramp(),
                              TimeSignal::combine(2.0, TimeSignal::sine(1.0), -1.0, TimeSignal::ramp())}) {
    CAPTURE(f.describe());
    REQUIRE(f.bound().has_value());
    CHECK(fasim::exp_order_check(f, *f.bound(), 30.0, 3001).holds_on_grid);
  }
}

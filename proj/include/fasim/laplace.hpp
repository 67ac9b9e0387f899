#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fasim/poly.hpp"

namespace fasim {

/// Constant-coefficient linear ODE
///   sum_k out_coeffs[k] * d^k v_o/dt^k = sum_k in_coeffs[k] * d^k v_i/dt^k
/// under zero initial conditions. Both lists are ascending by derivative order.
class LinearODE {
 public:
  LinearODE(std::vector<ExactScalar> in_coeffs, std::vector<ExactScalar> out_coeffs);

  const std::vector<ExactScalar>& in_coeffs() const noexcept { return in_; }
  const std::vector<ExactScalar>& out_coeffs() const noexcept { return out_; }
  std::size_t order() const noexcept { return out_.size() - 1; }
  std::size_t input_order() const noexcept { return in_.size() - 1; }

  friend bool operator==(const LinearODE& a, const LinearODE& b) = default;

 private:
  std::vector<ExactScalar> in_;
  std::vector<ExactScalar> out_;
};

/// |f(t)| <= M e^{a t} for t >= 0.
struct ExpOrderBound {
  double M = 1.0;
  double a = 0.0;
};

enum class SignalKind { Step, Exp, Sin, DampedSin, Ramp, Table, Sum };

/// Real signal on t >= 0 with a descriptor and, when known, an
/// exponential-order bound.
class TimeSignal {
 public:
  static TimeSignal step(double amplitude = 1.0);
  /// e^{rate t}
  static TimeSignal exponential(double rate, double amplitude = 1.0);
  static TimeSignal sine(double omega);
  /// e^{-decay t} sin(omega t)
  static TimeSignal damped_sine(double decay, double omega);
  static TimeSignal ramp();
  /// Uniform samples starting at t = 0, linearly interpolated and held
  /// at the last value past the end.
  static TimeSignal table(double dt, std::vector<double> samples);
  /// a*f + b*g
  static TimeSignal combine(double a, const TimeSignal& f, double b, const TimeSignal& g);
  /// Time derivative for kinds with a closed form (not Table).
  TimeSignal derivative() const;

  double operator()(double t) const { return evaluator_(t); }
  SignalKind kind() const noexcept { return kind_; }
  const std::optional<ExpOrderBound>& bound() const noexcept { return bound_; }
  std::string describe() const { return description_; }

  /// Table kind only.
  double table_dt() const noexcept { return table_dt_; }
  const std::vector<double>& table_samples() const noexcept { return table_samples_; }

 private:
  TimeSignal(SignalKind kind, std::function<double(double)> fn, std::optional<ExpOrderBound> bound, std::string description)
      : kind_(kind), evaluator_(std::move(fn)), bound_(bound), description_(std::move(description)) {}

  SignalKind kind_;
  std::function<double(double)> evaluator_;
  std::optional<ExpOrderBound> bound_;
  std::string description_;
  double table_dt_ = 0.0;
  std::vector<double> table_samples_;
  std::vector<double> params_;
  std::shared_ptr<const std::pair<TimeSignal, TimeSignal>> operands_;
};

enum class ObligationStatus { VerifiedExact, CheckedNumeric, EmittedAssumption, Failed };

std::string_view to_string(ObligationStatus status);

struct Obligation {
  std::string id;
  std::string description;
  ObligationStatus status = ObligationStatus::EmittedAssumption;
  std::string detail;
};

enum class TheoremKind { TfFromOde, OdeFromTf };

/// Assumption ledger for one direction of the ODE <-> transfer function
/// theorem. `obligations` carries A1..A8 (tf from ode) or A1..A9 (ode from tf)
/// followed by the algebraic identity `A-alg` and any numeric checks.
struct ObligationReport {
  TheoremKind theorem = TheoremKind::TfFromOde;
  std::vector<Obligation> obligations;
  double sigma0 = 1.0;
  /// c with ode lists = c * tf lists, when the two are literally proportional.
  std::optional<ExactScalar> scale;

  const Obligation* find(std::string_view id) const;
  Obligation* find(std::string_view id);
  bool any_failed() const;
  void set(std::string_view id, ObligationStatus status, std::string detail);
};

constexpr double kDefaultAbscissaMargin = 1.0;

struct TfDerivation {
  TransferFunction tf;
  ObligationReport report;
};

struct OdeDerivation {
  LinearODE ode;
  ObligationReport report;
};

TfDerivation ode_to_tf(const LinearODE& ode, double margin = kDefaultAbscissaMargin);
OdeDerivation tf_to_ode(const TransferFunction& tf, double margin = kDefaultAbscissaMargin);

/// Exact cross-multiplication check num(tf) * out == den(tf) * in. The
/// returned report carries the transfer-function ledger (A1-A8) with A-alg decided.
ObligationReport check_equivalence(const LinearODE& ode, const TransferFunction& tf, double margin = kDefaultAbscissaMargin);

/// max(0, max Re(pole)) + margin; just the margin when there are no poles.
double abscissa(const TransferFunction& tf, double margin = kDefaultAbscissaMargin);

/// Marks the denominator-region obligation CheckedNumeric after sampling
/// |den(s)| on the line Re s = sigma0; Failed if a pole lies at or right of it.
void check_denominator_region(ObligationReport& report, const TransferFunction& tf);

struct LaplaceResult {
  ComplexF value;
  /// Bound on the neglected integral past the horizon; absent when the
  /// signal carries no exponential-order bound.
  std::optional<double> tail_bound;
  /// Richardson estimate of the quadrature error on [0, horizon].
  double quadrature_error = 0.0;
};

/// Adaptive Simpson of f(t) e^{-st} on [0, horizon]; Table signals use
/// composite Simpson on their own sample grid.
LaplaceResult numeric_laplace(const TimeSignal& f, ComplexF s, double horizon, double tol);

struct ExpOrderCheck {
  bool holds_on_grid = true;
  std::optional<double> witness;
  std::string note = "grid check over sampled points only; not exhaustive";
};

ExpOrderCheck exp_order_check(const TimeSignal& f, const ExpOrderBound& bound, double grid_max, int grid_n);

}  // namespace fasim

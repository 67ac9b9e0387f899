#include "fasim/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fasim {

// ---------------------------------------------------------------------------
// LinearODE

LinearODE::LinearODE(std::vector<ExactScalar> in_coeffs, std::vector<ExactScalar> out_coeffs)
    : in_(std::move(in_coeffs)), out_(std::move(out_coeffs)) {
  if (in_.empty() || out_.empty()) {
    throw Error(ErrorKind::DegenerateODE, "coefficient lists must be non-empty");
  }
  if (out_.back().is_zero()) {
    throw Error(ErrorKind::DegenerateODE, "leading output coefficient is zero");
  }
}

// ---------------------------------------------------------------------------
// TimeSignal

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

double positive_or_one(double m) { return m > 0.0 ? m : 1.0; }

}  // namespace

TimeSignal TimeSignal::step(double amplitude) {
  TimeSignal s(SignalKind::Step, [amplitude](double) { return amplitude; }, ExpOrderBound{positive_or_one(std::abs(amplitude)), 0.0},
               fmt(amplitude) + "*step(t)");
  s.params_ = {amplitude};
  return s;
}

TimeSignal TimeSignal::exponential(double rate, double amplitude) {
  TimeSignal s(SignalKind::Exp, [rate, amplitude](double t) { return amplitude * std::exp(rate * t); },
               ExpOrderBound{positive_or_one(std::abs(amplitude)), rate}, fmt(amplitude) + "*exp(" + fmt(rate) + "*t)");
  s.params_ = {rate, amplitude};
  return s;
}

namespace {

// e^{-decay t} (a_sin sin(wt) + a_cos cos(wt)); the shared shape behind
// Sin and DampedSin and their derivatives.
struct Sinusoid {
  double decay, omega, a_sin, a_cos;
  double operator()(double t) const {
    return std::exp(-decay * t) * (a_sin * std::sin(omega * t) + a_cos * std::cos(omega * t));
  }
};

}  // namespace

TimeSignal TimeSignal::sine(double omega) {
  TimeSignal s(SignalKind::Sin, Sinusoid{0.0, omega, 1.0, 0.0}, ExpOrderBound{1.0, 0.0}, "sin(" + fmt(omega) + "*t)");
  s.params_ = {0.0, omega, 1.0, 0.0};
  return s;
}

TimeSignal TimeSignal::damped_sine(double decay, double omega) {
  TimeSignal s(SignalKind::DampedSin, Sinusoid{decay, omega, 1.0, 0.0}, ExpOrderBound{1.0, -decay},
               "exp(-" + fmt(decay) + "*t)*sin(" + fmt(omega) + "*t)");
  s.params_ = {decay, omega, 1.0, 0.0};
  return s;
}

TimeSignal TimeSignal::ramp() {
  // t <= e^t for all t >= 0.
  return TimeSignal(SignalKind::Ramp, [](double t) { return t; }, ExpOrderBound{1.0, 1.0}, "t");
}

TimeSignal TimeSignal::table(double dt, std::vector<double> samples) {
  if (!(dt > 0.0) || samples.empty()) {
    throw Error(ErrorKind::InvalidArgument, "table signal needs dt > 0 and at least one sample");
  }
  double peak = 0.0;
  for (double v : samples) peak = std::max(peak, std::abs(v));
  auto shared = std::make_shared<const std::vector<double>>(samples);
  auto fn = [dt, shared](double t) {
    const auto& x = *shared;
    if (t <= 0.0) return x.front();
    const double pos = t / dt;
    const auto i = static_cast<std::size_t>(pos);
    if (i + 1 >= x.size()) return x.back();
    const double frac = pos - static_cast<double>(i);
    return x[i] + frac * (x[i + 1] - x[i]);
  };
  TimeSignal s(SignalKind::Table, fn, ExpOrderBound{positive_or_one(peak), 0.0},
               "table(" + std::to_string(samples.size()) + " samples, dt=" + fmt(dt) + ")");
  s.table_dt_ = dt;
  s.table_samples_ = std::move(samples);
  return s;
}

TimeSignal TimeSignal::combine(double a, const TimeSignal& f, double b, const TimeSignal& g) {
  std::optional<ExpOrderBound> bound;
  if (f.bound_ && g.bound_) {
    bound = ExpOrderBound{positive_or_one(std::abs(a) * f.bound_->M + std::abs(b) * g.bound_->M), std::max(f.bound_->a, g.bound_->a)};
  }
  auto fe = f.evaluator_;
  auto ge = g.evaluator_;
  TimeSignal s(SignalKind::Sum, [a, b, fe, ge](double t) { return a * fe(t) + b * ge(t); }, bound,
               fmt(a) + "*(" + f.description_ + ") + " + fmt(b) + "*(" + g.description_ + ")");
  s.params_ = {a, b};
  s.operands_ = std::make_shared<const std::pair<TimeSignal, TimeSignal>>(f, g);
  return s;
}

TimeSignal TimeSignal::derivative() const {
  switch (kind_) {
    case SignalKind::Step:
      return step(0.0);
    case SignalKind::Exp:
      return exponential(params_[0], params_[0] * params_[1]);
    case SignalKind::Sin:
    case SignalKind::DampedSin: {
      const double decay = params_[0];
      const double w = params_[1];
      const double as = params_[2];
      const double ac = params_[3];
      const Sinusoid d{decay, w, -decay * as - w * ac, w * as - decay * ac};
      TimeSignal s(kind_, d, ExpOrderBound{positive_or_one(std::abs(d.a_sin) + std::abs(d.a_cos)), -decay}, "d/dt(" + description_ + ")");
      s.params_ = {decay, w, d.a_sin, d.a_cos};
      return s;
    }
    case SignalKind::Ramp:
      return step(1.0);
    case SignalKind::Sum:
      return combine(params_[0], operands_->first.derivative(), params_[1], operands_->second.derivative());
    case SignalKind::Table:
      break;
  }
  throw Error(ErrorKind::InvalidArgument, "no closed-form derivative for " + description_);
}

// ---------------------------------------------------------------------------
// Obligation ledger

std::string_view to_string(ObligationStatus status) {
  switch (status) {
    case ObligationStatus::VerifiedExact: return "VerifiedExact";
    case ObligationStatus::CheckedNumeric: return "CheckedNumeric";
    case ObligationStatus::EmittedAssumption: return "EmittedAssumption";
    case ObligationStatus::Failed: return "Failed";
  }
  return "Unknown";
}

const Obligation* ObligationReport::find(std::string_view id) const {
  for (const auto& o : obligations) {
    if (o.id == id) return &o;
  }
  return nullptr;
}

Obligation* ObligationReport::find(std::string_view id) {
  return const_cast<Obligation*>(std::as_const(*this).find(id));
}

bool ObligationReport::any_failed() const {
  return std::any_of(obligations.begin(), obligations.end(), [](const Obligation& o) { return o.status == ObligationStatus::Failed; });
}

void ObligationReport::set(std::string_view id, ObligationStatus status, std::string detail) {
  Obligation* o = find(id);
  if (o == nullptr) {
    throw Error(ErrorKind::InvalidArgument, "no obligation " + std::string(id));
  }
  o->status = status;
  o->detail = std::move(detail);
}

namespace {

constexpr auto Emitted = ObligationStatus::EmittedAssumption;

double sigma0_for(const Poly& den, double margin) {
  if (den.degree() == 0) return margin;
  return abscissa(TransferFunction(Poly{1}, den), margin);
}

std::string sigma_text(double sigma0) { return "region Re s >= sigma0 = " + fmt(sigma0); }

Obligation zero_ic_obligation(std::size_t order) {
  if (order == 0) {
    return {"A3", "zero_init_conditions for V0", ObligationStatus::VerifiedExact, "vacuous: order-0 output has no initial conditions"};
  }
  return {"A3", "zero_init_conditions " + std::to_string(order - 1) + " V0", Emitted,
          "zero initial conditions are assumed for V0 and its first " + std::to_string(order - 1) + " derivative(s)"};
}

ObligationReport theorem1_ledger(std::size_t in_order, std::size_t out_order, double sigma0) {
  const std::string m = std::to_string(in_order);
  const std::string n = std::to_string(out_order);
  ObligationReport r;
  r.theorem = TheoremKind::TfFromOde;
  r.sigma0 = sigma0;
  r.obligations = {
      {"A1", "VI differentiable up to order " + m, Emitted, "semantic; forwarded to the proof script"},
      {"A2", "V0 differentiable up to order " + n, Emitted, "semantic; forwarded to the proof script"},
      zero_ic_obligation(out_order),
      {"A4", "laplace_transform VI s <> 0", Emitted,
       "stated pointwise in the theorem template; read here as a " + sigma_text(sigma0) + " condition"},
      {"A5", "denominator polynomial <> 0 at s", Emitted, "holds on the " + sigma_text(sigma0) + " once the poles are checked"},
      {"A6", "laplace_exists_higher_deriv " + m + " VI s", Emitted, "semantic; forwarded to the proof script"},
      {"A7", "laplace_exists_higher_deriv " + n + " V0 s", Emitted, "semantic; forwarded to the proof script"},
      {"A8", "differential equation model holds for all t", Emitted, "model hypothesis"},
  };
  return r;
}

ObligationReport theorem2_ledger(std::size_t in_order, std::size_t out_order, double sigma0) {
  const std::string m = std::to_string(in_order);
  const std::string n = std::to_string(out_order);
  ObligationReport r;
  r.theorem = TheoremKind::OdeFromTf;
  r.sigma0 = sigma0;
  const bool positive = sigma0 > 0.0;
  r.obligations = {
      {"A1", "VI differentiable up to order " + m, Emitted, "semantic; forwarded to the proof script"},
      {"A2", "V0 differentiable up to order " + n, Emitted, "semantic; forwarded to the proof script"},
      zero_ic_obligation(out_order),
      {"A4", "denominator polynomial <> 0 for Re r <= Re s", Emitted, "r := sigma0; " + sigma_text(sigma0)},
      {"A5", "laplace_transform VI s <> 0 for Re r <= Re s", Emitted, "semantic; " + sigma_text(sigma0)},
      {"A6", "&0 < Re r", positive ? ObligationStatus::CheckedNumeric : ObligationStatus::Failed,
       "r := sigma0 = " + fmt(sigma0) + (positive ? " > 0" : " is not positive")},
      {"A7", "laplace_exists_higher_deriv " + m + " VI s for Re r <= Re s", Emitted, "semantic; forwarded to the proof script"},
      {"A8", "laplace_exists_higher_deriv " + n + " V0 s for Re r <= Re s", Emitted, "semantic; forwarded to the proof script"},
      {"A9", "transfer function hypothesis for Re r <= Re s", Emitted, "model hypothesis"},
  };
  return r;
}

std::vector<ExactScalar> ascending_list(const Poly& p) { return p.coeffs(); }

}  // namespace

double abscissa(const TransferFunction& tf, double margin) {
  if (tf.den().degree() == 0) return margin;
  const auto poles = roots(tf.den());
  double worst = 0.0;
  for (const auto& p : poles) worst = std::max(worst, p.re());
  return worst + margin;
}

TfDerivation ode_to_tf(const LinearODE& ode, double margin) {
  Poly den(ode.out_coeffs());
  if (den.is_zero()) {
    throw Error(ErrorKind::DegenerateODE, "output polynomial is zero");
  }
  TransferFunction tf(Poly(ode.in_coeffs()), std::move(den));
  ObligationReport report = theorem1_ledger(ode.input_order(), ode.order(), sigma0_for(tf.den(), margin));
  report.obligations.push_back({"A-alg", "L[V0]/L[VI] equals the coefficient ratio", ObligationStatus::VerifiedExact,
                                "derivative rule under zero initial conditions maps each d^k/dt^k to s^k; ratio formed exactly"});
  report.scale = ExactScalar(1);
  return {std::move(tf), std::move(report)};
}

OdeDerivation tf_to_ode(const TransferFunction& tf, double margin) {
  LinearODE ode(ascending_list(tf.num()), ascending_list(tf.den()));
  ObligationReport report = theorem2_ledger(ode.input_order(), ode.order(), sigma0_for(tf.den(), margin));
  const Poly lhs = poly_mul(tf.num(), Poly(ode.out_coeffs()));
  const Poly rhs = poly_mul(tf.den(), Poly(ode.in_coeffs()));
  report.obligations.push_back(
      {"A-alg", "recovered differential equation reproduces the transfer function",
       lhs == rhs ? ObligationStatus::VerifiedExact : ObligationStatus::Failed,
       "exact cross-multiplication; uniqueness of the Laplace transform carries the s-domain identity back to t >= 0 "
       "(cited, not re-checked)"});
  report.scale = ExactScalar(1);
  return {std::move(ode), std::move(report)};
}

ObligationReport check_equivalence(const LinearODE& ode, const TransferFunction& tf, double margin) {
  const Poly out(ode.out_coeffs());
  const Poly in(ode.in_coeffs());
  ObligationReport report = theorem1_ledger(ode.input_order(), ode.order(), sigma0_for(out, margin));

  const Poly lhs = poly_mul(tf.num(), out);
  const Poly rhs = poly_mul(tf.den(), in);
  Obligation alg{"A-alg", "num(tf) * out(ode) = den(tf) * in(ode)", ObligationStatus::VerifiedExact, ""};
  if (lhs == rhs) {
    if (auto c = poly_equal_up_to_scale(out, tf.den()); c && in == poly_scale(tf.num(), *c)) {
      report.scale = *c;
      alg.detail = "cross-products agree exactly; ode lists = " + format_coefficient(*c) + " * tf lists";
    } else {
      alg.detail = "cross-products agree exactly; lists differ by a common polynomial factor";
    }
  } else {
    const std::size_t n = std::max(lhs.coeffs().size(), rhs.coeffs().size());
    std::size_t k = 0;
    while (k < n && lhs.coeff(k) == rhs.coeff(k)) ++k;
    alg.status = ObligationStatus::Failed;
    alg.detail = "at coefficient " + std::to_string(k) + ": num*out = " + format_coefficient(lhs.coeff(k)) +
                 ", den*in = " + format_coefficient(rhs.coeff(k));
  }
  report.obligations.push_back(std::move(alg));
  return report;
}

void check_denominator_region(ObligationReport& report, const TransferFunction& tf) {
  const std::string id = report.theorem == TheoremKind::TfFromOde ? "A5" : "A4";
  const Poly& den = tf.den();
  if (den.degree() == 0) {
    report.set(id, ObligationStatus::VerifiedExact, "constant nonzero denominator " + format_coefficient(den.coeffs()[0]));
    return;
  }
  const auto poles = roots(den);
  double worst = -HUGE_VAL;
  for (const auto& p : poles) worst = std::max(worst, p.re());
  if (!(worst < report.sigma0)) {
    report.set(id, ObligationStatus::Failed, "pole with Re = " + fmt(worst) + " lies in the " + sigma_text(report.sigma0));
    return;
  }
  // Sample |den| on the boundary line as a sanity check on the pole set.
  double scale = 1.0;
  for (const auto& p : poles) scale = std::max(scale, std::abs(std::complex<double>(p)));
  double min_mag = HUGE_VAL;
  for (int i = -200; i <= 200; ++i) {
    const double im = scale * 4.0 * static_cast<double>(i) / 200.0;
    min_mag = std::min(min_mag, std::abs(std::complex<double>(poly_eval(den, ComplexF(report.sigma0, im)))));
  }
  if (!(min_mag > 0.0)) {
    report.set(id, ObligationStatus::Failed, "denominator vanishes on Re s = sigma0");
    return;
  }
  report.set(id, ObligationStatus::CheckedNumeric,
             "max pole Re = " + fmt(worst) + " < sigma0 = " + fmt(report.sigma0) + "; min |den| on sampled boundary = " + fmt(min_mag));
}

// ---------------------------------------------------------------------------
// Numeric Laplace transform

namespace {

using cplx = std::complex<double>;

constexpr int kInitialPanels = 64;
constexpr int kMaxDepth = 48;

struct Simpson {
  const std::function<cplx(double)>& g;
  double error = 0.0;

  cplx adapt(double a, double b, cplx fa, cplx fm, cplx fb, cplx whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const cplx flm = g(lm);
    const cplx frm = g(rm);
    const cplx left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const cplx right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const cplx diff = left + right - whole;
    if (std::abs(diff) <= 15.0 * tol) {
      error += std::abs(diff) / 15.0;
      return left + right + diff / 15.0;
    }
    if (depth >= kMaxDepth) {
      throw Error(ErrorKind::QuadratureFailure, "adaptive Simpson exceeded recursion depth near t = " + fmt(m));
    }
    return adapt(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) + adapt(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }
};

cplx simpson_on_grid(const std::vector<cplx>& y, double h, std::size_t intervals) {
  // Composite Simpson over y[0..intervals]; a trailing odd interval count
  // closes with the 3/8 rule (or trapezoid for a single interval).
  if (intervals == 0) return 0.0;
  if (intervals == 1) return 0.5 * h * (y[0] + y[1]);
  std::size_t even = intervals % 2 == 0 ? intervals : intervals - 3;
  cplx sum = 0.0;
  for (std::size_t i = 0; i + 2 <= even; i += 2) sum += h / 3.0 * (y[i] + 4.0 * y[i + 1] + y[i + 2]);
  if (even != intervals) {
    const std::size_t i = even;
    sum += 3.0 * h / 8.0 * (y[i] + 3.0 * y[i + 1] + 3.0 * y[i + 2] + y[i + 3]);
  }
  return sum;
}

}  // namespace

LaplaceResult numeric_laplace(const TimeSignal& f, ComplexF s, double horizon, double tol) {
  if (!(horizon > 0.0) || !(tol > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "horizon and tol must be positive");
  }
  const cplx sv = s;
  std::optional<double> tail;
  if (const auto& b = f.bound()) {
    if (!(sv.real() > b->a)) {
      throw Error(ErrorKind::TailUnbounded, "Re s = " + fmt(sv.real()) + " does not exceed the growth rate a = " + fmt(b->a));
    }
    tail = b->M * std::exp((b->a - sv.real()) * horizon) / (sv.real() - b->a);
  }

  if (f.kind() == SignalKind::Table) {
    const double h = f.table_dt();
    const auto& x = f.table_samples();
    std::size_t intervals = std::min<std::size_t>(x.size() - 1, static_cast<std::size_t>(std::floor(horizon / h + 1e-9)));
    std::vector<cplx> y(intervals + 1);
    for (std::size_t i = 0; i <= intervals; ++i) y[i] = x[i] * std::exp(-sv * (h * static_cast<double>(i)));
    const cplx fine = simpson_on_grid(y, h, intervals);
    double err = 0.0;
    if (intervals >= 4) {
      const std::size_t coarse_n = intervals / 2;
      std::vector<cplx> yc(coarse_n + 1);
      for (std::size_t i = 0; i <= coarse_n; ++i) yc[i] = y[2 * i];
      const cplx fine_prefix = simpson_on_grid(y, h, 2 * coarse_n);
      err = std::abs(fine_prefix - simpson_on_grid(yc, 2 * h, coarse_n)) / 15.0;
    }
    if (err > tol * std::max(1.0, std::abs(fine))) {
      throw Error(ErrorKind::QuadratureFailure, "sample grid too coarse: error estimate " + fmt(err));
    }
    // Past the table the signal holds its last value.
    if (tail && static_cast<double>(intervals) * h < horizon) {
      *tail += std::abs(x.back()) * std::exp(-sv.real() * static_cast<double>(intervals) * h) / sv.real();
    }
    return {ComplexF(fine), tail, err};
  }

  const std::function<cplx(double)> g = [&f, sv](double t) { return f(t) * std::exp(-sv * t); };
  Simpson simpson{g};
  cplx total = 0.0;
  const double width = horizon / kInitialPanels;
  const double panel_tol = tol / kInitialPanels;
  for (int i = 0; i < kInitialPanels; ++i) {
    const double a = width * i;
    const double b = i + 1 == kInitialPanels ? horizon : width * (i + 1);
    const cplx fa = g(a);
    const cplx fb = g(b);
    const cplx fm = g(0.5 * (a + b));
    const cplx whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    total += simpson.adapt(a, b, fa, fm, fb, whole, panel_tol, 0);
  }
  return {ComplexF(total), tail, simpson.error};
}

ExpOrderCheck exp_order_check(const TimeSignal& f, const ExpOrderBound& bound, double grid_max, int grid_n) {
  if (grid_n < 2 || !(grid_max > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "exp_order_check needs grid_n >= 2 and grid_max > 0");
  }
  ExpOrderCheck out;
  for (int i = 0; i < grid_n; ++i) {
    const double t = grid_max * static_cast<double>(i) / static_cast<double>(grid_n - 1);
    const double limit = bound.M * std::exp(bound.a * t);
    if (std::abs(f(t)) > limit * (1.0 + 1e-12)) {
      out.holds_on_grid = false;
      out.witness = t;
      return out;
    }
  }
  return out;
}

}  // namespace fasim

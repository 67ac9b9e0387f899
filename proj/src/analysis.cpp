#include "fasim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace fasim {

using cplx = std::complex<double>;

FreqPoint freq_response(const TransferFunction& tf, double omega) {
  const ComplexF jw(0.0, omega);
  const cplx d = poly_eval(tf.den(), jw);
  double scale = 0.0;
  double power = 1.0;
  for (const auto& c : tf.den().coeffs()) {
    scale += std::abs(to_float(c)) * power;
    power *= std::abs(omega);
  }
  if (std::abs(d) <= 1e-12 * scale) {
    throw Error(ErrorKind::PoleOnAxis, "denominator vanishes at omega = " + std::to_string(omega));
  }
  const cplx h = cplx(poly_eval(tf.num(), jw)) / d;
  FreqPoint p;
  p.omega = omega;
  p.magnitude = std::abs(h);
  p.magnitude_db = p.magnitude > 0.0 ? 20.0 * std::log10(p.magnitude) : -HUGE_VAL;
  p.phase = std::arg(h);
  return p;
}

std::vector<FreqPoint> bode_sweep(const TransferFunction& tf, double lo, double hi, int n) {
  if (n < 1 || !(lo > 0.0) || !(hi >= lo)) {
    throw Error(ErrorKind::InvalidArgument, "sweep needs 0 < lo <= hi and n >= 1");
  }
  std::vector<FreqPoint> out;
  out.reserve(static_cast<std::size_t>(n));
  const double llo = std::log10(lo);
  const double lhi = std::log10(hi);
  for (int i = 0; i < n; ++i) {
    const double frac = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    const double omega = i == 0 ? lo : (i == n - 1 ? hi : std::pow(10.0, llo + frac * (lhi - llo)));
    out.push_back(freq_response(tf, omega));
  }
  return out;
}

std::string bode_csv(const std::vector<FreqPoint>& points) {
  std::string out = "omega_rad_s,magnitude,magnitude_db,phase_rad\n";
  char line[160];
  for (const auto& p : points) {
    std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g,%.12g\n", p.omega, p.magnitude, p.magnitude_db, p.phase);
    out += line;
  }
  return out;
}

PolesZeros poles_zeros(const TransferFunction& tf) {
  PolesZeros pz;
  if (tf.den().degree() >= 1) pz.poles = roots(tf.den());
  if (!tf.num().is_zero() && tf.num().degree() >= 1) pz.zeros = roots(tf.num());
  return pz;
}

bool is_stable(const TransferFunction& tf) {
  if (tf.den().degree() == 0) return true;
  const auto poles = roots(tf.den());
  return std::all_of(poles.begin(), poles.end(), [](const ComplexF& p) { return p.re() < 0.0; });
}

std::vector<PoleResidue> partial_fractions(const TransferFunction& tf) {
  if (!tf.strictly_proper()) {
    throw Error(ErrorKind::NotStrictlyProper, "partial fractions need deg num < deg den");
  }
  const auto poles = roots(tf.den());
  for (std::size_t i = 0; i < poles.size(); ++i) {
    for (std::size_t j = i + 1; j < poles.size(); ++j) {
      const cplx a = poles[i];
      const cplx b = poles[j];
      const double dist = std::abs(a - b);
      if (dist == 0.0 || dist <= 1e-6 * std::max(std::abs(a), std::abs(b))) {
        throw Error(ErrorKind::RepeatedPole, "poles " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
      }
    }
  }
  const Poly dden = tf.den().derivative();
  std::vector<PoleResidue> out;
  out.reserve(poles.size());
  for (const auto& p : poles) {
    const cplx r = cplx(poly_eval(tf.num(), p)) / cplx(poly_eval(dden, p));
    out.push_back({p, ComplexF(r), 1});
  }
  return out;
}

std::complex<double> time_response_complex(const TransferFunction& tf, ResponseKind kind, double t) {
  if (t < 0.0) {
    throw Error(ErrorKind::InvalidArgument, "time response needs t >= 0");
  }
  const TransferFunction target = kind == ResponseKind::Impulse ? tf : TransferFunction(tf.num(), poly_mul(tf.den(), Poly{0, 1}));
  cplx sum = 0.0;
  for (const auto& pr : partial_fractions(target)) {
    sum += cplx(pr.residue) * std::exp(cplx(pr.pole) * t);
  }
  return sum;
}

double time_response(const TransferFunction& tf, ResponseKind kind, double t) {
  return time_response_complex(tf, kind, t).real();
}

namespace {

// Controllable canonical realization of the ODE normalized to a monic
// output polynomial: x' = A x + B u, y = C x + D u.
struct Companion {
  std::vector<double> a;  // monic denominator, ascending, size n
  std::vector<double> c;  // output weights, size n
  double d = 0.0;

  std::size_t order() const { return a.size(); }

  void derivative(const std::vector<double>& x, double u, std::vector<double>& dx) const {
    const std::size_t n = order();
    for (std::size_t k = 0; k + 1 < n; ++k) dx[k] = x[k + 1];
    double acc = u;
    for (std::size_t k = 0; k < n; ++k) acc -= a[k] * x[k];
    dx[n - 1] = acc;
  }

  double output(const std::vector<double>& x, double u) const {
    double y = d * u;
    for (std::size_t k = 0; k < order(); ++k) y += c[k] * x[k];
    return y;
  }
};

Companion realize(const LinearODE& ode) {
  const Poly out(ode.out_coeffs());
  const Poly in(ode.in_coeffs());
  const std::size_t n = out.degree();
  if (in.degree() > n) {
    throw Error(ErrorKind::ImproperSystem, "input derivative order exceeds output order; not simulable");
  }
  const ExactScalar lead = out.leading();
  const ExactScalar d = in.degree() == n && !in.is_zero() ? in.coeff(n) / lead : ExactScalar(0);
  Companion comp;
  comp.d = to_float(d);
  for (std::size_t k = 0; k < n; ++k) {
    const ExactScalar ak = out.coeff(k) / lead;
    comp.a.push_back(to_float(ak));
    comp.c.push_back(to_float(in.coeff(k) / lead - d * ak));
  }
  return comp;
}

}  // namespace

SimTrace simulate_ode(const LinearODE& ode, const TimeSignal& input, double horizon, double dt) {
  if (!(dt > 0.0) || !(horizon > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "simulation needs dt > 0 and horizon > 0");
  }
  const Companion sys = realize(ode);
  SimTrace trace;
  trace.dt = dt;
  if (sys.order() > 0) {
    double fastest = 0.0;
    for (const auto& p : roots(Poly(ode.out_coeffs()))) fastest = std::max(fastest, std::abs(cplx(p)));
    trace.stiffness_warning = fastest > 0.0 && dt >= 0.1 / fastest;
  }

  const auto steps = static_cast<std::size_t>(std::llround(horizon / dt));
  trace.samples.reserve(steps + 1);
  const std::size_t n = sys.order();
  std::vector<double> x(n, 0.0), k1(n), k2(n), k3(n), k4(n), tmp(n);

  for (std::size_t i = 0;; ++i) {
    const double t = dt * static_cast<double>(i);
    const double u = input(t);
    trace.samples.push_back({t, u, sys.output(x, u)});
    if (i == steps) break;
    if (n == 0) continue;
    const double um = input(t + 0.5 * dt);
    const double ue = input(t + dt);
    sys.derivative(x, u, k1);
    for (std::size_t j = 0; j < n; ++j) tmp[j] = x[j] + 0.5 * dt * k1[j];
    sys.derivative(tmp, um, k2);
    for (std::size_t j = 0; j < n; ++j) tmp[j] = x[j] + 0.5 * dt * k2[j];
    sys.derivative(tmp, um, k3);
    for (std::size_t j = 0; j < n; ++j) tmp[j] = x[j] + dt * k3[j];
    sys.derivative(tmp, ue, k4);
    for (std::size_t j = 0; j < n; ++j) x[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
  }
  return trace;
}

NumericCheck tf_numeric_check(const TransferFunction& tf, const LinearODE& ode, const TimeSignal& input,
                              const std::vector<ComplexF>& s_samples, double horizon, double dt, double tol,
                              double threshold) {
  const double floor = tf.den().degree() == 0 ? 0.0 : abscissa(tf, 0.0);
  for (const auto& s : s_samples) {
    if (!(s.re() > floor)) {
      throw Error(ErrorKind::InvalidArgument, "sample s must satisfy Re s > " + std::to_string(floor));
    }
  }
  const SimTrace trace = simulate_ode(ode, input, horizon, dt);
  std::vector<double> vi;
  std::vector<double> vo;
  vi.reserve(trace.samples.size());
  vo.reserve(trace.samples.size());
  for (const auto& smp : trace.samples) {
    vi.push_back(smp.v_i);
    vo.push_back(smp.v_o);
  }
  const TimeSignal in_sig = TimeSignal::table(dt, std::move(vi));
  const TimeSignal out_sig = TimeSignal::table(dt, std::move(vo));

  NumericCheck out;
  out.stiffness_warning = trace.stiffness_warning;
  for (const auto& s : s_samples) {
    const cplx lo = numeric_laplace(out_sig, s, horizon, tol).value;
    const cplx li = numeric_laplace(in_sig, s, horizon, tol).value;
    const cplx ratio = lo / li;
    const double err = std::abs(cplx(tf.eval(s)) - ratio) / std::abs(ratio);
    out.rel_errors.push_back(err);
    out.max_rel_error = std::max(out.max_rel_error, std::isfinite(err) ? err : HUGE_VAL);
  }
  out.flagged = !(out.max_rel_error <= threshold);
  return out;
}

}  // namespace fasim

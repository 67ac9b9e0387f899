#pragma once

#include <string>
#include <vector>

#include "fasim/laplace.hpp"

namespace fasim {

struct FreqPoint {
  double omega = 0.0;  // rad/s
  double magnitude = 0.0;
  double magnitude_db = 0.0;
  double phase = 0.0;  // rad, in (-pi, pi]
};

FreqPoint freq_response(const TransferFunction& tf, double omega);

/// Log-spaced sweep over [lo, hi] with n points (n >= 1; n == 1 gives lo).
std::vector<FreqPoint> bode_sweep(const TransferFunction& tf, double lo, double hi, int n);

/// `omega_rad_s,magnitude,magnitude_db,phase_rad` rows in %.12g.
std::string bode_csv(const std::vector<FreqPoint>& points);

struct PolesZeros {
  std::vector<ComplexF> poles;
  std::vector<ComplexF> zeros;
};

PolesZeros poles_zeros(const TransferFunction& tf);
bool is_stable(const TransferFunction& tf);

struct PoleResidue {
  ComplexF pole;
  ComplexF residue;
  int multiplicity = 1;
};

/// Simple-pole expansion tf(s) = sum r_i / (s - p_i).
std::vector<PoleResidue> partial_fractions(const TransferFunction& tf);

enum class ResponseKind { Impulse, Step };

double time_response(const TransferFunction& tf, ResponseKind kind, double t);
/// Complex sum before taking the real part; the imaginary part measures
/// the conjugate-pairing residual.
std::complex<double> time_response_complex(const TransferFunction& tf, ResponseKind kind, double t);

struct SimSample {
  double t;
  double v_i;
  double v_o;
};

struct SimTrace {
  double dt = 0.0;
  std::vector<SimSample> samples;
  /// Set when dt >= 0.1 / |fastest pole|.
  bool stiffness_warning = false;
};

/// Classic RK4 on the controllable canonical realization with zero state.
SimTrace simulate_ode(const LinearODE& ode, const TimeSignal& input, double horizon, double dt);

struct NumericCheck {
  double max_rel_error = 0.0;
  std::vector<double> rel_errors;  // per s sample
  bool flagged = false;            // max_rel_error > threshold
  bool stiffness_warning = false;
};

/// Simulates the ODE, transforms v_o and v_i from the trace and compares
/// their ratio with tf(s). Relative error is |tf(s) - ratio| / |ratio|.
NumericCheck tf_numeric_check(const TransferFunction& tf, const LinearODE& ode, const TimeSignal& input,
                              const std::vector<ComplexF>& s_samples, double horizon, double dt, double tol,
                              double threshold);

}  // namespace fasim

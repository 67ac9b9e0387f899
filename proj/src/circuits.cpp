#include "fasim/circuits.hpp"

#include <algorithm>

namespace fasim {

const std::vector<FilterInfo>& filter_catalog() {
  using RF = ResponseFamily;
  static const std::vector<FilterInfo> catalog = {
      {FilterKind::SeriesRLC, "series-rlc", "RLC_circuit", RF::LowPass, {"R"}, {"C"}, {"L"}},
      {FilterKind::RCLowPass, "rc-low-pass", "RCLP_filter", RF::LowPass, {"R"}, {"C"}, {}},
      {FilterKind::AllPass1, "all-pass-1", "AP1_filter", RF::AllPass, {"R"}, {"C"}, {}},
      {FilterKind::AllPass2, "all-pass-2", "AP2_filter", RF::AllPass, {"R1", "R2", "R3"}, {"C1", "C2"}, {}},
      {FilterKind::SallenKeyLP, "sallen-key-lp", "SKLP_filter", RF::LowPass, {"R1", "R2", "R3", "R4"}, {"C1", "C2"}, {}},
      {FilterKind::SallenKeyHP, "sallen-key-hp", "SKHP_filter", RF::HighPass, {"R1", "R2", "R3", "R4"}, {"C1", "C2"}, {}},
      {FilterKind::MFBLowPass, "mfb-lp", "MFBLP_filter", RF::LowPass, {"R1", "R2", "R3"}, {"C1", "C2"}, {}},
      {FilterKind::MFBHighPass, "mfb-hp", "MFBHP_filter", RF::HighPass, {"R1", "R2"}, {"C1", "C2", "C3"}, {}},
      {FilterKind::MFBBandPass, "mfb-bp", "MFBBP_filter", RF::BandPass, {"R1", "R2", "R3"}, {"C1", "C2"}, {}},
      {FilterKind::BoctorNotchLP, "boctor-notch-lp", "BNLP_filter", RF::NotchLowPass, {"R1", "R2", "R3", "R4"}, {"C1", "C2"}, {}},
      {FilterKind::BoctorNotchHP, "boctor-notch-hp", "BNHP_filter", RF::NotchHighPass, {"R1", "R2", "R3", "R4"}, {"C1", "C2"}, {}},
  };
  return catalog;
}

const FilterInfo& filter_info(FilterKind kind) {
  for (const auto& f : filter_catalog()) {
    if (f.kind == kind) return f;
  }
  throw Error(ErrorKind::UnknownFilter, "unknown filter kind");
}

FilterKind parse_filter_kind(std::string_view cli_name) {
  for (const auto& f : filter_catalog()) {
    if (f.cli_name == cli_name) return f.kind;
  }
  throw Error(ErrorKind::UnknownFilter, "'" + std::string(cli_name) + "'");
}

namespace {

using X = ExactScalar;

class Components {
 public:
  explicit Components(const ComponentValues& v) : values_(v) {
    if (v.load && v.load->sign() <= 0) {
      throw Error(ErrorKind::NonPositiveComponent, "RL must be > 0");
    }
  }

  X R(std::string_view name) const { return get(values_.resistors, name, "resistor"); }
  X C(std::string_view name) const { return get(values_.capacitors, name, "capacitor"); }
  X L(std::string_view name) const { return get(values_.inductors, name, "inductor"); }

 private:
  static X get(const std::map<std::string, X, std::less<>>& m, std::string_view name, std::string_view what) {
    const auto it = m.find(name);
    if (it == m.end()) {
      throw Error(ErrorKind::MissingComponent, std::string(what) + " " + std::string(name));
    }
    if (it->second.sign() <= 0) {
      throw Error(ErrorKind::NonPositiveComponent, std::string(name) + " must be > 0");
    }
    return it->second;
  }

  const ComponentValues& values_;
};

// Biquad with monic denominator s^2 + b1 s + b0.
TransferFunction biquad(Poly num, const X& b1, const X& b0) { return TransferFunction(std::move(num), Poly{b0, b1, X(1)}); }

TransferFunction derive(FilterKind kind, const Components& c) {
  const X one(1);
  switch (kind) {
    case FilterKind::SeriesRLC: {
      // Output across C: 1 / (L C s^2 + R C s + 1).
      const X lc = c.L("L") * c.C("C");
      return biquad(Poly{one / lc}, c.R("R") / c.L("L"), one / lc);
    }
    case FilterKind::RCLowPass: {
      const X wc = one / (c.R("R") * c.C("C"));
      return TransferFunction(Poly{wc}, Poly{wc, one});
    }
    case FilterKind::AllPass1: {
      // (1 - sRC) / (1 + sRC), lagging first-order section.
      const X wc = one / (c.R("R") * c.C("C"));
      return TransferFunction(Poly{wc, -one}, Poly{wc, one});
    }
    case FilterKind::AllPass2: {
      // 1 - 2 * BP_normalized on the MFB band-pass core.
      const X c1 = c.C("C1"), c2 = c.C("C2"), r1 = c.R("R1"), r2 = c.R("R2"), r3 = c.R("R3");
      const X b1 = (c1 + c2) / (r3 * c1 * c2);
      const X b0 = (r1 + r2) / (r1 * r2 * r3 * c1 * c2);
      return biquad(Poly{b0, -b1, one}, b1, b0);
    }
    case FilterKind::SallenKeyLP: {
      const X r1 = c.R("R1"), r2 = c.R("R2"), c1 = c.C("C1"), c2 = c.C("C2");
      const X k = (c.R("R3") + c.R("R4")) / c.R("R4");
      const X w0sq = one / (r1 * r2 * c1 * c2);
      const X b1 = one / (r1 * c1) + one / (r2 * c1) + (one - k) / (r2 * c2);
      return biquad(Poly{k * w0sq}, b1, w0sq);
    }
    case FilterKind::SallenKeyHP: {
      const X r1 = c.R("R1"), r2 = c.R("R2"), c1 = c.C("C1"), c2 = c.C("C2");
      const X k = (c.R("R3") + c.R("R4")) / c.R("R4");
      const X w0sq = one / (r1 * r2 * c1 * c2);
      const X b1 = one / (r2 * c1) + one / (r2 * c2) + (one - k) / (r1 * c1);
      return biquad(Poly{X(0), X(0), k}, b1, w0sq);
    }
    case FilterKind::MFBLowPass: {
      const X r1 = c.R("R1"), r2 = c.R("R2"), r3 = c.R("R3"), c1 = c.C("C1"), c2 = c.C("C2");
      const X b0 = one / (r2 * r3 * c1 * c2);
      const X b1 = (one / r1 + one / r2 + one / r3) / c1;
      return biquad(Poly{-one / (r1 * r3 * c1 * c2)}, b1, b0);
    }
    case FilterKind::MFBHighPass: {
      const X r1 = c.R("R1"), r2 = c.R("R2"), c1 = c.C("C1"), c2 = c.C("C2"), c3 = c.C("C3");
      const X b0 = one / (r1 * r2 * c2 * c3);
      const X b1 = (c1 + c2 + c3) / (r2 * c2 * c3);
      return biquad(Poly{X(0), X(0), -c1 / c2}, b1, b0);
    }
    case FilterKind::MFBBandPass: {
      const X r1 = c.R("R1"), r2 = c.R("R2"), r3 = c.R("R3"), c1 = c.C("C1"), c2 = c.C("C2");
      const X b1 = (c1 + c2) / (r3 * c1 * c2);
      const X b0 = (r1 + r2) / (r1 * r2 * r3 * c1 * c2);
      return biquad(Poly{X(0), -one / (r1 * c1)}, b1, b0);
    }
    case FilterKind::BoctorNotchLP:
    case FilterKind::BoctorNotchHP: {
      // Pole pair from the R1/R2/C1/C2 section; notch pair set by the
      // R3/R4 ratio above (low-pass) or below (high-pass) the pole pair.
      const X r1 = c.R("R1"), r2 = c.R("R2"), c1 = c.C("C1"), c2 = c.C("C2");
      const X ratio = (c.R("R3") + c.R("R4")) / c.R("R4");
      const X wp2 = one / (r1 * r2 * c1 * c2);
      const X b1 = one / (r1 * c1) + one / (r2 * c1);
      if (kind == FilterKind::BoctorNotchLP) {
        const X wz2 = wp2 * ratio;  // notch above the poles; unit DC gain
        const X k = one / ratio;
        return biquad(Poly{k * wz2, X(0), k}, b1, wp2);
      }
      const X wz2 = wp2 / ratio;  // notch below the poles; unit HF gain
      return biquad(Poly{wz2, X(0), one}, b1, wp2);
    }
  }
  throw Error(ErrorKind::UnknownFilter, "unhandled filter kind");
}

}  // namespace

CircuitModel build_tf(FilterKind kind, const ComponentValues& values) {
  const Components comps(values);
  TransferFunction tf = derive(kind, comps);
  LinearODE ode = tf_to_ode(tf).ode;
  return {std::move(tf), std::move(ode)};
}

ExactScalar dc_gain(FilterKind kind, const ComponentValues& values) {
  const TransferFunction tf = build_tf(kind, values).tf;
  const ExactScalar d0 = tf.den().coeffs()[0];
  if (d0.is_zero()) {
    throw Error(ErrorKind::PoleAtZero, "transfer function has a pole at s = 0");
  }
  return tf.num().coeff(0) / d0;
}

}  // namespace fasim

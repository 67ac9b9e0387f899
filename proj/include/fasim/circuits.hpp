#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fasim/laplace.hpp"

namespace fasim {

enum class FilterKind {
  SeriesRLC,
  RCLowPass,
  AllPass1,
  AllPass2,
  SallenKeyLP,
  SallenKeyHP,
  MFBLowPass,
  MFBHighPass,
  MFBBandPass,
  BoctorNotchLP,
  BoctorNotchHP,
};

/// Response family used by the catalog property checks.
enum class ResponseFamily { LowPass, HighPass, BandPass, AllPass, NotchLowPass, NotchHighPass };

struct FilterInfo {
  FilterKind kind;
  std::string_view cli_name;      // e.g. "sallen-key-lp"
  std::string_view default_name;  // prover identifier stem, e.g. "SKLP_filter"
  ResponseFamily family;
  std::vector<std::string_view> resistors;
  std::vector<std::string_view> capacitors;
  std::vector<std::string_view> inductors;
};

const std::vector<FilterInfo>& filter_catalog();
const FilterInfo& filter_info(FilterKind kind);
/// Throws UnknownFilter.
FilterKind parse_filter_kind(std::string_view cli_name);

/// Component values in SI units. R_L is accepted but does not enter the
/// ideal op-amp transfer functions.
struct ComponentValues {
  std::map<std::string, ExactScalar, std::less<>> resistors;
  std::map<std::string, ExactScalar, std::less<>> capacitors;
  std::map<std::string, ExactScalar, std::less<>> inductors;
  std::optional<ExactScalar> load;
};

struct CircuitModel {
  TransferFunction tf;
  LinearODE ode;
};

/// Exact transfer function with monic denominator, plus the matching ODE.
CircuitModel build_tf(FilterKind kind, const ComponentValues& values);

/// num(0) / den(0); throws PoleAtZero.
ExactScalar dc_gain(FilterKind kind, const ComponentValues& values);

}  // namespace fasim

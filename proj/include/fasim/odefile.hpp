#pragma once

#include <string>
#include <string_view>

#include "fasim/laplace.hpp"

namespace fasim {

/// JSON differential-equation file:
///
///   {
///     "format": "fasim.ode/1",
///     "in_coeffs": ["7812500000.48828"],
///     "out_coeffs": ["3906249999.75586", "62500.0000039063", "1"]
///   }
///
/// Lists are ascending by derivative order. Coefficients are decimal or
/// p/q strings; JSON integers are accepted too. An optional
/// "initial_conditions" array must be all zero.
LinearODE parse_ode_file(std::string_view text);

/// Canonical form of the above; byte-identical for equal ODEs.
std::string print_ode_file(const LinearODE& ode);

}  // namespace fasim

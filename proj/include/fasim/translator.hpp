#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fasim/poly.hpp"

namespace fasim {

enum class LiteralClass { Unclassified, Integer, Decimal, Fraction };

/// One transfer-function coefficient with the text it came from.
struct Coefficient {
  ExactScalar value;
  std::string source;         // verbatim XML text
  std::string standard_form;  // set by optimize_ir
  LiteralClass literal = LiteralClass::Unclassified;

  friend bool operator==(const Coefficient&, const Coefficient&) = default;
};

/// Intermediate representation between the XML reader and the code
/// generator. Lists are ascending by power of s.
struct CoeffIR {
  std::string name;
  std::vector<Coefficient> num;
  std::vector<Coefficient> den;

  std::size_t num_degree() const { return num.size() - 1; }
  std::size_t den_degree() const { return den.size() - 1; }
  TransferFunction transfer_function() const;

  friend bool operator==(const CoeffIR&, const CoeffIR&) = default;
};

/// Same name and exact coefficient values; provenance ignored.
bool same_values(const CoeffIR& a, const CoeffIR& b);

/// Replaces characters outside [A-Za-z0-9_] with '_' and prefixes a
/// leading digit with "f_".
std::string sanitize_identifier(std::string_view raw);

CoeffIR make_ir(std::string_view name, const TransferFunction& tf);

/// Reads a `<fasim version="1">` document. Throws MalformedXML,
/// SchemaViolation or MalformedNumber (with element path).
CoeffIR parse_xml(std::string_view document);

/// Expands scientific notation and classifies each literal; idempotent.
CoeffIR optimize_ir(CoeffIR ir);

/// Canonical document: 2-space indent, LF, attributes in schema order,
/// coefficients in optimized standard form.
std::string print_xml(const CoeffIR& ir);

enum class ScriptKind { Definitions, TheoremTf, TheoremOde };

struct HOLScript {
  ScriptKind kind;
  std::string text;
};

enum class TheoremDirection { TfFromOde, OdeFromTf };

HOLScript gen_definitions(const CoeffIR& ir);
HOLScript gen_theorem(const CoeffIR& ir, TheoremDirection direction);

/// Polynomial in s, highest power first: `s^2 + Cx (#a) * s + Cx (#b)`.
std::string hol_polynomial(const std::vector<Coefficient>& ascending);

/// Header comment, definitions and the requested theorems joined by blank
/// lines; ends with a single LF.
std::string render_script_file(const CoeffIR& ir, bool theorem_tf, bool theorem_ode);

}  // namespace fasim

#include "fasim/translator.hpp"

#include <algorithm>

#include "fasim/xml.hpp"

namespace fasim {

TransferFunction CoeffIR::transfer_function() const {
  auto values = [](const std::vector<Coefficient>& cs) {
    std::vector<ExactScalar> out;
    out.reserve(cs.size());
    for (const auto& c : cs) out.push_back(c.value);
    return Poly(std::move(out));
  };
  return TransferFunction(values(num), values(den));
}

bool same_values(const CoeffIR& a, const CoeffIR& b) {
  auto eq = [](const std::vector<Coefficient>& x, const std::vector<Coefficient>& y) {
    return std::equal(x.begin(), x.end(), y.begin(), y.end(), [](const Coefficient& p, const Coefficient& q) { return p.value == q.value; });
  };
  return a.name == b.name && eq(a.num, b.num) && eq(a.den, b.den);
}

std::string sanitize_identifier(std::string_view raw) {
  std::string out;
  out.reserve(raw.size() + 2);
  for (char c : raw) {
    const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
    out += ok ? c : '_';
  }
  if (out.empty()) return "tf";
  if (out.front() >= '0' && out.front() <= '9') out.insert(0, "f_");
  return out;
}

CoeffIR make_ir(std::string_view name, const TransferFunction& tf) {
  auto coeffs = [](const Poly& p) {
    std::vector<Coefficient> out;
    for (const auto& v : p.coeffs()) out.push_back({v, format_coefficient(v), "", LiteralClass::Unclassified});
    return out;
  };
  return optimize_ir(CoeffIR{sanitize_identifier(name), coeffs(tf.num()), coeffs(tf.den())});
}

// ---------------------------------------------------------------------------
// Parser + IR generator

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& why) {
  throw Error(ErrorKind::SchemaViolation, path + ": " + why);
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

void only_attributes(const xml::Element& el, const std::string& path, std::initializer_list<std::string_view> allowed) {
  for (const auto& [k, v] : el.attributes) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) schema(path, "unexpected attribute '" + k + "'");
  }
}

const std::string& required_attribute(const xml::Element& el, const std::string& path, std::string_view key) {
  const std::string* v = el.attribute(key);
  if (v == nullptr) schema(path, "missing attribute '" + std::string(key) + "'");
  return *v;
}

std::vector<Coefficient> coefficient_list(const xml::Element& el, const std::string& path) {
  only_attributes(el, path, {"order"});
  if (required_attribute(el, path, "order") != "desc") schema(path, "order must be \"desc\"");
  if (!blank(el.text)) schema(path, "unexpected text");
  if (el.children.empty()) schema(path, "needs at least one <coeff>");
  std::vector<Coefficient> desc;
  for (std::size_t i = 0; i < el.children.size(); ++i) {
    const xml::Element& c = el.children[i];
    const std::string cpath = path + "/coeff[" + std::to_string(i + 1) + "]";
    if (c.name != "coeff") schema(path + "/" + c.name, "unexpected element");
    only_attributes(c, cpath, {});
    if (!c.children.empty()) schema(cpath, "<coeff> must hold text only");
    const std::string_view text = trim(c.text);
    try {
      desc.push_back({parse_coefficient(text), std::string(text), "", LiteralClass::Unclassified});
    } catch (const Error& e) {
      throw Error(ErrorKind::MalformedNumber, cpath + ": '" + std::string(text) + "'");
    }
  }
  if (desc.size() > 1 && desc.front().value.is_zero()) schema(path + "/coeff[1]", "leading coefficient is zero");
  std::reverse(desc.begin(), desc.end());
  return desc;
}

}  // namespace

CoeffIR parse_xml(std::string_view document) {
  const xml::Element root = xml::parse(document);
  const std::string rpath = "/" + root.name;
  if (root.name != "fasim") schema(rpath, "root element must be <fasim>");
  only_attributes(root, rpath, {"version"});
  if (required_attribute(root, rpath, "version") != "1") schema(rpath, "unsupported version");
  if (!blank(root.text)) schema(rpath, "unexpected text");
  if (root.children.size() != 1 || root.children[0].name != "transfer_function") {
    schema(rpath, "expected exactly one <transfer_function>");
  }

  const xml::Element& tf = root.children[0];
  const std::string tpath = rpath + "/transfer_function";
  only_attributes(tf, tpath, {"name"});
  CoeffIR ir;
  ir.name = sanitize_identifier(required_attribute(tf, tpath, "name"));
  if (!blank(tf.text)) schema(tpath, "unexpected text");

  bool have_num = false;
  bool have_den = false;
  for (const auto& child : tf.children) {
    const std::string cpath = tpath + "/" + child.name;
    if (child.name == "numerator") {
      if (have_num) schema(cpath, "duplicated element");
      ir.num = coefficient_list(child, cpath);
      have_num = true;
    } else if (child.name == "denominator") {
      if (have_den) schema(cpath, "duplicated element");
      ir.den = coefficient_list(child, cpath);
      have_den = true;
    } else {
      schema(cpath, "unexpected element");
    }
  }
  if (!have_num) schema(tpath + "/numerator", "missing element");
  if (!have_den) schema(tpath + "/denominator", "missing element");
  if (ir.den.back().value.is_zero()) schema(tpath + "/denominator/coeff[1]", "denominator is zero");
  return ir;
}

// ---------------------------------------------------------------------------
// Optimizer

CoeffIR optimize_ir(CoeffIR ir) {
  auto pass = [](std::vector<Coefficient>& cs) {
    for (auto& c : cs) {
      c.standard_form = format_coefficient(c.value);
      if (c.value.is_integer()) {
        c.literal = LiteralClass::Integer;
      } else if (has_terminating_decimal(c.value)) {
        c.literal = LiteralClass::Decimal;
      } else {
        c.literal = LiteralClass::Fraction;
      }
    }
  };
  pass(ir.num);
  pass(ir.den);
  return ir;
}

std::string print_xml(const CoeffIR& ir) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<fasim version=\"1\">\n";
  out += "  <transfer_function name=\"" + xml::escape(ir.name) + "\">\n";
  auto list = [&out](std::string_view tag, const std::vector<Coefficient>& ascending) {
    out += "    <" + std::string(tag) + " order=\"desc\">\n";
    for (auto it = ascending.rbegin(); it != ascending.rend(); ++it) {
      out += "      <coeff>" + format_coefficient(it->value) + "</coeff>\n";
    }
    out += "    </" + std::string(tag) + ">\n";
  };
  list("numerator", ir.num);
  list("denominator", ir.den);
  out += "  </transfer_function>\n";
  out += "</fasim>\n";
  return out;
}

// ---------------------------------------------------------------------------
// Code generator

namespace {

std::string cx(const ExactScalar& v) { return "Cx (" + format_hol_literal(v) + ")"; }

std::string hol_list(const std::vector<Coefficient>& ascending) {
  std::string out = "[";
  for (std::size_t i = 0; i < ascending.size(); ++i) {
    if (i != 0) out += "; ";
    out += cx(ascending[i].value);
  }
  return out + "]";
}

bool has_fraction(const CoeffIR& ir) {
  auto any = [](const std::vector<Coefficient>& cs) {
    return std::any_of(cs.begin(), cs.end(), [](const Coefficient& c) { return c.literal == LiteralClass::Fraction; });
  };
  return any(ir.num) || any(ir.den);
}

std::string grouped(const std::string& poly) {
  const bool compound = poly.find(" + ") != std::string::npos || poly.find(" * ") != std::string::npos;
  return compound ? "(" + poly + ")" : poly;
}

std::string definition_refs(const std::string& n) { return "[inlst_" + n + "; outlst_" + n + "; diff_eq_" + n + "]"; }

std::string zero_ic(std::size_t order) {
  return order == 0 ? std::string("T") : "zero_init_conditions " + std::to_string(order - 1) + " V0";
}

}  // namespace

std::string hol_polynomial(const std::vector<Coefficient>& ascending) {
  std::vector<std::string> terms;
  for (std::size_t k = ascending.size(); k-- > 0;) {
    const ExactScalar& c = ascending[k].value;
    if (c.is_zero()) continue;
    if (k == 0) {
      terms.push_back(cx(c));
      continue;
    }
    const std::string power = k == 1 ? "s" : "s^" + std::to_string(k);
    terms.push_back(c == ExactScalar(1) ? power : cx(c) + " * " + power);
  }
  if (terms.empty()) return "Cx (&0)";
  std::string out = terms.front();
  for (std::size_t i = 1; i < terms.size(); ++i) out += " + " + terms[i];
  return out;
}

HOLScript gen_definitions(const CoeffIR& raw) {
  const CoeffIR ir = optimize_ir(raw);
  const std::string& n = ir.name;
  std::string text;
  if (has_fraction(ir)) {
    text += "(* Coefficients without a terminating decimal expansion are written as exact fractions &p / &q. *)\n\n";
  }
  text += "let inlst_" + n + " = new_definition\n `inlst_" + n + " = " + hol_list(ir.num) + "`;;\n\n";
  text += "let outlst_" + n + " = new_definition\n `outlst_" + n + " = " + hol_list(ir.den) + "`;;\n\n";
  text += "let diff_eq_" + n + " = new_definition\n `diff_eq_" + n + " VI V0 t <=>\n";
  text += "    diff_eq_n_order " + std::to_string(ir.den_degree()) + " outlst_" + n + " V0 t =\n";
  text += "    diff_eq_n_order " + std::to_string(ir.num_degree()) + " inlst_" + n + " VI t`;;";
  return {ScriptKind::Definitions, text};
}

HOLScript gen_theorem(const CoeffIR& raw, TheoremDirection direction) {
  const CoeffIR ir = optimize_ir(raw);
  const std::string& n = ir.name;
  const std::string m_ord = std::to_string(ir.num_degree());
  const std::string n_ord = std::to_string(ir.den_degree());
  const std::string den = hol_polynomial(ir.den);
  const std::string ratio = grouped(hol_polynomial(ir.num)) + " / " + grouped(den);

  std::string t;
  if (direction == TheoremDirection::TfFromOde) {
    t += "(* Transfer function of " + n + " from its differential equation.\n";
    t += "   A1-A2 differentiability, A3 zero initial conditions, A4 nonzero input transform,\n";
    t += "   A5 nonzero denominator, A6-A7 transform existence, A8 differential equation. *)\n";
    t += "let TRANS_FUN_" + n + " = prove\n";
    t += " (`!VI V0 s.\n";
    t += "     (!t. differentiable_higher_deriv " + m_ord + " VI t) /\\\n";
    t += "     (!t. differentiable_higher_deriv " + n_ord + " V0 t) /\\\n";
    t += "     " + zero_ic(ir.den_degree()) + " /\\\n";
    t += "     ~(laplace_transform VI s = Cx (&0)) /\\\n";
    t += "     ~(" + den + " = Cx (&0)) /\\\n";
    t += "     laplace_exists_higher_deriv " + m_ord + " VI s /\\\n";
    t += "     laplace_exists_higher_deriv " + n_ord + " V0 s /\\\n";
    t += "     (!t. diff_eq_" + n + " VI V0 t)\n";
    t += "     ==> laplace_transform V0 s / laplace_transform VI s =\n";
    t += "         " + ratio + "`,\n";
    t += "  DIFF_EQ_2_TRANS_FUN_TAC " + definition_refs(n) + ");;";
    return {ScriptKind::TheoremTf, t};
  }
  t += "(* Differential equation of " + n + " from its transfer function.\n";
  t += "   A1-A2 differentiability, A3 zero initial conditions, A4 nonzero denominator,\n";
  t += "   A5 nonzero input transform, A6 positive abscissa r, A7-A8 transform existence,\n";
  t += "   A9 transfer function. *)\n";
  t += "let DIFF_EQ_" + n + " = prove\n";
  t += " (`!VI V0 r.\n";
  t += "     (!t. differentiable_higher_deriv " + m_ord + " VI t) /\\\n";
  t += "     (!t. differentiable_higher_deriv " + n_ord + " V0 t) /\\\n";
  t += "     " + zero_ic(ir.den_degree()) + " /\\\n";
  t += "     (!s. Re r <= Re s ==> ~(" + den + " = Cx (&0))) /\\\n";
  t += "     (!s. Re r <= Re s ==> ~(laplace_transform VI s = Cx (&0))) /\\\n";
  t += "     &0 < Re r /\\\n";
  t += "     (!s. Re r <= Re s ==> laplace_exists_higher_deriv " + m_ord + " VI s) /\\\n";
  t += "     (!s. Re r <= Re s ==> laplace_exists_higher_deriv " + n_ord + " V0 s) /\\\n";
  t += "     (!s. Re r <= Re s\n";
  t += "          ==> laplace_transform V0 s / laplace_transform VI s =\n";
  t += "              " + ratio + ")\n";
  t += "     ==> (!t. &0 <= drop t ==> diff_eq_" + n + " VI V0 t)`,\n";
  t += "  TRANS_FUN_2_DIFF_EQ_TAC " + definition_refs(n) + ");;";
  return {ScriptKind::TheoremOde, t};
}

std::string render_script_file(const CoeffIR& ir, bool theorem_tf, bool theorem_ode) {
  std::string out = "(* " + ir.name + ": numerator degree " + std::to_string(ir.num_degree()) + ", denominator degree " +
                    std::to_string(ir.den_degree()) + ". Generated by fasim. *)\n\n";
  out += gen_definitions(ir).text;
  if (theorem_tf) out += "\n\n" + gen_theorem(ir, TheoremDirection::TfFromOde).text;
  if (theorem_ode) out += "\n\n" + gen_theorem(ir, TheoremDirection::OdeFromTf).text;
  return out + "\n";
}

}  // namespace fasim

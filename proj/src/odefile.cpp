#include "fasim/odefile.hpp"

#include <nlohmann/json.hpp>

namespace fasim {

namespace {

[[noreturn]] void bad(const std::string& why) { throw Error(ErrorKind::MalformedODEFile, why); }

ExactScalar coefficient(const nlohmann::json& v, const std::string& path) {
  if (v.is_number_integer()) {
    return v.is_number_unsigned() ? parse_decimal(std::to_string(v.get<unsigned long long>())) : ExactScalar(v.get<long long>());
  }
  if (!v.is_string()) bad(path + ": expected a decimal string or integer");
  try {
    return parse_coefficient(v.get<std::string>());
  } catch (const Error& e) {
    bad(path + ": " + e.what());
  }
}

std::vector<ExactScalar> coefficient_list(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) bad(std::string("missing \"") + key + "\"");
  const auto& arr = doc.at(key);
  if (!arr.is_array() || arr.empty()) bad(std::string("\"") + key + "\" must be a non-empty array");
  std::vector<ExactScalar> out;
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(coefficient(arr[i], std::string(key) + "[" + std::to_string(i) + "]"));
  return out;
}

std::string json_list(const std::vector<ExactScalar>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i != 0) out += ", ";
    out += "\"" + format_coefficient(xs[i]) + "\"";
  }
  return out + "]";
}

}  // namespace

LinearODE parse_ode_file(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    bad(e.what());
  }
  if (!doc.is_object()) bad("top level must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "format" && key != "in_coeffs" && key != "out_coeffs" && key != "initial_conditions") bad("unknown key \"" + key + "\"");
  }
  if (doc.contains("format") && doc["format"] != "fasim.ode/1") bad("unsupported format");

  auto in = coefficient_list(doc, "in_coeffs");
  auto out = coefficient_list(doc, "out_coeffs");
  if (doc.contains("initial_conditions")) {
    const auto& ic = doc["initial_conditions"];
    if (!ic.is_array()) bad("\"initial_conditions\" must be an array");
    for (std::size_t i = 0; i < ic.size(); ++i) {
      if (!coefficient(ic[i], "initial_conditions[" + std::to_string(i) + "]").is_zero()) {
        throw Error(ErrorKind::NonzeroInitialConditions, "initial_conditions[" + std::to_string(i) + "] is not zero");
      }
    }
  }
  return LinearODE(std::move(in), std::move(out));
}

std::string print_ode_file(const LinearODE& ode) {
  return "{\n  \"format\": \"fasim.ode/1\",\n  \"in_coeffs\": " + json_list(ode.in_coeffs()) + ",\n  \"out_coeffs\": " +
         json_list(ode.out_coeffs()) + "\n}\n";
}

}  // namespace fasim

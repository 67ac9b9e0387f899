#include "fasim/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>

#include "fasim/analysis.hpp"
#include "fasim/circuits.hpp"
#include "fasim/odefile.hpp"
#include "fasim/translator.hpp"

namespace fasim {

namespace {

constexpr double kDefaultQuadTol = 1e-10;
constexpr double kNumericThreshold = 1e-2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IOError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::IOError, "cannot write " + path);
  f << text;
  if (!f.flush()) throw Error(ErrorKind::IOError, "cannot write " + path);
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string fmt(std::complex<double> z) {
  if (z.imag() == 0.0) return fmt(z.real());
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.12g %c %.12gj", z.real(), z.imag() < 0 ? '-' : '+', std::abs(z.imag()));
  return buf;
}

double quad_tol() {
  if (const char* env = std::getenv("FASIM_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorKind::InvalidArgument, "FASIM_TOL must be a positive number");
    }
    return v;
  }
  return kDefaultQuadTol;
}

void positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, std::string(what) + " must be positive");
}

// ---------------------------------------------------------------------------
// model

struct ModelArgs {
  std::string kind;
  std::map<std::string, std::string> values;
  std::string output;
  std::string name;
  std::string ode_out;
};

int do_model(const ModelArgs& a, std::ostream& out) {
  const FilterInfo& info = filter_info(parse_filter_kind(a.kind));
  ComponentValues cv;
  for (const auto& [key, text] : a.values) {
    const ExactScalar v = parse_decimal(text);
    auto listed = [&key](const std::vector<std::string_view>& names) { return std::find(names.begin(), names.end(), key) != names.end(); };
    if (key == "RL") {
      cv.load = v;
    } else if (listed(info.resistors)) {
      cv.resistors[key] = v;
    } else if (listed(info.capacitors)) {
      cv.capacitors[key] = v;
    } else if (listed(info.inductors)) {
      cv.inductors[key] = v;
    } else {
      throw Error(ErrorKind::InvalidArgument, "--" + key + " is not a component of " + std::string(info.cli_name));
    }
  }
  const CircuitModel model = build_tf(info.kind, cv);
  const std::string name = a.name.empty() ? std::string(info.default_name) : a.name;
  write_output(a.output, print_xml(make_ir(name, model.tf)), out);
  if (!a.ode_out.empty()) write_output(a.ode_out, print_ode_file(model.ode), out);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// translate

int do_translate(const std::string& input, const std::string& output, const std::string& theorem, std::ostream& out) {
  const CoeffIR ir = optimize_ir(parse_xml(read_file(input)));
  const bool tf = theorem == "tf" || theorem == "both";
  const bool ode = theorem == "ode" || theorem == "both";
  write_output(output, render_script_file(ir, tf, ode), out);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string input;
  std::string ode_path;
  std::string theorem = "tf";
  std::string report = "text";
  bool strict = false;
  bool skip_numeric = false;
  double margin = kDefaultAbscissaMargin;
};

Obligation numeric_obligation(const TransferFunction& tf, const LinearODE& ode, double tol, bool skip, bool strict) {
  Obligation ob{"N1", "simulated L[V0]/L[VI] matches the transfer function", ObligationStatus::EmittedAssumption, ""};
  auto not_run = [&](const std::string& why) {
    ob.status = strict ? ObligationStatus::Failed : ObligationStatus::EmittedAssumption;
    ob.detail = why + (strict ? " (required by --strict)" : "");
    return ob;
  };
  if (skip) return not_run("numeric check skipped");

  // Samples scale with the fastest pole so the check is dimensionless.
  double w = 1.0;
  for (const auto& p : poles_zeros(tf).poles) w = std::max(w, std::abs(std::complex<double>(p)));
  w = std::max(w, abscissa(tf));
  const std::vector<ComplexF> samples{ComplexF(1.6 * w, 0.0), ComplexF(3.2 * w, 0.0)};
  const double horizon = 100.0 / (1.6 * w);
  const double dt = horizon / 1e5;
  try {
    const NumericCheck nc = tf_numeric_check(tf, ode, TimeSignal::exponential(-0.16 * w), samples, horizon, dt, tol, kNumericThreshold);
    ob.status = nc.flagged ? ObligationStatus::Failed : ObligationStatus::CheckedNumeric;
    ob.detail = "max relative error " + fmt(nc.max_rel_error) + " at s = {" + fmt(1.6 * w) + ", " + fmt(3.2 * w) + "}, threshold " +
                fmt(kNumericThreshold) + (nc.stiffness_warning ? "; stiffness warning" : "");
  } catch (const Error& e) {
    return not_run(std::string("numeric check not applicable: ") + e.what());
  }
  return ob;
}

std::string theorem_label(TheoremKind k) {
  return k == TheoremKind::TfFromOde ? "transfer function from differential equation" : "differential equation from transfer function";
}

std::string text_report(const std::string& name, const ObligationReport& r) {
  std::string s = "verify " + name + "\n";
  s += "theorem: " + theorem_label(r.theorem) + "\n";
  s += "sigma0: " + fmt(r.sigma0) + "\n";
  if (r.scale) s += "scale: " + format_coefficient(*r.scale) + "\n";
  std::map<ObligationStatus, int> counts;
  for (const auto& ob : r.obligations) {
    char line[64];
    std::snprintf(line, sizeof line, "%-6s %-18s ", ob.id.c_str(), std::string(to_string(ob.status)).c_str());
    s += line + ob.description + "\n";
    if (!ob.detail.empty()) s += "       " + ob.detail + "\n";
    ++counts[ob.status];
  }
  s += std::string("result: ") + (r.any_failed() ? "FAILED" : "OK") + " (" + std::to_string(counts[ObligationStatus::VerifiedExact]) +
       " verified, " + std::to_string(counts[ObligationStatus::CheckedNumeric]) + " checked, " +
       std::to_string(counts[ObligationStatus::EmittedAssumption]) + " assumed, " + std::to_string(counts[ObligationStatus::Failed]) +
       " failed)\n";
  return s;
}

std::string structured_report(const std::string& name, const ObligationReport& r) {
  nlohmann::ordered_json j;
  j["schema"] = "fasim.report/1";
  j["name"] = name;
  j["theorem"] = r.theorem == TheoremKind::TfFromOde ? "tf_from_ode" : "ode_from_tf";
  j["sigma0"] = r.sigma0;
  j["scale"] = r.scale ? nlohmann::ordered_json(format_coefficient(*r.scale)) : nlohmann::ordered_json(nullptr);
  j["obligations"] = nlohmann::ordered_json::array();
  for (const auto& ob : r.obligations) {
    j["obligations"].push_back({{"id", ob.id}, {"description", ob.description}, {"status", std::string(to_string(ob.status))}, {"detail", ob.detail}});
  }
  j["result"] = r.any_failed() ? "failed" : "ok";
  return j.dump(2) + "\n";
}

int do_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const double tol = quad_tol();
  const CoeffIR ir = optimize_ir(parse_xml(read_file(a.input)));
  const TransferFunction tf = ir.transfer_function();
  const std::optional<LinearODE> given = a.ode_path.empty() ? std::nullopt : std::optional(parse_ode_file(read_file(a.ode_path)));

  ObligationReport report;
  std::optional<LinearODE> ode = given;
  if (a.theorem == "ode") {
    const OdeDerivation d = tf_to_ode(tf, a.margin);
    report = d.report;
    if (given) {
      const ObligationReport eq = check_equivalence(*given, tf, a.margin);
      *report.find("A-alg") = *eq.find("A-alg");
      report.scale = eq.scale;
    } else {
      ode = d.ode;
    }
  } else {
    if (!ode) ode = tf_to_ode(tf, a.margin).ode;
    report = check_equivalence(*ode, tf, a.margin);
  }
  check_denominator_region(report, tf);
  report.obligations.push_back(numeric_obligation(tf, *ode, tol, a.skip_numeric, a.strict));

  out << (a.report == "structured" ? structured_report(ir.name, report) : text_report(ir.name, report));
  for (const auto& ob : report.obligations) {
    if (ob.status == ObligationStatus::Failed) err << "fasim: " << ob.id << " Failed " << ob.detail << "\n";
  }
  return report.any_failed() ? kExitVerifyFailed : kExitOk;
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeArgs {
  std::string input;
  std::string sweep;
  std::string bode;
  std::string step;
  double step_horizon = 0.0;
  int step_samples = 1000;
};


int do_analyze(const AnalyzeArgs& a, std::ostream& out) {
  const CoeffIR ir = optimize_ir(parse_xml(read_file(a.input)));
  const TransferFunction tf = ir.transfer_function();
  if (!a.bode.empty() && a.sweep.empty()) throw Error(ErrorKind::InvalidArgument, "--bode requires --sweep");

  std::vector<FreqPoint> points;
  if (!a.sweep.empty()) {
    std::istringstream ss(a.sweep);
    double lo = 0.0;
    double hi = 0.0;
    int n = 0;
    char c1 = 0;
    char c2 = 0;
    if (!(ss >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':' || ss.peek() != EOF) {
      throw Error(ErrorKind::InvalidArgument, "--sweep expects lo:hi:n, got '" + a.sweep + "'");
    }
    points = bode_sweep(tf, lo, hi, n);
  }

  const PolesZeros pz = poles_zeros(tf);
  auto list = [](const std::vector<ComplexF>& zs) {
    if (zs.empty()) return std::string("(none)");
    std::string s;
    for (const auto& z : zs) s += (s.empty() ? "" : ", ") + fmt(std::complex<double>(z));
    return s;
  };
  std::string summary = "analyze " + ir.name + "\n";
  summary += "poles: " + list(pz.poles) + "\n";
  summary += "zeros: " + list(pz.zeros) + "\n";
  summary += std::string("stable: ") + (is_stable(tf) ? "yes" : "no") + "\n";
  const ExactScalar d0 = tf.den().coeff(0);
  summary += "dc gain: " + (d0.is_zero() ? std::string("undefined (pole at s = 0)") : format_coefficient(tf.num().coeff(0) / d0)) + "\n";
  if (!points.empty()) {
    summary += "sweep: " + std::to_string(points.size()) + " points from " + fmt(points.front().omega) + " to " + fmt(points.back().omega) +
               " rad/s\n";
  }
  out << summary;
  if (!a.bode.empty()) write_output(a.bode, bode_csv(points), out);

  if (!a.step.empty()) {
    double horizon = a.step_horizon;
    if (horizon == 0.0) {
      // A few time constants of the slowest pole.
      double slow = 0.0;
      for (const auto& p : pz.poles) {
        const double re = std::abs(std::complex<double>(p).real());
        if (re > 0.0) slow = slow == 0.0 ? re : std::min(slow, re);
      }
      horizon = slow > 0.0 ? 10.0 / slow : 10.0;
    }
    positive(horizon, "--step-horizon");
    if (a.step_samples < 2) throw Error(ErrorKind::InvalidArgument, "--step-samples must be at least 2");
    std::string csv = "t,step\n";
    for (int i = 0; i < a.step_samples; ++i) {
      const double t = horizon * i / (a.step_samples - 1);
      csv += fmt(t) + "," + fmt(time_response(tf, ResponseKind::Step, t)) + "\n";
    }
    write_output(a.step, csv, out);
  }
  return kExitOk;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IOError:
    case ErrorKind::MalformedXML:
    case ErrorKind::SchemaViolation:
    case ErrorKind::MalformedNumber:
    case ErrorKind::EmptyInput:
    case ErrorKind::MalformedODEFile:
    case ErrorKind::NonzeroInitialConditions:
    case ErrorKind::DegenerateODE:
    case ErrorKind::ZeroDenominator:
      return kExitIO;
    case ErrorKind::InvalidArgument:
    case ErrorKind::UnknownFilter:
    case ErrorKind::MissingComponent:
    case ErrorKind::NonPositiveComponent:
      return kExitUsage;
    default:
      return kExitVerifyFailed;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coefficient extraction, proof-script generation and checking for linear analog filters", "fasim"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  ModelArgs margs;
  auto* model = app.add_subcommand("model", "Build a catalog circuit and write its coefficient XML");
  std::string kinds;
  for (const auto& info : filter_catalog()) kinds += (kinds.empty() ? "" : ", ") + std::string(info.cli_name);
  model->add_option("kind", margs.kind, "Circuit kind: " + kinds)->required();
  static const char* const components[] = {"R", "R1", "R2", "R3", "R4", "C", "C1", "C2", "C3", "L", "RL"};
  for (const char* c : components) {
    model->add_option_function<std::string>(std::string("--") + c, [&margs, c](const std::string& v) { margs.values[c] = v; },
                                            std::string("Component value (SI units); ") + (std::string(c) == "RL" ? "load, validated only" : c));
  }
  model->add_option("-o,--output", margs.output, "Output XML file (default stdout)");
  model->add_option("--name", margs.name, "Transfer-function name (default per circuit)");
  model->add_option("--ode-out", margs.ode_out, "Also write the differential-equation file");

  std::string t_input;
  std::string t_output;
  std::string t_theorem = "both";
  auto* translate = app.add_subcommand("translate", "Translate coefficient XML into a proof script");
  translate->add_option("input", t_input, "Coefficient XML file")->required();
  translate->add_option("-o,--output", t_output, "Output .ml file (default stdout)");
  translate->add_option("--theorem", t_theorem, "Theorems to emit")->check(CLI::IsMember({"tf", "ode", "both", "none"}));

  VerifyArgs vargs;
  auto* verify = app.add_subcommand("verify", "Check the ODE/transfer-function equivalence and print the obligation report");
  verify->add_option("input", vargs.input, "Coefficient XML file")->required();
  verify->add_option("--ode", vargs.ode_path, "Differential-equation file (default: derived from the XML)");
  verify->add_option("--theorem", vargs.theorem, "Direction of the obligation ledger")->check(CLI::IsMember({"tf", "ode"}));
  verify->add_option("--report", vargs.report, "Report format")->check(CLI::IsMember({"text", "structured"}));
  verify->add_flag("--strict", vargs.strict, "Treat a missing numeric check as a failure");
  verify->add_flag("--skip-numeric", vargs.skip_numeric, "Do not run the simulation cross-check");
  verify->add_option("--margin", vargs.margin, "Abscissa margin added to the largest pole real part")->check(CLI::PositiveNumber);

  AnalyzeArgs aargs;
  auto* analyze = app.add_subcommand("analyze", "Poles, zeros, stability, Bode sweep and step response");
  analyze->add_option("input", aargs.input, "Coefficient XML file")->required();
  analyze->add_option("--sweep", aargs.sweep, "Log-spaced sweep lo:hi:n in rad/s");
  analyze->add_option("--bode", aargs.bode, "Bode CSV output file");
  analyze->add_option("--step", aargs.step, "Step-response CSV output file");
  analyze->add_option("--step-horizon", aargs.step_horizon, "Step-response end time in seconds");
  analyze->add_option("--step-samples", aargs.step_samples, "Step-response sample count");

  std::vector<std::string> storage{"fasim"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*model) return do_model(margs, out);
    if (*translate) return do_translate(t_input, t_output, t_theorem, out);
    if (*verify) return do_verify(vargs, out, err);
    return do_analyze(aargs, out);
  } catch (const Error& e) {
    err << "fasim: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
}

}  // namespace fasim

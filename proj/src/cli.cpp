#include "ssflab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ssflab/boundary.hpp"
#include "ssflab/koplienko.hpp"
#include "ssflab/krein.hpp"
#include "ssflab/matrix_io.hpp"
#include "ssflab/realize.hpp"
#include "ssflab/suites.hpp"
#include "ssflab/unitary.hpp"

namespace ssflab::cli {

using nlohmann::json;

Complex parse_complex(const std::string& text) {
  const auto bad = [&text] { return InvalidInput("'" + text + "': expected a complex literal RE+IMi"); };
  if (text.empty()) throw bad();
  const auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used != s.size()) throw bad();
    return v;
  };
  if (text.back() != 'i') return {number(text), 0.0};
  const std::string body = text.substr(0, text.size() - 1);
  // The sign that separates the parts: the last + or - not opening the text or an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) {
    if (body.empty() || body == "+" || body == "-") return {0.0, body == "-" ? -1.0 : 1.0};
    return {0.0, number(body)};
  }
  const std::string im = body.substr(split);
  return {number(body.substr(0, split)), im.size() == 1 ? (im == "-" ? -1.0 : 1.0) : number(im)};
}

namespace {

struct Emitter {
  std::ostream& out;
  bool all_passed = true;

  void line(const json& j) { out << j.dump() << '\n'; }

  void report(const std::string& command, const VerificationReport& r, const json& extra = json::object()) {
    json j = r.to_json();
    j["command"] = command;
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    line(j);
    all_passed = all_passed && r.passed;
  }

  int exit_code() const { return all_passed ? kExitPass : kExitFailure; }
};

json function_json(const PiecewiseFunction& f) {
  json j = target_to_json(f);
  j["segments"] = f.segment_count();
  return j;
}

void write_csv(const std::string& filename, const std::string& header, const std::vector<std::vector<double>>& rows) {
  std::ofstream csv(filename);
  if (!csv) throw InvalidInput(filename + ": cannot open for writing");
  csv << header << '\n' << std::setprecision(17);
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) csv << (k ? "," : "") << row[k];
    csv << '\n';
  }
}

void export_function(const std::string& filename, const PiecewiseFunction& f) {
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < f.segment_count(); ++k) {
    rows.push_back({f.breakpoints()[k], f.breakpoints()[k + 1], f.pieces()[k].slope, f.pieces()[k].intercept});
  }
  write_csv(filename, "lo,hi,slope,intercept", rows);
}

OperatorPair load_pair(const std::string& filename) {
  const OperatorDocument doc = parse_operator_document(read_json_file(filename));
  return OperatorPair(doc.a, doc.b);
}

std::vector<double> parse_radii(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      std::ostringstream os;
      os << "--radii[" << out.size() << "]: '" << item << "' is not a number";
      throw InvalidInput(os.str());
    }
    out.push_back(v);
  }
  if (out.empty()) throw InvalidInput("--radii: expected a comma separated list");
  return out;
}

std::string help_footer() {
  std::ostringstream os;
  os << "Default tolerances for verify --suite:\n";
  for (const std::string& s : suite_names()) os << "  " << std::left << std::setw(12) << s << default_tolerance(s) << '\n';
  os << "Other checks: ko trace 1e-8, det2 1e-9, realize 2^-m int target, modified 1e-7,\n"
        "  unitary moment bound 1e-12, boundary circle-line 1e-5.\n"
        "Exit status: 0 all checks pass, 1 a check failed, 2 malformed input.\n"
        "SSF_LAB_THREADS caps the number of worker threads.";
  return os.str();
}

int cmd_kr(const std::string& pair_file, const std::string& csv, Emitter& e) {
  const OperatorPair pair = load_pair(pair_file);
  const PiecewiseFunction xi = krein_ssf(pair);
  json j = function_json(xi);
  j["command"] = "kr";
  j["function"] = "xi";
  e.line(j);
  e.report("kr", identity_report("int xi = Tr X", "krein-mass", xi.integral(), pair.trace_perturbation(), 1e-10,
                                 std::max(1.0, pair.trace_norm())));
  if (!csv.empty()) export_function(csv, xi);
  return e.exit_code();
}

int cmd_ko(const std::string& pair_file, const std::string& csv, Emitter& e) {
  const OperatorPair pair = load_pair(pair_file);
  const PiecewiseFunction eta = koplienko_ssf(pair);
  json j = function_json(eta);
  j["command"] = "ko";
  j["function"] = "eta";
  e.line(j);
  const double hs = pair.hilbert_schmidt_norm();
  e.report("ko", identity_report("int eta = |X|_2^2 / 2", "koplienko-mass", eta.integral(), 0.5 * hs * hs, 1e-10));
  e.report("ko", lower_bound_report("eta >= 0", "koplienko-positivity", eta.min_value(), 0.0, 1e-10 * pair.scale()));
  if (!csv.empty()) export_function(csv, eta);
  return e.exit_code();
}

int cmd_det(const std::string& pair_file, const std::string& z_text, Emitter& e) {
  const OperatorPair pair = load_pair(pair_file);
  const Complex z = parse_complex(z_text);
  require_nonreal(z, "--z");
  e.line({{"command", "det"},
          {"z", complex_to_json(z)},
          {"det", complex_to_json(perturbation_determinant(pair, z))},
          {"det2", complex_to_json(det2(pair, z))}});
  e.report("det", identity_report("det((A-z)(B-z)^-1) = exp(int xi/(l-z))", "perturbation-determinant",
                                  perturbation_determinant(pair, z), herglotz_exponential(krein_ssf(pair), z), 1e-9));
  e.report("det", det2_identity_check(pair, z));
  return e.exit_code();
}

int cmd_verify(const std::string& suite, int seeds, std::optional<double> tol, std::uint64_t seed, Emitter& e) {
  const std::vector<SuiteCase> cases = run_suite(suite, seed, seeds, tol, thread_limit());
  for (const SuiteCase& c : cases) {
    if (!c.error.empty()) {
      e.line({{"command", "verify"}, {"suite", suite}, {"case", c.case_id}, {"error", c.error}, {"pass", false}});
      e.all_passed = false;
      continue;
    }
    bool pass = true;
    json checks = json::array();
    for (const VerificationReport& r : c.reports) {
      checks.push_back(r.to_json());
      pass = pass && r.passed;
    }
    e.line({{"command", "verify"}, {"suite", suite}, {"seed", seed}, {"case", c.case_id}, {"pass", pass},
            {"checks", checks}});
    e.all_passed = e.all_passed && pass;
  }
  return e.exit_code();
}

int cmd_realize(const std::string& target_file, int rounds, const std::string& pair_out, const std::string& csv,
                Emitter& e) {
  const PiecewiseFunction target = parse_target(read_json_file(target_file));
  if (target.empty()) throw InvalidInput("$.breakpoints: target has no segments");
  const SquareDecomposition d = greedy_square_decomposition(target, rounds);
  const OperatorPair pair = build_block_pair(d.intervals);
  const PiecewiseFunction eta = koplienko_ssf(pair);
  const PiecewiseFunction sum = interval_sum(d.intervals);
  e.line({{"command", "realize"},
          {"rounds", rounds},
          {"intervals", d.intervals.size()},
          {"dimension", pair.dim()},
          {"residual_integrals", d.residual_integrals}});
  e.report("realize", realization_check(target, pair, rounds));
  e.report("realize", absolute_report("eta(realized pair) = sum |I| chi_I", "koplienko-block-sum",
                                      max_midpoint_difference(eta, sum), 0.0, 1e-10));
  if (!pair_out.empty()) {
    std::ofstream f(pair_out);
    if (!f) throw InvalidInput(pair_out + ": cannot open for writing");
    f << pair_to_json(pair).dump() << '\n';
  }
  if (!csv.empty()) export_function(csv, eta);
  return e.exit_code();
}

int cmd_unitary(const std::string& pair_file, int n_max, Emitter& e) {
  const json doc = read_json_file(pair_file);
  if (!doc.is_object() || !doc.contains("A") || !doc.contains("B")) throw InvalidInput("$: expected {\"A\": ..., \"B\": ...}");
  const ComplexMatrix a = parse_matrix(doc["A"], "$.A");
  const ComplexMatrix b = parse_matrix(doc["B"], "$.B");
  const MomentSequence m = unitary_moments(a, b, n_max);
  json c = json::array();
  for (int n = 0; n <= n_max; ++n) c.push_back(complex_to_json(m.at(n)));
  e.line({{"command", "unitary"}, {"n_max", n_max}, {"moments", c}, {"bound", m.bound}});
  e.report("unitary", cyclicity_gate(a, b, std::min(n_max, 6)));
  e.report("unitary", moment_bound_check(m));
  if (n_max >= 32) {
    const DecayDiagnostic d = moment_decay_diagnostic(a, b, n_max);
    e.line({{"command", "unitary"},
            {"diagnostic", "moment-decay"},
            {"binding", false},
            {"trend", d.trend},
            {"trace_bound_holds", d.trace_bound_holds}});
  }
  return e.exit_code();
}

int cmd_modified(const std::string& pair_file, double shift, Emitter& e) {
  const OperatorPair pair = load_pair(pair_file);
  const ModifiedKoSSF m = modified_kossf(pair.a(), pair.b(), shift);
  e.line({{"command", "modified"},
          {"shift", shift},
          {"breakpoints", m.breakpoints},
          {"pieces", m.pieces},
          {"tail", m.tail}});
  const double below = m(m.breakpoints.front() - 1.0);
  e.report("modified", absolute_report("eta~ = 0 below the spectrum", "modified-koplienko-support", below, 0.0, 0.0));
  for (int k = 2; k <= 4; ++k) {
    e.report("modified", modified_trace_check(pair.a(), pair.b(), shift, Polynomial::monomial(k)), {{"degree", k}});
  }
  return e.exit_code();
}

int cmd_boundary(int terms, double lambda, double angle, const std::string& radii_text, bool control,
                 const std::string& csv, Emitter& e) {
  const std::vector<double> radii = parse_radii(radii_text);
  const LacunarySeries series = lacunary_series(terms);
  double shift = 0.0;
  ProbeDensity density;
  if (control) {
    density = indicator_density(-0.5, 0.5);
  } else {
    shift = circle_density(series).shift;
    density = transplanted_density(series, shift);
  }
  const ProbeResult probe = nontangential_probe(density, lambda, angle, radii);
  std::vector<std::vector<double>> rows;
  for (const ProbePoint& p : probe.points) {
    e.line({{"command", "boundary"},
            {"r", p.radius},
            {"z", complex_to_json(p.z)},
            {"D", complex_to_json(p.value)},
            {"error_estimate", p.error_estimate},
            {"converged", p.converged}});
    rows.push_back({p.radius, p.value.real(), p.value.imag()});
  }
  e.line({{"command", "boundary"},
          {"density", control ? "indicator" : "lacunary"},
          {"shift", shift},
          {"decade_oscillation", probe.decade_oscillation},
          {"all_converged", probe.all_converged}});
  e.all_passed = e.all_passed && probe.all_converged;
  if (!control) {
    const Complex i(0.0, 1.0);
    for (std::size_t k = 0; k < std::min<std::size_t>(5, probe.points.size()); ++k) {
      const Complex w = probe.points[k].z;
      e.report("boundary", circle_line_identity(series, shift, (1.0 + i * w) / (1.0 - i * w)));
    }
  }
  if (!csv.empty()) write_csv(csv, "r,re_D,im_D", rows);
  return e.exit_code();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral shift function laboratory"};
  app.footer(help_footer());
  app.require_subcommand(1);

  std::string pair_file, csv, z_text = "0+1i", suite, target_file, pair_out, radii_text = "0.1,0.01,0.001";
  int seeds = 50, rounds = 12, n_max = 16, terms = 12;
  double tol = 0.0, shift = 0.0, lambda = 0.0, angle = std::acos(-1.0) / 2.0;
  std::uint64_t seed = 20240601;
  bool control = false;

  CLI::App* kr = app.add_subcommand("kr", "Krein spectral shift function of a pair");
  kr->add_option("--pair", pair_file, "Operator document with A and B")->required();
  kr->add_option("--csv", csv, "Export the function as CSV");
  CLI::App* ko = app.add_subcommand("ko", "Koplienko spectral shift function of a pair");
  ko->add_option("--pair", pair_file, "Operator document with A and B")->required();
  ko->add_option("--csv", csv, "Export the function as CSV");
  CLI::App* det = app.add_subcommand("det", "Perturbation determinant and det2 at z");
  det->add_option("--pair", pair_file, "Operator document with A and B")->required();
  det->add_option("--z", z_text, "Nonreal spectral parameter RE+IMi");
  CLI::App* verify = app.add_subcommand("verify", "Seeded verification suite");
  verify->add_option("--suite", suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--seeds", seeds, "Number of seeded cases")->check(CLI::NonNegativeNumber);
  CLI::Option* tol_opt = verify->add_option("--tol", tol, "Override the suite tolerance");
  verify->add_option("--seed", seed, "Base seed (64-bit)");
  CLI::App* realize = app.add_subcommand("realize", "Block pair whose Koplienko function approximates a target");
  realize->add_option("--target", target_file, "Target document")->required();
  realize->add_option("--rounds", rounds, "Halving rounds m")->check(CLI::Range(0, 30));
  realize->add_option("--pair-out", pair_out, "Write the realized pair");
  realize->add_option("--csv", csv, "Export the realized eta as CSV");
  CLI::App* unitary = app.add_subcommand("unitary", "Koplienko moments of a unitary pair");
  unitary->add_option("--pair", pair_file, "Document with unitary A and B")->required();
  unitary->add_option("--nmax", n_max, "Largest moment index")->check(CLI::PositiveNumber);
  CLI::App* modified = app.add_subcommand("modified", "Modified Koplienko function for the resolvent substitution");
  modified->add_option("--pair", pair_file, "Operator document with A and B")->required();
  modified->add_option("--shift", shift, "E with A + E, B + E positive definite")->required();
  CLI::App* boundary = app.add_subcommand("boundary", "Nontangential probe of the Cauchy-type integral");
  boundary->add_option("--terms", terms, "Lacunary terms K")->check(CLI::Range(0, 40));
  boundary->add_option("--lambda", lambda, "Boundary point");
  boundary->add_option("--angle", angle, "Approach angle in radians")->check(CLI::Range(0.0, std::acos(-1.0)));
  boundary->add_option("--radii", radii_text, "Decreasing radii R1,R2,...");
  boundary->add_flag("--control", control, "Use the indicator of (-1/2, 1/2) instead");
  boundary->add_option("--csv", csv, "Export (r, Re D, Im D) as CSV");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kExitPass : kExitInput;
  }

  Emitter e{out};
  try {
    if (*kr) return cmd_kr(pair_file, csv, e);
    if (*ko) return cmd_ko(pair_file, csv, e);
    if (*det) return cmd_det(pair_file, z_text, e);
    if (*verify) {
      return cmd_verify(suite, seeds, *tol_opt ? std::optional<double>(tol) : std::nullopt, seed, e);
    }
    if (*realize) return cmd_realize(target_file, rounds, pair_out, csv, e);
    if (*unitary) return cmd_unitary(pair_file, n_max, e);
    if (*modified) return cmd_modified(pair_file, shift, e);
    if (*boundary) return cmd_boundary(terms, lambda, angle, radii_text, control, csv, e);
  } catch (const InvalidInput& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitInput;
  } catch (const DomainError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitInput;
  } catch (const NumericalFailure& ex) {
    err << "numerical failure: " << ex.what() << '\n';
    return kExitFailure;
  }
  return kExitInput;
}

}  // namespace ssflab::cli

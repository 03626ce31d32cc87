// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "conespec/boundary_spectrum.hpp"
#include "conespec/cone_profile.hpp"
#include "conespec/errors.hpp"
#include "conespec/link_spectrum.hpp"
#include "conespec/particular_solution.hpp"
#include "conespec/serialize.hpp"
#include "conespec/sl_engine.hpp"
#include "conespec/sphere_modes.hpp"
#include "conespec/weiss_energy.hpp"

namespace conespec::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    int line = 1;
    int column = 1;
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(what + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + e.what(),
                     line, column);
  }
}

std::string csv_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// CSV outputs start with comment lines carrying the version and config.
std::string csv_header(const SolverConfig& cfg, const std::string& command) {
  return "# " + std::string(version()) + "\n# command: " + command + "\n# config: " + to_json(cfg).dump() +
         "\n";
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<int> parse_dims(const std::string& s) {
  std::vector<int> dims;
  try {
    const auto dots = s.find("..");
    if (dots != std::string::npos) {
      const int lo = std::stoi(s.substr(0, dots));
      const int hi = std::stoi(s.substr(dots + 2));
      for (int d = lo; d <= hi; ++d) dims.push_back(d);
    } else {
      std::stringstream ss(s);
      std::string item;
      while (std::getline(ss, item, ',')) dims.push_back(std::stoi(item));
    }
  } catch (const std::logic_error&) {
    throw ValidationError("--dims: expected 'a..b' or a comma list, got '" + s + "'");
  }
  if (dims.empty()) throw ValidationError("--dims: no dimensions in '" + s + "'");
  std::sort(dims.begin(), dims.end());
  dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
  return dims;
}

Parity parse_parity(const json& v) {
  const std::string s = v.get<std::string>();
  if (s == "even") return Parity::Even;
  if (s == "odd") return Parity::Odd;
  throw ValidationError("parity must be \"even\" or \"odd\", got \"" + s + "\"");
}

SourceSpec parse_modes(const json& j, double beta) {
  const json& list = j.is_object() ? j.at("modes") : j;
  if (!list.is_array() || list.empty()) throw ValidationError("modes: expected a non-empty array");
  SourceSpec src;
  src.beta = beta;
  for (const auto& m : list) {
    src.modes.push_back({m.at("ell").get<int>(), parse_parity(m.at("parity")), m.at("amplitude").get<double>()});
  }
  return src;
}

AxisymField parse_field(const json& j, int d, const SolverConfig& cfg) {
  const std::string kind = j.value("kind", "cone");
  if (kind == "half_plane") return AxisymField::half_plane(d, cfg.grid_n);
  if (kind != "cone") throw ValidationError("field: kind must be \"cone\" or \"half_plane\"");
  const ConeProfile p = solve_profile(d, cfg);
  AxisymField u = j.contains("rho_exponent")
                      ? AxisymField::cone_with_radial(p, RadialFactor::power(1.0, j.at("rho_exponent").get<double>()))
                      : AxisymField::cone(p);
  if (j.contains("dirichlet_modes")) {
    for (const auto& m : j.at("dirichlet_modes")) u.add_dirichlet_mode(m.at("k").get<int>(), m.at("coeff").get<double>(), cfg);
  }
  return u;
}

struct Context {
  std::ostream& out;
  SolverConfig cfg;
  std::string out_path;
  bool timestamp = false;

  void emit_text(const std::string& text) const {
    if (out_path.empty()) {
      out << text;
      return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw ValidationError("cannot write '" + out_path + "'");
    f << text;
  }

  void emit(const std::string& command, json result) const {
    json doc = envelope(command, cfg, std::move(result));
    if (timestamp) doc["timestamp"] = utc_now();
    emit_text(doc.dump(2) + "\n");
  }
};

}  // namespace

SolverConfig parse_config(const std::string& text) {
  if (std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); })) return {};
  const json j = parse_json(text, "config");
  try {
    return config_from_json(j);
  } catch (const InvalidInput& e) {
    throw ValidationError(e.what());
  }
}

SolverConfig load_config(const std::string& path) { return parse_config(read_file(path)); }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral analysis of axially symmetric one-phase cones", "conespec"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_path;
  bool timestamp = false;
  app.add_option("--config", config_path, "JSON config file (fallback: $CONESPEC_CONFIG)");
  app.add_option("--out", out_path, "write the report here instead of stdout");
  app.add_flag("--timestamp", timestamp, "embed the UTC time in JSON reports");
  app.set_version_flag("--version", version());

  int dim = 0;
  auto dim_opt = [&](CLI::App* sub) { sub->add_option("--dim", dim, "ambient dimension d")->required(); };

  auto* cone = app.add_subcommand("cone", "cone profile g, theta0 and H");
  dim_opt(cone);
  std::optional<int> grid;
  cone->add_option("--grid", grid, "band grid intervals (overrides grid_n)");

  auto* modes = app.add_subcommand("modes", "sphere harmonic eigenvalues (CSV)");
  dim_opt(modes);
  double mu_max = 0.0;
  modes->add_option("--mu-max", mu_max, "largest eigenvalue")->required();

  auto* sl = app.add_subcommand("sl", "one Sturm-Liouville eigenpair on the band");
  dim_opt(sl);
  double mu = 0.0;
  std::string bc = "robin";
  int k = 1;
  std::optional<double> halfwidth;
  bool samples = false;
  sl->add_option("--mu", mu, "sphere eigenvalue mu")->required();
  sl->add_option("--bc", bc, "robin | dirichlet")->check(CLI::IsMember({"robin", "dirichlet"}));
  sl->add_option("--k", k, "eigenvalue index (1-based)")->check(CLI::PositiveNumber);
  sl->add_option("--halfwidth", halfwidth, "band half-width for dirichlet (default theta0)");
  sl->add_flag("--samples", samples, "include grid and eigenfunction samples");

  auto* spectrum = app.add_subcommand("spectrum", "interior Robin spectrum of the link");
  dim_opt(spectrum);
  double lambda_max = 0.0;
  std::string csv_path;
  spectrum->add_option("--lambda-max", lambda_max, "upper eigenvalue bound")->required();
  spectrum->add_option("--csv", csv_path, "also write the eigenvalue table as CSV");

  auto* verify = app.add_subcommand("verify", "strong integrability verdict (exit 1 when false)");
  dim_opt(verify);

  auto* bspec = app.add_subcommand("boundary-spectrum", "boundary Robin spectrum (CSV)");
  dim_opt(bspec);
  int count = 8;
  bspec->add_option("--count", count, "number of modes")->check(CLI::PositiveNumber);

  auto* particular = app.add_subcommand("particular", "particular solution for boundary data");
  dim_opt(particular);
  double beta = 0.0;
  std::string modes_path;
  int per_degree = 8;
  particular->add_option("--beta", beta, "boundary decay exponent")->required();
  particular->add_option("--modes", modes_path, "JSON list of {ell, parity, amplitude}")->required();
  particular->add_option("--per-degree", per_degree, "interior modes per sphere degree")->check(CLI::PositiveNumber);

  auto* weiss_cmd = app.add_subcommand("weiss", "Weiss energy and its derivative identity");
  dim_opt(weiss_cmd);
  std::string field_path;
  std::vector<double> radii;
  weiss_cmd->add_option("--field", field_path, "JSON field description")->required();
  weiss_cmd->add_option("--radii", radii, "comma separated radii")->required()->delimiter(',');

  auto* crit = app.add_subcommand("criticality", "aperture derivative of the energy functional");
  dim_opt(crit);
  double eps = 1e-4;
  std::string norm = "energy";
  crit->add_option("--eps", eps, "aperture step")->check(CLI::PositiveNumber);
  crit->add_option("--normalization", norm, "energy | literal")->check(CLI::IsMember({"energy", "literal"}));

  auto* report = app.add_subcommand("report", "integrability table over dimensions (CSV)");
  std::string dims_spec;
  report->add_option("--dims", dims_spec, "range a..b or comma list")->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    Context ctx{out, {}, out_path, timestamp};
    if (!config_path.empty()) {
      ctx.cfg = load_config(config_path);
    } else if (const char* env = std::getenv("CONESPEC_CONFIG"); env != nullptr && *env != '\0') {
      ctx.cfg = load_config(env);
    }
    SolverConfig& cfg = ctx.cfg;

    if (cone->parsed()) {
      if (grid) cfg.grid_n = *grid;
      cfg.validate();
      const ConeProfile p = solve_profile(dim, cfg);
      json r = to_json(p);
      r["diagnostics"] = to_json(diagnose(p));
      ctx.emit("cone", r);
    } else if (modes->parsed()) {
      std::string text = csv_header(cfg, "modes") + "ell,mu,multiplicity\n";
      for (const auto& m : modes_up_to(dim, mu_max)) {
        text += std::to_string(m.ell) + "," + csv_number(m.mu) + "," + std::to_string(m.multiplicity) + "\n";
      }
      ctx.emit_text(text);
    } else if (sl->parsed()) {
      if (bc == "robin" && halfwidth) throw ValidationError("--halfwidth applies to --bc dirichlet only");
      const ConeProfile p = solve_profile(dim, cfg);
      const SLSpec spec = bc == "robin" ? SLSpec::robin(p, mu)
                                        : SLSpec::dirichlet(dim, halfwidth.value_or(p.theta0), mu, p.intervals());
      json r = to_json(eigen_k(spec, k, cfg), samples);
      r["bc"] = bc;
      r["mu"] = mu;
      r["halfwidth"] = spec.halfwidth;
      ctx.emit("sl", r);
    } else if (spectrum->parsed()) {
      const ConeProfile p = solve_profile(dim, cfg);
      const LinkSpectrum s = assemble(p, lambda_max, cfg);
      json ev = json::array();
      for (const auto& e : s.eigenvalues) ev.push_back(to_json(e));
      ctx.emit("spectrum", {{"dim", dim},
                            {"lambda_max", lambda_max},
                            {"eigenvalues", ev},
                            {"decay_exponents", decay_exponents(s.eigenvalues)}});
      if (!csv_path.empty()) {
        std::ofstream f(csv_path, std::ios::binary);
        if (!f) throw ValidationError("cannot write '" + csv_path + "'");
        f << csv_header(cfg, "spectrum") << "lambda,multiplicity,gamma_plus,gamma_minus,complex\n";
        for (const auto& e : s.eigenvalues) {
          f << csv_number(e.lambda) << ',' << e.multiplicity << ',' << csv_number(e.homogeneity.gamma_plus) << ','
            << csv_number(e.homogeneity.gamma_minus) << ',' << (e.homogeneity.is_complex ? "true" : "false")
            << '\n';
        }
      }
    } else if (verify->parsed()) {
      const IntegrabilityReport r = verify_strong_integrability(solve_profile(dim, cfg), cfg);
      ctx.emit("verify", to_json(r));
      return r.verdict ? kOk : kVerdictFalse;
    } else if (bspec->parsed()) {
      const ConeProfile p = solve_profile(dim, cfg);
      std::string text = csv_header(cfg, "boundary-spectrum") + "ell,parity,ell_k,resonant\n";
      for (const auto& m : boundary_modes(p, count, cfg)) {
        text += std::to_string(m.ell) + "," + to_string(m.parity) + "," + csv_number(m.ell_k) + "," +
                (m.in_resonance ? "true" : "false") + "\n";
      }
      ctx.emit_text(text);
    } else if (particular->parsed()) {
      SourceSpec src;
      try {
        src = parse_modes(parse_json(read_file(modes_path), modes_path), beta);
      } catch (const json::exception& e) {
        throw ValidationError(modes_path + ": " + e.what());
      }
      const ConeProfile p = solve_profile(dim, cfg);
      std::vector<BoundaryMode> bmodes;
      for (const auto& m : src.modes) bmodes.push_back(boundary_mode(p, m.ell, m.parity, cfg));
      const BuildResult b = build_up(src, p, bmodes, cfg, per_degree);
      json r = to_json(b.report);
      r["dim"] = dim;
      ctx.emit("particular", r);
    } else if (weiss_cmd->parsed()) {
      AxisymField u;
      try {
        u = parse_field(parse_json(read_file(field_path), field_path), dim, cfg);
      } catch (const json::exception& e) {
        throw ValidationError(field_path + ": " + e.what());
      }
      json r = to_json(weiss_report(u, radii, cfg));
      r["dim"] = dim;
      ctx.emit("weiss", r);
    } else if (crit->parsed()) {
      const FNormalization fn = norm == "energy" ? FNormalization::Energy : FNormalization::Literal;
      const ConeProfile p = solve_profile(dim, cfg);
      json r = to_json(F_criticality(p, eps, cfg, fn));
      r["dim"] = dim;
      r["eps"] = eps;
      r["normalization"] = norm;
      r["measure_identity"] = to_json(link_measure_identity(p, cfg));
      ctx.emit("criticality", r);
    } else if (report->parsed()) {
      std::string text = csv_header(cfg, "report") + "d,theta0,H,lambda1,stable,kernel0,kernel_d1,gap\n";
      for (int d : parse_dims(dims_spec)) {
        const ConeProfile p = solve_profile(d, cfg);
        const IntegrabilityReport r = verify_strong_integrability(p, cfg);
        text += std::to_string(d) + "," + csv_number(p.theta0) + "," + csv_number(p.H) + "," +
                csv_number(r.lambda1) + "," + (r.strictly_stable ? "true" : "false") + "," +
                std::to_string(r.dim_kernel0) + "," + std::to_string(r.dim_kernel_d_minus_1) + "," +
                csv_number(r.gap_above) + "\n";
      }
      ctx.emit_text(text);
    }
    return kOk;
  } catch (const ParseError& e) {
    err << "conespec: " << e.what() << "\n";
    return kUsage;
  } catch (const ValidationError& e) {
    err << "conespec: invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidInput& e) {
    err << "conespec: invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericalError& e) {
    err << "conespec: numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::exception& e) {
    err << "conespec: " << e.what() << "\n";
    return kNumerical;
  }
}

}  // namespace conespec::cli

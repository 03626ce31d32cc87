// SPDX-License-Identifier: Apache-2.0
#include "conespec/serialize.hpp"

#include <set>
#include <string>

#include "conespec/errors.hpp"

namespace conespec {

json to_json(const SolverConfig& c) {
  return {{"grid_n", c.grid_n},         {"lam_tol", c.lam_tol},   {"bc_tol", c.bc_tol},
          {"ode_tol", c.ode_tol},       {"res_tol", c.res_tol},   {"cluster_tol", c.cluster_tol},
          {"quad_tol", c.quad_tol},     {"root_tol", c.root_tol}, {"fn_tol", c.fn_tol},
          {"r0", c.r0},                 {"r_max", c.r_max},       {"seed", c.seed}};
}

namespace {

template <class T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  if constexpr (std::is_same_v<T, int>) {
    if (!v.is_number_integer()) throw InvalidInput(std::string("config: ") + key + " must be an integer");
    const auto x = v.get<long long>();
    if (x < INT32_MIN || x > INT32_MAX) throw InvalidInput(std::string("config: ") + key + " out of range");
    out = static_cast<int>(x);
  } else if constexpr (std::is_same_v<T, std::uint64_t>) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
      throw InvalidInput(std::string("config: ") + key + " must be a non-negative integer");
    }
    out = v.get<std::uint64_t>();
  } else {
    if (!v.is_number()) throw InvalidInput(std::string("config: ") + key + " must be a number");
    out = v.get<double>();
  }
}

}  // namespace

SolverConfig config_from_json(const json& j) {
  SolverConfig c;
  if (j.is_null()) return c;
  if (!j.is_object()) throw InvalidInput("config: top level must be a JSON object");
  static const std::set<std::string> known = {"grid_n",   "lam_tol",  "bc_tol", "ode_tol",
                                              "res_tol",  "cluster_tol", "quad_tol", "root_tol",
                                              "fn_tol",   "r0",       "r_max",  "seed"};
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) throw InvalidInput("config: unknown key '" + item.key() + "'");
  }
  read(j, "grid_n", c.grid_n);
  read(j, "lam_tol", c.lam_tol);
  read(j, "bc_tol", c.bc_tol);
  read(j, "ode_tol", c.ode_tol);
  read(j, "res_tol", c.res_tol);
  read(j, "cluster_tol", c.cluster_tol);
  read(j, "quad_tol", c.quad_tol);
  read(j, "root_tol", c.root_tol);
  read(j, "fn_tol", c.fn_tol);
  read(j, "r0", c.r0);
  read(j, "r_max", c.r_max);
  read(j, "seed", c.seed);
  c.validate();
  return c;
}

json to_json(const ConeProfile& p, bool samples) {
  json j = {{"dim", p.dim}, {"theta0", p.theta0}, {"H", p.H}, {"norm_c", p.norm_c},
            {"grid_n", p.intervals()}};
  if (samples) {
    j["grid"] = p.grid;
    j["g"] = p.g;
    j["g_prime"] = p.g_prime;
  }
  return j;
}

json to_json(const ProfileDiagnostics& d) {
  return {{"symmetry_error", d.symmetry_error},   {"center_slope", d.center_slope},
          {"left_slope_error", d.left_slope_error}, {"right_slope_error", d.right_slope_error},
          {"endpoint_value", d.endpoint_value},   {"min_interior", d.min_interior},
          {"ode_residual", d.ode_residual},       {"curvature_error", d.curvature_error}};
}

json to_json(const SphereMode& m) {
  return {{"ell", m.ell}, {"mu", m.mu}, {"multiplicity", m.multiplicity}};
}

json to_json(const SLEigenpair& e, bool samples) {
  json j = {{"k", e.k},
            {"lambda", e.lambda},
            {"nodes", e.nodes},
            {"iterations", e.iterations},
            {"residuals", {{"bc_left", e.bc_residual_left}, {"bc_right", e.bc_residual_right}}}};
  if (samples) {
    j["grid"] = e.grid;
    j["fn"] = e.fn;
    j["fn_prime"] = e.fn_prime;
  }
  return j;
}

json to_json(const Homogeneity& h) {
  return {{"radicand", h.radicand},     {"delta", h.delta},         {"gamma_plus", h.gamma_plus},
          {"gamma_minus", h.gamma_minus}, {"complex", h.is_complex}, {"log_mode", h.log_mode}};
}

json to_json(const LinkEigenvalue& e) {
  json sources = json::array();
  for (const auto& s : e.sources) {
    sources.push_back({{"ell", s.ell}, {"k", s.k}, {"mu", s.mu}, {"multiplicity", s.multiplicity}});
  }
  return {{"lambda", e.lambda},
          {"multiplicity", e.multiplicity},
          {"sources", sources},
          {"homogeneity", to_json(e.homogeneity)}};
}

json to_json(const IntegrabilityReport& r) {
  json ev = json::array();
  for (const auto& e : r.spectrum.eigenvalues) ev.push_back(to_json(e));
  return {{"dim", r.dim},
          {"lambda1", r.lambda1},
          {"stability_margin", r.stability_margin},
          {"strictly_stable", r.strictly_stable},
          {"dim_kernel0", r.dim_kernel0},
          {"dim_kernel_d_minus_1", r.dim_kernel_d_minus_1},
          {"gap_above", r.gap_above},
          {"no_other_below", r.no_other_below},
          {"jacobi_errors",
           {{"axial", r.axial_error}, {"transverse", r.transverse_error}, {"rotation", r.rotation_error}}},
          {"fields_identified", r.fields_identified},
          {"verdict", r.verdict},
          {"lambda_max", r.spectrum.lambda_max},
          {"eigenvalues", ev}};
}

json to_json(const BoundaryMode& m, bool samples) {
  json j = {{"ell", m.ell},
            {"mu", m.mu},
            {"multiplicity", m.multiplicity},
            {"parity", to_string(m.parity)},
            {"ell_k", m.ell_k},
            {"in_resonance", m.in_resonance},
            {"ode_residual", m.ode_residual},
            {"bc_residual", m.bc_residual}};
  if (samples) {
    j["grid"] = m.grid;
    j["psi"] = m.psi;
    j["psi_prime"] = m.psi_prime;
  }
  return j;
}

const char* to_string(BoundaryKind k) { return k == BoundaryKind::Robin ? "robin" : "dirichlet"; }
const char* to_string(Limit l) { return l == Limit::R0 ? "r0" : "infinity"; }

json to_json(const BuildReport& r) {
  json modes = json::array();
  for (const auto& m : r.per_mode) {
    modes.push_back({{"ell", m.ell},
                     {"k", m.k},
                     {"lambda", m.lambda},
                     {"delta", m.delta},
                     {"a", to_string(m.limits.a)},
                     {"b", to_string(m.limits.b)},
                     {"weight", m.weight},
                     {"ode_residual", m.ode_residual}});
  }
  return {{"beta", r.beta},
          {"source_scale", r.source_scale},
          {"slope", r.slope},
          {"interior_residual", r.interior_residual},
          {"boundary_residual", r.boundary_residual},
          {"truncation", r.truncation},
          {"per_mode", modes}};
}

json to_json(const WeissReport& r) {
  return {{"r", r.r_values}, {"W", r.W}, {"dW_lhs", r.dW_lhs}, {"dW_rhs", r.dW_rhs},
          {"kappa0", r.kappa0}};
}

json to_json(const MeasureIdentity& m) {
  return {{"W1", m.W1}, {"measure_over_d", m.measure_over_d}, {"gap", m.gap}};
}

json to_json(const Criticality& c) {
  return {{"F0", c.F0},
          {"dF", c.dF},
          {"relative", c.relative},
          {"lambda_plus", c.lambda_plus},
          {"lambda_minus", c.lambda_minus}};
}

json envelope(const std::string& command, const SolverConfig& cfg, json result) {
  return {{"command", command}, {"config", to_json(cfg)}, {"result", std::move(result)},
          {"version", version()}};
}

}  // namespace conespec

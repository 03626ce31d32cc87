// SPDX-License-Identifier: Apache-2.0
#include "conespec/config.hpp"

#include <cmath>

#include "conespec/errors.hpp"

namespace conespec {

std::vector<std::string> SolverConfig::violations() const {
  std::vector<std::string> out;
  if (grid_n < 64) out.emplace_back("grid_n must be >= 64");
  if (grid_n % 2 != 0) out.emplace_back("grid_n must be even");
  const std::pair<const char*, double> tolerances[] = {
      {"lam_tol", lam_tol},         {"bc_tol", bc_tol},     {"ode_tol", ode_tol},
      {"res_tol", res_tol},         {"cluster_tol", cluster_tol}, {"quad_tol", quad_tol},
      {"root_tol", root_tol},       {"fn_tol", fn_tol}};
  for (const auto& [name, value] : tolerances) {
    if (!(value > 0.0) || !std::isfinite(value)) out.emplace_back(std::string(name) + " must be positive");
  }
  if (!(r0 > 0.0)) out.emplace_back("r0 must be positive");
  if (!(r_max >= 4.0 * r0)) out.emplace_back("r_max / r0 must be >= 4");
  return out;
}

void SolverConfig::validate() const {
  const auto v = violations();
  if (v.empty()) return;
  std::string msg = "invalid solver config:";
  for (const auto& s : v) msg += " " + s + ";";
  throw InvalidInput(msg);
}

const char* version() { return "conespec " CONESPEC_VERSION; }

}  // namespace conespec

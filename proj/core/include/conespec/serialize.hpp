// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <nlohmann/json.hpp>

#include "conespec/boundary_spectrum.hpp"
#include "conespec/cone_profile.hpp"
#include "conespec/config.hpp"
#include "conespec/link_spectrum.hpp"
#include "conespec/particular_solution.hpp"
#include "conespec/sl_engine.hpp"
#include "conespec/sphere_modes.hpp"
#include "conespec/weiss_energy.hpp"

namespace conespec {

using json = nlohmann::json;

[[nodiscard]] json to_json(const SolverConfig& cfg);
/// Overrides the defaults with the fields present in `j`; unknown keys and wrong types throw
/// InvalidInput. The result is validated.
[[nodiscard]] SolverConfig config_from_json(const json& j);

[[nodiscard]] json to_json(const ConeProfile& p, bool samples = true);
[[nodiscard]] json to_json(const ProfileDiagnostics& d);
[[nodiscard]] json to_json(const SphereMode& m);
[[nodiscard]] json to_json(const SLEigenpair& e, bool samples = false);
[[nodiscard]] json to_json(const Homogeneity& h);
[[nodiscard]] json to_json(const LinkEigenvalue& e);
[[nodiscard]] json to_json(const IntegrabilityReport& r);
[[nodiscard]] json to_json(const BoundaryMode& m, bool samples = false);
[[nodiscard]] json to_json(const BuildReport& r);
[[nodiscard]] json to_json(const WeissReport& r);
[[nodiscard]] json to_json(const MeasureIdentity& m);
[[nodiscard]] json to_json(const Criticality& c);

[[nodiscard]] const char* to_string(BoundaryKind k);
[[nodiscard]] const char* to_string(Limit l);

/// {"command", "config", "result", "version"}.
[[nodiscard]] json envelope(const std::string& command, const SolverConfig& cfg, json result);

}  // namespace conespec

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace conespec {

/// Numerical knobs shared by every module. Defaults are the values used by the test suites.
struct SolverConfig {
  int grid_n = 8192;          ///< intervals across the band; even, >= 64
  double lam_tol = 1e-10;     ///< eigenvalue convergence
  double bc_tol = 1e-7;       ///< boundary-condition residuals
  double ode_tol = 1e-6;      ///< pointwise ODE residuals
  double res_tol = 1e-7;      ///< |ell_k| below this puts a boundary mode in the resonance set
  double cluster_tol = 1e-6;  ///< eigenvalues closer than this are merged into one cluster
  double quad_tol = 1e-9;     ///< relative quadrature error budget for the Weiss energy
  double root_tol = 1e-12;    ///< aperture bisection tolerance, in radians
  double fn_tol = 1e-5;       ///< relative L2 error allowed when matching Jacobi fields
  double r0 = 1.0;            ///< inner radius of the radial grid
  double r_max = 1048576.0;   ///< outer radius of the radial grid
  std::uint64_t seed = 20261016;

  /// Returns the list of violated invariants; empty when the config is usable.
  [[nodiscard]] std::vector<std::string> violations() const;
  /// Throws InvalidInput listing every violation.
  void validate() const;
};

/// Library version string embedded in every report.
[[nodiscard]] const char* version();

}  // namespace conespec

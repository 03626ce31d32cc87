// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "conespec/config.hpp"

namespace conespec {

/// Axially symmetric one-homogeneous cone U(r, theta) = r * g(theta), positive on the latitude
/// band |theta - pi/2| < theta0, where theta is the polar angle from the symmetry axis e_1.
struct ConeProfile {
  int dim = 0;
  double theta0 = 0.0;          ///< aperture half-width in radians
  std::vector<double> grid;     ///< uniform, symmetric about pi/2
  std::vector<double> g;        ///< profile, zero at both ends
  std::vector<double> g_prime;  ///< dg/dtheta, +1 at the left end and -1 at the right end
  double H = 0.0;               ///< boundary mean curvature (d-2) tan(theta0)
  double norm_c = 0.0;          ///< rescaling applied to the g(pi/2) = 1 solution

  [[nodiscard]] double lower() const { return grid.front(); }
  [[nodiscard]] double upper() const { return grid.back(); }
  [[nodiscard]] int intervals() const { return static_cast<int>(grid.size()) - 1; }
  [[nodiscard]] double step() const { return theta0 / (intervals() / 2); }
};

/// Shoots g'' + (d-2) cot(theta) g' + (d-1) g = 0 from g(pi/2) = 1, g'(pi/2) = 0, locates the first
/// zero by bisection and rescales so that |g'| = 1 at the free boundary.
[[nodiscard]] ConeProfile solve_profile(int d, const SolverConfig& cfg = {});

/// Measured deviations from the ConeProfile invariants.
struct ProfileDiagnostics {
  double symmetry_error = 0.0;      ///< max |g(pi/2+s) - g(pi/2-s)|
  double center_slope = 0.0;        ///< |g'(pi/2)|
  double left_slope_error = 0.0;    ///< |g'(left) - 1|
  double right_slope_error = 0.0;   ///< |g'(right) + 1|
  double endpoint_value = 0.0;      ///< max(|g(left)|, |g(right)|)
  double min_interior = 0.0;        ///< smallest interior value of g
  double ode_residual = 0.0;        ///< max |g'' + (d-2) cot g' + (d-1) g| away from the ends
  double curvature_error = 0.0;     ///< |H - (d-2) tan(theta0)|
};

[[nodiscard]] ProfileDiagnostics diagnose(const ConeProfile& p);

/// Compares g with the closed-form associated Legendre representation (Q branch for odd d,
/// P branch for even d), evaluated by an independent series / recurrence. Returns the maximal
/// deviation relative to g(pi/2) after matching the value at pi/2.
/// Throws EvaluationUnstable when the evaluation cancels more than half the working digits.
[[nodiscard]] double legendre_crosscheck(const ConeProfile& p);

/// Closed-form profile of the Legendre representation at t = cos(theta), unnormalized.
[[nodiscard]] double legendre_profile(int d, double t);

/// Theta profiles of the analytic Jacobi fields of the cone.
struct JacobiFields {
  std::vector<double> axial;       ///< d/de_1 U       = cos g - sin g'
  std::vector<double> transverse;  ///< d/de_k U / (phi.e_k) = cos g' + sin g
  std::vector<double> rotation;    ///< rotation generator / (-r phi_j) = g'
};

[[nodiscard]] JacobiFields jacobi_fields(const ConeProfile& p);

}  // namespace conespec

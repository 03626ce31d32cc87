// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "conespec/config.hpp"

namespace conespec {

struct ConeProfile;

enum class Parity { Even, Odd };

[[nodiscard]] const char* to_string(Parity p);

/// Harmonic extension psi(theta) * Y_ell of boundary data with d_nu psi + H psi = ell_k psi on
/// both boundary spheres (d_nu = d/dtheta on the left end, -d/dtheta on the right end).
struct BoundaryMode {
  int ell = 0;
  double mu = 0.0;
  std::int64_t multiplicity = 0;
  Parity parity = Parity::Even;
  double ell_k = 0.0;
  bool in_resonance = false;
  std::vector<double> grid;
  std::vector<double> psi;        ///< |S^{d-2}| cos^{d-2}(theta0) (psi(a)^2 + psi(b)^2) = 1
  std::vector<double> psi_prime;
  double ode_residual = 0.0;      ///< max |(sin^{d-2} psi')' - mu sin^{d-4} psi|
  double bc_residual = 0.0;       ///< max over both ends of |+-psi' + H psi - ell_k psi|
};

/// Even or odd fundamental solution for sphere degree ell, integrated outward from pi/2.
[[nodiscard]] BoundaryMode boundary_mode(const ConeProfile& p, int ell, Parity parity,
                                         const SolverConfig& cfg = {});

/// First `count` modes ordered by decreasing ell_k (increasing Steklov value H - ell_k).
[[nodiscard]] std::vector<BoundaryMode> boundary_modes(const ConeProfile& p, int count,
                                                       const SolverConfig& cfg = {});

/// Modes in the resonance set (|ell_k| <= res_tol) with their total multiplicity.
[[nodiscard]] std::int64_t resonance_multiplicity(const std::vector<BoundaryMode>& modes);

}  // namespace conespec

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "conespec/config.hpp"

namespace conespec {

struct ConeProfile;

enum class BoundaryKind { Robin, Dirichlet };

/// Weighted Sturm-Liouville problem on the band |theta - pi/2| < halfwidth:
///   (sin^{d-2} g')' - mu sin^{d-4} g = -lambda sin^{d-2} g,
/// with g' + H g = 0 at the left end and -g' + H g = 0 at the right end (Robin),
/// or g = 0 at both ends (Dirichlet).
struct SLSpec {
  int dim = 0;
  double halfwidth = 0.0;
  double mu = 0.0;
  BoundaryKind bc = BoundaryKind::Robin;
  double H = 0.0;
  int grid_n = 8192;

  /// Robin problem on the cone band, sharing the profile grid.
  [[nodiscard]] static SLSpec robin(const ConeProfile& p, double mu);
  [[nodiscard]] static SLSpec dirichlet(int d, double halfwidth, double mu, int grid_n);

  [[nodiscard]] double lower() const;
  [[nodiscard]] double upper() const;
  [[nodiscard]] std::vector<double> grid() const;
  void validate() const;
};

struct SLEigenpair {
  int k = 0;
  double lambda = 0.0;
  int nodes = 0;                  ///< interior sign changes of fn
  std::vector<double> grid;
  std::vector<double> fn;         ///< unit norm in L2(sin^{d-2} dtheta)
  std::vector<double> fn_prime;
  double bc_residual_left = 0.0;
  double bc_residual_right = 0.0;
  int iterations = 0;
};

/// k-th eigenpair (k >= 1) by Pruefer-phase shooting. For mu = 0 the even/odd half-band split is
/// used; otherwise phases shot from both ends are matched at pi/2. The eigenvalue is bracketed,
/// bisected and then refined by safeguarded secant steps on the phase defect.
/// Sign convention: fn'(left) > 0 (fn(left) > 0 when the slope vanishes).
[[nodiscard]] SLEigenpair eigen_k(const SLSpec& spec, int k, const SolverConfig& cfg = {});

/// First `count` eigenvalues of the second-order finite-difference discretization on grid_n
/// intervals (generalized symmetric tridiagonal problem solved by Sturm-sequence bisection).
[[nodiscard]] std::vector<double> eigen_fd(const SLSpec& spec, int count, int grid_n);

/// Richardson combination of eigen_fd on spec.grid_n and 2 * spec.grid_n intervals.
[[nodiscard]] std::vector<double> eigen_fd_crosscheck(const SLSpec& spec, int count);

/// Rayleigh quotient including the Robin boundary term; g sampled on spec.grid().
[[nodiscard]] double rayleigh(const SLSpec& spec, std::span<const double> g,
                              std::span<const double> g_prime);
/// Same, with g' from fourth-order finite differences.
[[nodiscard]] double rayleigh(const SLSpec& spec, std::span<const double> g);

}  // namespace conespec

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "conespec/config.hpp"
#include "conespec/sl_engine.hpp"

namespace conespec {

struct ConeProfile;

/// Radial exponents of r^gamma * phi(omega) solving the linearized equation for link eigenvalue
/// lambda: gamma^2 + (d-2) gamma - lambda = 0.
struct Homogeneity {
  double radicand = 0.0;     ///< ((d-2)/2)^2 + lambda
  double delta = 0.0;        ///< sqrt(|radicand|); imaginary magnitude when is_complex
  double gamma_plus = 0.0;   ///< -(d-2)/2 + delta (real part only when is_complex)
  double gamma_minus = 0.0;  ///< -(d-2)/2 - delta
  bool is_complex = false;
  bool log_mode = false;     ///< radicand vanishes: r^{-(d-2)/2} and r^{-(d-2)/2} log r
};

[[nodiscard]] Homogeneity homogeneity(int d, double lambda, double tol = 1e-10);

/// One separated mode: sphere degree ell, Sturm-Liouville index k.
struct SpectralSource {
  int ell = 0;
  int k = 0;
  double mu = 0.0;
  std::int64_t multiplicity = 0;  ///< sphere-mode multiplicity carried by this source
};

struct LinkEigenvalue {
  double lambda = 0.0;
  std::int64_t multiplicity = 0;
  std::vector<SpectralSource> sources;
  Homogeneity homogeneity;
};

/// Computed (ell, k) eigenpair kept for downstream expansions.
struct LinkMode {
  SpectralSource source;
  SLEigenpair pair;
};

struct LinkSpectrum {
  int dim = 0;
  double lambda_max = 0.0;
  std::vector<LinkMode> modes;               ///< sorted by lambda, then (ell, k)
  std::vector<LinkEigenvalue> eigenvalues;   ///< clusters within cluster_tol, sorted

  /// Modes with the given sphere degree, ordered by k.
  [[nodiscard]] std::vector<const LinkMode*> modes_of(int ell) const;
};

/// All link eigenvalues <= lambda_max. A sphere degree is skipped once mu_ell + lambda_{0,1} exceeds
/// lambda_max, which is safe because lambda_{ell,1} - lambda_{0,1} >= mu_ell.
[[nodiscard]] LinkSpectrum assemble(const ConeProfile& p, double lambda_max,
                                    const SolverConfig& cfg = {});

struct IntegrabilityReport {
  int dim = 0;
  double lambda1 = 0.0;
  double stability_margin = 0.0;  ///< lambda1 + ((d-2)/2)^2
  bool strictly_stable = false;
  std::int64_t dim_kernel0 = 0;
  std::int64_t dim_kernel_d_minus_1 = 0;
  double gap_above = 0.0;         ///< smallest eigenvalue > d-1
  bool no_other_below = false;    ///< nothing <= d-1 besides lambda1, 0, d-1
  double axial_error = 0.0;       ///< relative L2 mismatch of (0,2) against t1
  double transverse_error = 0.0;  ///< (1,1) against tk
  double rotation_error = 0.0;    ///< (1,2) against g'
  bool fields_identified = false;
  bool verdict = false;
  LinkSpectrum spectrum;
};

[[nodiscard]] IntegrabilityReport verify_strong_integrability(const ConeProfile& p,
                                                              const SolverConfig& cfg = {});

/// Sorted distinct homogeneities {gamma+, gamma-} over the given eigenvalues.
[[nodiscard]] std::vector<double> decay_exponents(const std::vector<LinkEigenvalue>& spectrum);

/// Relative weighted L2 distance between f and its best multiple of ref, weight sin^{d-2}.
[[nodiscard]] double aligned_error(int d, const std::vector<double>& grid,
                                   const std::vector<double>& f, const std::vector<double>& ref);

}  // namespace conespec

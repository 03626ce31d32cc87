// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

namespace conespec {

/// Laplace-Beltrami eigenvalue of degree ell on the factor sphere S^{d-2}.
struct SphereMode {
  int ell = 0;
  double mu = 0.0;                 ///< ell (ell + d - 3)
  std::int64_t multiplicity = 0;   ///< dimension of degree-ell spherical harmonics on S^{d-2}
};

[[nodiscard]] double sphere_mode_eigenvalue(int d, int ell);
[[nodiscard]] std::int64_t sphere_mode_multiplicity(int d, int ell);
[[nodiscard]] SphereMode sphere_mode(int d, int ell);

/// All modes with mu <= mu_max, in increasing ell.
[[nodiscard]] std::vector<SphereMode> modes_up_to(int d, double mu_max);

}  // namespace conespec

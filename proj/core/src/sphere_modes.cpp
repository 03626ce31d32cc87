// SPDX-License-Identifier: Apache-2.0
#include "conespec/sphere_modes.hpp"

#include "conespec/errors.hpp"

namespace conespec {

namespace {

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void require_dim(int d) {
  if (d < 3) throw InvalidInput("sphere modes: dimension must be at least 3");
}

}  // namespace

double sphere_mode_eigenvalue(int d, int ell) {
  require_dim(d);
  if (ell < 0) throw InvalidInput("sphere modes: negative degree");
  return static_cast<double>(ell) * (ell + d - 3);
}

std::int64_t sphere_mode_multiplicity(int d, int ell) {
  require_dim(d);
  if (ell < 0) throw InvalidInput("sphere modes: negative degree");
  // S^1: cos(ell phi), sin(ell phi)
  if (d == 3) return ell == 0 ? 1 : 2;
  // harmonic polynomials of degree ell in n + 1 = d - 1 variables
  const int n = d - 2;
  return binomial(ell + n, n) - binomial(ell + n - 2, n);
}

SphereMode sphere_mode(int d, int ell) {
  return {ell, sphere_mode_eigenvalue(d, ell), sphere_mode_multiplicity(d, ell)};
}

std::vector<SphereMode> modes_up_to(int d, double mu_max) {
  require_dim(d);
  std::vector<SphereMode> out;
  for (int ell = 0; sphere_mode_eigenvalue(d, ell) <= mu_max; ++ell) out.push_back(sphere_mode(d, ell));
  return out;
}

}  // namespace conespec

// SPDX-License-Identifier: Apache-2.0
#include "conespec/boundary_spectrum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "conespec/cone_profile.hpp"
#include "conespec/errors.hpp"
#include "conespec/numerics.hpp"
#include "conespec/sphere_modes.hpp"

namespace conespec {

const char* to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

BoundaryMode boundary_mode(const ConeProfile& prof, int ell, Parity parity,
                           const SolverConfig& cfg) {
  const int d = prof.dim;
  const SphereMode sm = sphere_mode(d, ell);
  const int n = prof.intervals();
  const int half = n / 2;
  const double h = prof.step();

  // Coefficients on the half-step grid of the right half-band.
  const auto fine = numerics::band_grid(numerics::kHalfPi, prof.theta0, 2 * n);
  auto pw = [&](int j) { return std::pow(std::sin(fine[j]), d - 2); };
  auto qw = [&](int j) { return sm.mu * std::pow(std::sin(fine[j]), d - 4); };
  auto rhs = [&](int j, const std::array<double, 2>& y) {
    return std::array<double, 2>{y[1] / pw(j), qw(j) * y[0]};
  };

  BoundaryMode m;
  m.ell = ell;
  m.mu = sm.mu;
  m.multiplicity = sm.multiplicity;
  m.parity = parity;
  m.grid = prof.grid;
  m.psi.assign(n + 1, 0.0);
  m.psi_prime.assign(n + 1, 0.0);

  // State (psi, sin^{d-2} psi'); p(pi/2) = 1.
  std::array<double, 2> y = parity == Parity::Even ? std::array<double, 2>{1.0, 0.0}
                                                   : std::array<double, 2>{0.0, 1.0};
  m.psi[half] = y[0];
  m.psi_prime[half] = y[1];
  for (int i = half; i < n; ++i) {
    const int j0 = 2 * i;
    const auto k1 = rhs(j0, y);
    const auto k2 = rhs(j0 + 1, {y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]});
    const auto k3 = rhs(j0 + 1, {y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]});
    const auto k4 = rhs(j0 + 2, {y[0] + h * k3[0], y[1] + h * k3[1]});
    for (int c = 0; c < 2; ++c) y[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    m.psi[i + 1] = y[0];
    m.psi_prime[i + 1] = y[1] / pw(j0 + 2);
  }
  const double sgn = parity == Parity::Even ? 1.0 : -1.0;
  for (int j = 1; j <= half; ++j) {
    m.psi[half - j] = sgn * m.psi[half + j];
    m.psi_prime[half - j] = -sgn * m.psi_prime[half + j];
  }

  // Even and odd solutions must stay independent up to the boundary: the Wronskian
  // p (psi_e psi_o' - psi_o psi_e') = 1 is compared against the size of its two products.
  const double psi_b = m.psi.back();
  const double flux_b = y[1];
  if (!std::isfinite(psi_b) || !std::isfinite(flux_b)) {
    throw DegenerateBasis("boundary_mode: fundamental solution overflowed for ell=" +
                          std::to_string(ell));
  }
  if (parity == Parity::Odd || sm.mu > 0.0) {
    if (std::abs(psi_b * flux_b) > 1e12) {
      throw DegenerateBasis("boundary_mode: even/odd solutions numerically dependent for ell=" +
                            std::to_string(ell));
    }
  }
  if (std::abs(psi_b) < 1e-300) throw DegenerateBasis("boundary_mode: vanishing boundary trace");

  m.ell_k = prof.H - m.psi_prime.back() / psi_b;
  if (ell == 0 && parity == Parity::Even) m.ell_k = prof.H;  // psi is constant
  m.in_resonance = std::abs(m.ell_k) <= cfg.res_tol;

  const double cb = std::pow(std::cos(prof.theta0), d - 2);
  const double norm2 = numerics::sphere_area(d - 2) * cb * 2.0 * psi_b * psi_b;
  const double scale = 1.0 / std::sqrt(norm2);
  for (int i = 0; i <= n; ++i) {
    m.psi[i] *= scale;
    m.psi_prime[i] *= scale;
  }

  std::vector<double> flux(n + 1);
  for (int i = 0; i <= n; ++i) flux[i] = std::pow(std::sin(m.grid[i]), d - 2) * m.psi_prime[i];
  const auto dflux = numerics::derivative4(flux, h);
  for (int i = 0; i <= n; ++i) {
    const double r = dflux[i] - sm.mu * std::pow(std::sin(m.grid[i]), d - 4) * m.psi[i];
    m.ode_residual = std::max(m.ode_residual, std::abs(r));
  }
  const double left = m.psi_prime.front() + prof.H * m.psi.front() - m.ell_k * m.psi.front();
  const double right = -m.psi_prime.back() + prof.H * m.psi.back() - m.ell_k * m.psi.back();
  m.bc_residual = std::max(std::abs(left), std::abs(right));
  return m;
}

std::vector<BoundaryMode> boundary_modes(const ConeProfile& p, int count, const SolverConfig& cfg) {
  if (count < 1) throw InvalidInput("boundary_modes: count must be >= 1");
  std::vector<BoundaryMode> all;
  auto by_value = [](const BoundaryMode& a, const BoundaryMode& b) {
    if (a.ell_k != b.ell_k) return a.ell_k > b.ell_k;
    if (a.ell != b.ell) return a.ell < b.ell;
    return a.parity == Parity::Even && b.parity == Parity::Odd;
  };
  // ell_k decreases in the sphere degree for each parity, so once both newest modes fall below
  // the count-th retained value no later degree can enter.
  for (int ell = 0;; ++ell) {
    BoundaryMode even = boundary_mode(p, ell, Parity::Even, cfg);
    BoundaryMode odd = boundary_mode(p, ell, Parity::Odd, cfg);
    const double top = std::max(even.ell_k, odd.ell_k);
    all.push_back(std::move(even));
    all.push_back(std::move(odd));
    std::sort(all.begin(), all.end(), by_value);
    if (static_cast<int>(all.size()) > count && top < all[count - 1].ell_k) break;
  }
  all.resize(count);
  return all;
}

std::int64_t resonance_multiplicity(const std::vector<BoundaryMode>& modes) {
  std::int64_t total = 0;
  for (const auto& m : modes) {
    if (m.in_resonance) total += m.multiplicity;
  }
  return total;
}

}  // namespace conespec

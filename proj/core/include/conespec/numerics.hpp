// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace conespec::numerics {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kHalfPi = kPi / 2.0;

/// Band grid of n intervals on [center - halfwidth, center + halfwidth], built outward from the
/// center so that mirrored points are exact mirrors. n must be even.
[[nodiscard]] std::vector<double> band_grid(double center, double halfwidth, int n);

/// Geometric grid r0 * ratio^i covering [r0, r_max] (last point clamped to r_max).
[[nodiscard]] std::vector<double> geometric_grid(double r0, double r_max, int points_per_octave);

/// Composite Simpson on a uniform grid with an even number of intervals.
[[nodiscard]] double simpson(std::span<const double> f, double h);

/// Composite Boole (4-panel Newton-Cotes) rule; the number of intervals must be a multiple of 4.
[[nodiscard]] double boole(std::span<const double> f, double h);

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// Gauss-Legendre nodes and weights via Newton iteration on P_n.
[[nodiscard]] const GaussRule& gauss_legendre(int n);

/// |S^n| = 2 pi^{(n+1)/2} / Gamma((n+1)/2).
[[nodiscard]] double sphere_area(int n);

/// int_lo^hi sin^n(t) dt by the reduction formula (n >= 0).
[[nodiscard]] double sin_power_integral(int n, double lo, double hi);

/// int_lo^hi csc^n(t) dt by the reduction formula (n >= 0), 0 < lo < hi < pi.
[[nodiscard]] double csc_power_integral(int n, double lo, double hi);

/// Number of strict sign alternations, ignoring samples with |v| <= zero_tol * max|v|.
[[nodiscard]] int sign_changes(std::span<const double> v, double zero_tol = 1e-10);

/// Fourth-order finite-difference derivative on a uniform grid (one-sided near the ends).
[[nodiscard]] std::vector<double> derivative4(std::span<const double> f, double h);

/// Least-squares slope of log|y| against log x over the samples with x >= x_min.
[[nodiscard]] double loglog_slope(std::span<const double> x, std::span<const double> y, double x_min);

/// One classical Runge-Kutta step for y' = f(t, y).
template <std::size_t N, class F>
[[nodiscard]] std::array<double, N> rk4_step(F&& f, double t, const std::array<double, N>& y,
                                             double h) {
  auto axpy = [](const std::array<double, N>& a, double s, const std::array<double, N>& b) {
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) out[i] = a[i] + s * b[i];
    return out;
  };
  const auto k1 = f(t, y);
  const auto k2 = f(t + 0.5 * h, axpy(y, 0.5 * h, k1));
  const auto k3 = f(t + 0.5 * h, axpy(y, 0.5 * h, k2));
  const auto k4 = f(t + h, axpy(y, h, k3));
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

}  // namespace conespec::numerics

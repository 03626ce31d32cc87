// SPDX-License-Identifier: Apache-2.0
#include "conespec/cone_profile.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "conespec/errors.hpp"
#include "conespec/numerics.hpp"

namespace conespec {

using numerics::kHalfPi;
using numerics::kPi;

namespace {

using State = std::array<double, 2>;

auto profile_rhs(int d) {
  return [d](double theta, const State& y) -> State {
    return {y[1], -(d - 2) / std::tan(theta) * y[1] - (d - 1) * y[0]};
  };
}

constexpr int kBisectionCap = 200;

}  // namespace

ConeProfile solve_profile(int d, const SolverConfig& cfg) {
  if (d < 3) throw InvalidInput("solve_profile: dimension must be at least 3");
  cfg.validate();
  const auto rhs = profile_rhs(d);
  const int half = cfg.grid_n / 2;

  // march outward from the equator until g changes sign
  const double h = kHalfPi / half;
  State y{1.0, 0.0};
  double theta = kHalfPi;
  double root = 0.0;
  for (int i = 0;; ++i) {
    theta = kHalfPi + i * h;
    if (theta + h >= kPi - 0.5 * h) {
      throw NoZeroFound("solve_profile: profile does not vanish before theta = pi (d = " +
                        std::to_string(d) + ")");
    }
    const State next = numerics::rk4_step(rhs, theta, y, h);
    if (next[0] <= 0.0) {
      double lo = 0.0;
      double hi = h;
      int it = 0;
      while (hi - lo > cfg.root_tol) {
        if (++it > kBisectionCap) throw NonConvergent("solve_profile: aperture bisection did not converge");
        const double mid = 0.5 * (lo + hi);
        (numerics::rk4_step(rhs, theta, y, mid)[0] > 0.0 ? lo : hi) = mid;
      }
      root = theta + 0.5 * (lo + hi);
      break;
    }
    y = next;
  }

  ConeProfile p;
  p.dim = d;
  p.theta0 = root - kHalfPi;
  if (!(p.theta0 > 0.0 && p.theta0 < kHalfPi)) {
    throw NoZeroFound("solve_profile: aperture outside (0, pi/2)");
  }
  p.grid = numerics::band_grid(kHalfPi, p.theta0, cfg.grid_n);

  // second pass on the final grid, mirrored about pi/2
  const double step = p.theta0 / half;
  std::vector<State> right(static_cast<std::size_t>(half) + 1);
  right[0] = {1.0, 0.0};
  for (int j = 0; j < half; ++j) right[j + 1] = numerics::rk4_step(rhs, kHalfPi + j * step, right[j], step);
  const double end_value = right[half][0];
  const double end_slope = right[half][1];
  if (std::abs(end_value) > 1e-6 || !(end_slope < 0.0)) {
    throw NonConvergent("solve_profile: second pass does not vanish at the located aperture");
  }
  right[half][0] = 0.0;
  p.norm_c = 1.0 / std::abs(end_slope);

  const std::size_t n = p.grid.size();
  p.g.resize(n);
  p.g_prime.resize(n);
  for (int j = 0; j <= half; ++j) {
    p.g[half + j] = p.norm_c * right[j][0];
    p.g[half - j] = p.norm_c * right[j][0];
    p.g_prime[half + j] = p.norm_c * right[j][1];
    p.g_prime[half - j] = -p.norm_c * right[j][1];
  }
  p.g_prime[half] = 0.0;
  p.H = (d - 2) * std::tan(p.theta0);
  return p;
}

ProfileDiagnostics diagnose(const ConeProfile& p) {
  ProfileDiagnostics out;
  const int n = p.intervals();
  const int half = n / 2;
  for (int j = 0; j <= half; ++j) {
    out.symmetry_error = std::max(out.symmetry_error, std::abs(p.g[half + j] - p.g[half - j]));
  }
  out.center_slope = std::abs(p.g_prime[half]);
  out.left_slope_error = std::abs(p.g_prime.front() - 1.0);
  out.right_slope_error = std::abs(p.g_prime.back() + 1.0);
  out.endpoint_value = std::max(std::abs(p.g.front()), std::abs(p.g.back()));
  out.min_interior = *std::min_element(p.g.begin() + 1, p.g.end() - 1);
  const auto gpp = numerics::derivative4(p.g_prime, p.step());
  for (int i = 2; i + 2 <= n; ++i) {
    const double t = p.grid[i];
    const double r = gpp[i] + (p.dim - 2) / std::tan(t) * p.g_prime[i] + (p.dim - 1) * p.g[i];
    out.ode_residual = std::max(out.ode_residual, std::abs(r));
  }
  out.curvature_error = std::abs(p.H - (p.dim - 2) * std::tan(p.theta0));
  return out;
}

namespace {

using Poly = std::vector<double>;  // coefficients, lowest degree first

Poly poly_axpy(double a, const Poly& x, double b, const Poly& y) {
  Poly out(std::max(x.size(), y.size()), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] += a * x[i];
  for (std::size_t i = 0; i < y.size(); ++i) out[i] += b * y[i];
  return out;
}

Poly poly_shift(const Poly& x) {  // multiply by t
  Poly out(x.size() + 1, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) out[i + 1] = x[i];
  return out;
}

Poly poly_derivative(const Poly& x, int times) {
  Poly out = x;
  for (int k = 0; k < times; ++k) {
    if (out.size() <= 1) return {0.0};
    Poly next(out.size() - 1);
    for (std::size_t i = 1; i < out.size(); ++i) next[i - 1] = i * out[i];
    out = std::move(next);
  }
  return out;
}

double poly_eval(const Poly& x, double t) {
  double s = 0.0;
  for (auto it = x.rbegin(); it != x.rend(); ++it) s = s * t + *it;
  return s;
}

struct Evaluation {
  double value;
  double magnitude;  // sum of absolute contributions, for the cancellation test
};

// m-th derivative of the Legendre function of the second kind Q_nu at t, |t| < 1.
// Q_n = P_n * L - W_{n-1}, with L = atanh(t) and Bonnet recurrences for both P and W.
Evaluation legendre_q_derivative(int nu, int m, double t) {
  Poly p_prev{1.0};
  Poly p_cur{0.0, 1.0};
  Poly w_prev{0.0};
  Poly w_cur{1.0};
  if (nu == 0) {
    p_cur = p_prev;
    w_cur = w_prev;
  }
  for (int n = 1; n < nu; ++n) {
    Poly p_next = poly_axpy((2.0 * n + 1.0) / (n + 1.0), poly_shift(p_cur), -n / (n + 1.0), p_prev);
    Poly w_next = poly_axpy((2.0 * n + 1.0) / (n + 1.0), poly_shift(w_cur), -n / (n + 1.0), w_prev);
    p_prev = std::move(p_cur);
    p_cur = std::move(p_next);
    w_prev = std::move(w_cur);
    w_cur = std::move(w_next);
  }
  Evaluation e{0.0, 0.0};
  double binom = 1.0;
  double factorial = 1.0;  // (i-1)!
  for (int i = 0; i <= m; ++i) {
    if (i > 0) {
      binom = binom * (m - i + 1) / i;
      if (i > 1) factorial *= (i - 1);
    }
    double l_deriv = 0.0;
    if (i == 0) {
      l_deriv = std::atanh(t);
    } else {
      const double sgn = (i - 1) % 2 == 0 ? 1.0 : -1.0;
      l_deriv = 0.5 * factorial * (std::pow(1.0 - t, -i) + sgn * std::pow(1.0 + t, -i));
    }
    const double term = binom * poly_eval(poly_derivative(p_cur, m - i), t) * l_deriv;
    e.value += term;
    e.magnitude += std::abs(term);
  }
  const double w_term = poly_eval(poly_derivative(w_cur, m), t);
  e.value -= w_term;
  e.magnitude += std::abs(w_term);
  return e;
}

// (1 - t)^(-mu) 2F1(-nu, nu + 1; 1 - mu; (1 - t) / 2), proportional to
// (1 - t^2)^(-mu/2) times the Ferrers function P^mu_nu(t).
Evaluation legendre_p_scaled(double nu, double mu, double t) {
  const double z = 0.5 * (1.0 - t);
  const double a = -nu;
  const double b = nu + 1.0;
  const double c = 1.0 - mu;
  double term = 1.0;
  double sum = 1.0;
  double magnitude = 1.0;
  for (int k = 1; k < 200000; ++k) {
    term *= (a + k - 1.0) * (b + k - 1.0) / ((c + k - 1.0) * k) * z;
    sum += term;
    magnitude += std::abs(term);
    if (std::abs(term) < 1e-18 * std::abs(sum) && k > 8) {
      const double scale = std::pow(1.0 - t, -mu);
      return {scale * sum, scale * magnitude};
    }
  }
  throw EvaluationUnstable("legendre_crosscheck: hypergeometric series did not converge");
}

Evaluation legendre_eval(int d, double t) {
  if (d % 2 == 1) return legendre_q_derivative((d - 1) / 2, (d - 3) / 2, t);
  return legendre_p_scaled(0.5 * (d - 1), 0.5 * (d - 3), t);
}

}  // namespace

double legendre_profile(int d, double t) {
  if (d < 3) throw InvalidInput("legendre_profile: dimension must be at least 3");
  return legendre_eval(d, t).value;
}

double legendre_crosscheck(const ConeProfile& p) {
  constexpr double kMaxCancellation = 1e8;  // half of the ~16 available digits
  const auto center = legendre_eval(p.dim, 0.0);
  if (center.magnitude > kMaxCancellation * std::abs(center.value)) {
    throw EvaluationUnstable("legendre_crosscheck: cancellation at the equator");
  }
  const double g_center = p.g[p.intervals() / 2];
  double worst = 0.0;
  for (std::size_t i = 0; i < p.grid.size(); ++i) {
    const auto e = legendre_eval(p.dim, std::cos(p.grid[i]));
    if (e.magnitude > kMaxCancellation * std::max(std::abs(e.value), std::abs(center.value))) {
      throw EvaluationUnstable("legendre_crosscheck: series lost more than half the working precision");
    }
    worst = std::max(worst, std::abs(e.value / center.value - p.g[i] / g_center));
  }
  return worst;
}

JacobiFields jacobi_fields(const ConeProfile& p) {
  JacobiFields j;
  const std::size_t n = p.grid.size();
  j.axial.resize(n);
  j.transverse.resize(n);
  j.rotation = p.g_prime;
  for (std::size_t i = 0; i < n; ++i) {
    const double c = std::cos(p.grid[i]);
    const double s = std::sin(p.grid[i]);
    j.axial[i] = c * p.g[i] - s * p.g_prime[i];
    j.transverse[i] = c * p.g_prime[i] + s * p.g[i];
  }
  return j;
}

}  // namespace conespec

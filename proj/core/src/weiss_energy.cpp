// SPDX-License-Identifier: Apache-2.0
#include "conespec/weiss_energy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "conespec/cone_profile.hpp"
#include "conespec/errors.hpp"
#include "conespec/link_spectrum.hpp"
#include "conespec/numerics.hpp"
#include "conespec/sl_engine.hpp"

namespace conespec {

using numerics::kHalfPi;

RadialFactor RadialFactor::power(double coeff, double exponent) {
  return {[coeff, exponent](double r) { return coeff * std::pow(r, exponent); },
          [coeff, exponent](double r) {
            return exponent == 0.0 ? 0.0 : coeff * exponent * std::pow(r, exponent - 1.0);
          }};
}

AxisymField AxisymField::cone(const ConeProfile& p) {
  return cone_with_radial(p, RadialFactor::power(1.0, 1.0));
}

AxisymField AxisymField::cone_with_radial(const ConeProfile& p, RadialFactor rho) {
  AxisymField u;
  u.dim = p.dim;
  u.lo = p.lower();
  u.hi = p.upper();
  u.theta = p.grid;
  u.terms.push_back({std::move(rho), p.g, p.g_prime});
  return u;
}

AxisymField AxisymField::half_plane(int d, int grid_n) {
  if (grid_n < 8 || grid_n % 2 != 0) throw InvalidInput("half_plane: grid_n must be even and >= 8");
  AxisymField u;
  u.dim = d;
  u.lo = 0.0;
  u.hi = kHalfPi;
  u.theta.resize(grid_n + 1);
  const double h = kHalfPi / grid_n;
  for (int i = 0; i <= grid_n; ++i) u.theta[i] = i * h;
  u.theta.back() = kHalfPi;
  SeparableTerm t{RadialFactor::power(1.0, 1.0), {}, {}};
  for (double th : u.theta) {
    t.q.push_back(std::cos(th));
    t.q_prime.push_back(-std::sin(th));
  }
  u.terms.push_back(std::move(t));
  return u;
}

AxisymField AxisymField::one_homogeneous(int d, double halfwidth, std::vector<double> q,
                                         std::vector<double> q_prime) {
  if (q.size() != q_prime.size() || q.size() < 9) throw InvalidInput("one_homogeneous: bad samples");
  AxisymField u;
  u.dim = d;
  u.lo = kHalfPi - halfwidth;
  u.hi = kHalfPi + halfwidth;
  u.theta = numerics::band_grid(kHalfPi, halfwidth, static_cast<int>(q.size()) - 1);
  u.terms.push_back({RadialFactor::power(1.0, 1.0), std::move(q), std::move(q_prime)});
  return u;
}

AxisymField& AxisymField::add(double coeff, double gamma, const std::vector<double>& q,
                              const std::vector<double>& q_prime) {
  if (q.size() != theta.size() || q_prime.size() != theta.size()) {
    throw InvalidInput("AxisymField::add: samples must match the band grid");
  }
  terms.push_back({RadialFactor::power(coeff, gamma), q, q_prime});
  return *this;
}

AxisymField& AxisymField::add_dirichlet_mode(int k, double coeff, const SolverConfig& cfg) {
  const double hw = 0.5 * (hi - lo);
  if (std::abs(lo + hi - numerics::kPi) > 1e-12) throw InvalidInput("add_dirichlet_mode: band must be symmetric");
  const SLSpec spec = SLSpec::dirichlet(dim, hw, 0.0, static_cast<int>(theta.size()) - 1);
  const SLEigenpair e = eigen_k(spec, k, cfg);
  return add(coeff, homogeneity(dim, e.lambda).gamma_plus, e.fn, e.fn_prime);
}

AxisymField AxisymField::rescaled(double s) const {
  if (!(s > 0.0)) throw InvalidInput("rescaled: scale must be positive");
  AxisymField out = *this;
  for (auto& t : out.terms) {
    auto v = t.rho.value;
    auto dv = t.rho.derivative;
    t.rho.value = [v, s](double r) { return v(s * r) / s; };
    t.rho.derivative = [dv, s](double r) { return dv(s * r); };
  }
  return out;
}

void AxisymField::check_positive(const std::vector<double>& radii) const {
  for (double r : radii) {
    std::vector<double> rho;
    for (const auto& t : terms) rho.push_back(t.rho.value(r));
    for (std::size_t i = 1; i + 1 < theta.size(); ++i) {
      double u = 0.0;
      for (std::size_t j = 0; j < terms.size(); ++j) u += rho[j] * terms[j].q[i];
      if (!(u > 0.0)) {
        throw InvalidInput("AxisymField: field is not positive inside the band at r=" +
                           std::to_string(r) + ", theta=" + std::to_string(theta[i]));
      }
    }
  }
}

namespace {

struct Angular {
  std::size_t m = 0;
  std::vector<double> A;  // |S^{d-2}| int sin^{d-2} q_i q_j
  std::vector<double> B;  // |S^{d-2}| int sin^{d-2} q_i' q_j'
  double M = 0.0;         // |S^{d-2}| int sin^{d-2}
};

Angular angular(const AxisymField& u) {
  if (u.theta.size() < 3 || (u.theta.size() - 1) % 2 != 0) {
    throw InvalidInput("weiss: band grid needs an even number of intervals");
  }
  Angular a;
  a.m = u.terms.size();
  a.A.assign(a.m * a.m, 0.0);
  a.B.assign(a.m * a.m, 0.0);
  const double area = numerics::sphere_area(u.dim - 2);
  const double h = u.step();
  const std::size_t n = u.theta.size();
  std::vector<double> w(n);
  for (std::size_t k = 0; k < n; ++k) w[k] = area * std::pow(std::sin(u.theta[k]), u.dim - 2);
  a.M = numerics::simpson(w, h);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < a.m; ++i) {
    for (std::size_t j = i; j < a.m; ++j) {
      for (std::size_t k = 0; k < n; ++k) v[k] = w[k] * u.terms[i].q[k] * u.terms[j].q[k];
      a.A[i * a.m + j] = a.A[j * a.m + i] = numerics::simpson(v, h);
      for (std::size_t k = 0; k < n; ++k) v[k] = w[k] * u.terms[i].q_prime[k] * u.terms[j].q_prime[k];
      a.B[i * a.m + j] = a.B[j * a.m + i] = numerics::simpson(v, h);
    }
  }
  return a;
}

double quadratic(const Angular& a, const std::vector<double>& x, const std::vector<double>& M) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.m; ++i) {
    for (std::size_t j = 0; j < a.m; ++j) s += x[i] * x[j] * M[i * a.m + j];
  }
  return s;
}

// int_0^r s^{d-1} (|d_r u|^2 + s^{-2} |grad_theta u|^2) over the band, Boole on n panels.
double radial_energy(const AxisymField& u, const Angular& a, double r, int n) {
  std::vector<double> e(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<double> rho(a.m);
  std::vector<double> drho(a.m);
  const double h = r / n;
  for (int k = 1; k <= n; ++k) {
    const double s = k == n ? r : k * h;
    for (std::size_t i = 0; i < a.m; ++i) {
      rho[i] = u.terms[i].rho.value(s);
      drho[i] = u.terms[i].rho.derivative(s);
    }
    e[k] = std::pow(s, u.dim - 1) * (quadratic(a, drho, a.A) + quadratic(a, rho, a.B) / (s * s));
  }
  return numerics::boole(e, h);
}

std::vector<double> positivity_radii(double r) {
  std::vector<double> out;
  for (int j = 0; j < 16; ++j) out.push_back(r * std::exp2(-j));
  return out;
}

}  // namespace

double weiss(const AxisymField& u, double r, const SolverConfig& cfg, int radial_n) {
  if (!(r > 0.0)) throw InvalidInput("weiss: radius must be positive");
  if (radial_n < 8 || radial_n % 8 != 0) throw InvalidInput("weiss: radial_n must be a multiple of 8");
  u.check_positive(positivity_radii(r));
  const Angular a = angular(u);
  const double fine = radial_energy(u, a, r, radial_n);
  const double coarse = radial_energy(u, a, r, radial_n / 2);
  std::vector<double> rho(a.m);
  for (std::size_t i = 0; i < a.m; ++i) rho[i] = u.terms[i].rho.value(r);
  const double rd = std::pow(r, u.dim);
  const double W = fine / rd + a.M / u.dim - quadratic(a, rho, a.A) / (r * r);
  const double err = std::abs(fine - coarse) / rd;
  if (err > cfg.quad_tol * std::max(std::abs(W), 1e-300)) {
    throw GridTooCoarse("weiss: radial quadrature error " + std::to_string(err) +
                        " exceeds quad_tol |W|");
  }
  return W;
}

double weiss_deficit(const AxisymField& u, double r) {
  const Angular a = angular(u);
  std::vector<double> x(a.m);
  for (std::size_t i = 0; i < a.m; ++i) {
    x[i] = r * u.terms[i].rho.derivative(r) - u.terms[i].rho.value(r);
  }
  return 2.0 * quadratic(a, x, a.A) / (r * r * r);
}

DerivativeCheck weiss_derivative_check(const AxisymField& u, double r, const SolverConfig& cfg) {
  const double h = 2.5e-3 * r;
  DerivativeCheck c;
  c.lhs = (-weiss(u, r + 2 * h, cfg) + 8.0 * weiss(u, r + h, cfg) - 8.0 * weiss(u, r - h, cfg) +
           weiss(u, r - 2 * h, cfg)) /
          (12.0 * h);
  c.rhs = weiss_deficit(u, r);
  c.gap = std::abs(c.lhs - c.rhs);
  return c;
}

WeissReport weiss_report(const AxisymField& u, const std::vector<double>& radii,
                         const SolverConfig& cfg) {
  WeissReport rep;
  for (double r : radii) {
    const auto c = weiss_derivative_check(u, r, cfg);
    rep.r_values.push_back(r);
    rep.W.push_back(weiss(u, r, cfg));
    rep.dW_lhs.push_back(c.lhs);
    rep.dW_rhs.push_back(c.rhs);
  }
  const Angular a = angular(u);
  std::vector<double> rho(a.m);
  for (std::size_t i = 0; i < a.m; ++i) rho[i] = u.terms[i].rho.value(1.0);
  rep.kappa0 = std::sqrt(quadratic(a, rho, a.A));
  return rep;
}

double link_measure(int d, double halfwidth) {
  return numerics::sphere_area(d - 2) *
         numerics::sin_power_integral(d - 2, kHalfPi - halfwidth, kHalfPi + halfwidth);
}

double kappa0(const ConeProfile& p) {
  std::vector<double> v(p.grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::pow(std::sin(p.grid[i]), p.dim - 2) * p.g[i] * p.g[i];
  return std::sqrt(numerics::sphere_area(p.dim - 2) * numerics::simpson(v, p.step()));
}

MeasureIdentity link_measure_identity(const ConeProfile& p, const SolverConfig& cfg) {
  if (!(p.theta0 > 0.0) || !(p.theta0 < kHalfPi)) {
    throw InvalidInput("link_measure_identity: aperture must lie in (0, pi/2)");
  }
  MeasureIdentity m;
  m.W1 = weiss(AxisymField::cone(p), 1.0, cfg);
  m.measure_over_d = link_measure(p.dim, p.theta0) / p.dim;
  m.gap = std::abs(m.W1 - m.measure_over_d) / m.measure_over_d;
  return m;
}

double F_functional(double band_halfwidth, const ConeProfile& p, const SolverConfig& cfg,
                    FNormalization norm) {
  if (!(band_halfwidth > 0.0) || !(band_halfwidth < kHalfPi)) {
    throw InvalidInput("F_functional: half-width must lie in (0, pi/2)");
  }
  const int d = p.dim;
  const SLSpec spec = SLSpec::dirichlet(d, band_halfwidth, 0.0, p.intervals());
  const double lambda = eigen_k(spec, 1, cfg).lambda;
  const double k2 = kappa0(p) * kappa0(p);
  const double factor = norm == FNormalization::Energy ? k2 / d : k2;
  return factor * (lambda - (d - 1)) + link_measure(d, band_halfwidth) / d;
}

Criticality F_criticality(const ConeProfile& p, double eps, const SolverConfig& cfg,
                          FNormalization norm) {
  if (!(eps > 0.0) || !(p.theta0 + eps < kHalfPi) || !(p.theta0 - eps > 0.0)) {
    throw InvalidInput("F_criticality: eps must keep the band inside (0, pi)");
  }
  SolverConfig tight = cfg;
  tight.lam_tol = std::min(cfg.lam_tol, 1e-13);
  Criticality c;
  c.F0 = F_functional(p.theta0, p, tight, norm);
  const double fp = F_functional(p.theta0 + eps, p, tight, norm);
  const double fm = F_functional(p.theta0 - eps, p, tight, norm);
  c.dF = (fp - fm) / (2.0 * eps);
  c.relative = std::abs(c.dF) / std::abs(c.F0);
  c.lambda_plus = eigen_k(SLSpec::dirichlet(p.dim, p.theta0 + eps, 0.0, p.intervals()), 1, tight).lambda;
  c.lambda_minus = eigen_k(SLSpec::dirichlet(p.dim, p.theta0 - eps, 0.0, p.intervals()), 1, tight).lambda;
  return c;
}

double hermite(const std::vector<double>& grid, const std::vector<double>& f,
               const std::vector<double>& fp, double x) {
  const std::size_t n = grid.size();
  if (n < 2 || f.size() != n || fp.size() != n) throw InvalidInput("hermite: bad samples");
  if (x < grid.front() || x > grid.back()) throw InvalidInput("hermite: point outside the grid");
  const double h = (grid.back() - grid.front()) / static_cast<double>(n - 1);
  std::size_t i = static_cast<std::size_t>((x - grid.front()) / h);
  i = std::min(i, n - 2);
  const double hi = grid[i + 1] - grid[i];
  const double t = (x - grid[i]) / hi;
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * f[i] + (t3 - 2 * t2 + t) * hi * fp[i] + (-2 * t3 + 3 * t2) * f[i + 1] +
         (t3 - t2) * hi * fp[i + 1];
}

double foliation_leading_term(const ConeProfile& p, const LinkSpectrum& link, FoliationSide side,
                              ExponentBranch branch, std::optional<double> coeff, double r,
                              double theta, double r_min) {
  if (!coeff) throw MissingCoefficient("foliation: leaf coefficient must be supplied");
  if (!(r >= r_min)) throw InvalidInput("foliation: r below the asymptotic range");
  if (theta < p.lower() || theta > p.upper()) throw InvalidInput("foliation: theta outside the band");
  const LinkMode* first = nullptr;
  for (const auto& m : link.modes) {
    if (m.source.ell == 0 && m.source.k == 1) first = &m;
  }
  if (first == nullptr) throw InvalidInput("foliation: spectrum lacks the first axial mode");
  const Homogeneity h = homogeneity(p.dim, first->pair.lambda);
  if (h.is_complex) throw InvalidInput("foliation: leaves require a strictly stable cone");
  const auto& fn = first->pair.fn;
  const double orient = fn[fn.size() / 2] < 0.0 ? -1.0 : 1.0;
  const double phi = orient * hermite(first->pair.grid, fn, first->pair.fn_prime, theta);
  const double U = r * hermite(p.grid, p.g, p.g_prime, theta);
  const double exponent = -0.5 * (p.dim - 2) + (branch == ExponentBranch::Plus ? h.delta : -h.delta);
  const double sign = side == FoliationSide::Upper ? 1.0 : -1.0;
  return U + sign * (*coeff) * std::pow(r, exponent) * phi;
}

}  // namespace conespec

// SPDX-License-Identifier: Apache-2.0
#include "conespec/sl_engine.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <limits>
#include <string>

#include "conespec/cone_profile.hpp"
#include "conespec/errors.hpp"
#include "conespec/numerics.hpp"

namespace conespec {

using numerics::kHalfPi;
using numerics::kPi;

SLSpec SLSpec::robin(const ConeProfile& p, double mu) {
  SLSpec s;
  s.dim = p.dim;
  s.halfwidth = p.theta0;
  s.mu = mu;
  s.bc = BoundaryKind::Robin;
  s.H = p.H;
  s.grid_n = p.intervals();
  return s;
}

SLSpec SLSpec::dirichlet(int d, double halfwidth, double mu, int grid_n) {
  SLSpec s;
  s.dim = d;
  s.halfwidth = halfwidth;
  s.mu = mu;
  s.bc = BoundaryKind::Dirichlet;
  s.grid_n = grid_n;
  return s;
}

double SLSpec::lower() const { return kHalfPi - halfwidth; }
double SLSpec::upper() const { return kHalfPi + halfwidth; }

std::vector<double> SLSpec::grid() const { return numerics::band_grid(kHalfPi, halfwidth, grid_n); }

void SLSpec::validate() const {
  if (dim < 3) throw InvalidInput("SLSpec: dimension must be >= 3");
  if (!(halfwidth > 0.0) || !(halfwidth < kHalfPi)) {
    throw InvalidInput("SLSpec: band must lie strictly inside (0, pi)");
  }
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw InvalidInput("SLSpec: mu must be finite and >= 0");
  if (bc == BoundaryKind::Robin && !std::isfinite(H)) throw InvalidInput("SLSpec: H must be finite");
  if (grid_n < 8 || grid_n % 2 != 0) throw InvalidInput("SLSpec: grid_n must be even and >= 8");
}

namespace {

// Coefficients sampled on the half-step grid: index 2i is grid node i, 2i+1 the midpoint.
struct Table {
  int n = 0;
  double h = 0.0;
  std::vector<double> p;  // sin^{d-2}
  std::vector<double> q;  // mu sin^{d-4}

  explicit Table(const SLSpec& s) : n(s.grid_n), h(s.halfwidth / (s.grid_n / 2)) {
    const auto fine = numerics::band_grid(kHalfPi, s.halfwidth, 2 * s.grid_n);
    p.resize(fine.size());
    q.resize(fine.size());
    for (std::size_t j = 0; j < fine.size(); ++j) {
      const double sn = std::sin(fine[j]);
      p[j] = std::pow(sn, s.dim - 2);
      q[j] = s.mu * std::pow(sn, s.dim - 4);
    }
  }

  [[nodiscard]] double dphi(int j, double lambda, double phi) const {
    const double c = std::cos(phi);
    const double sn = std::sin(phi);
    return c * c / p[j] + (lambda * p[j] - q[j]) * sn * sn;
  }

  // Phase integrated from node `from` to node `to` (either direction).
  [[nodiscard]] double phase(double lambda, double phi, int from, int to) const {
    const int dir = to > from ? 1 : -1;
    const double step = dir * h;
    for (int i = from; i != to; i += dir) {
      const int j0 = 2 * i;
      const int jm = j0 + dir;
      const int j1 = j0 + 2 * dir;
      const double k1 = dphi(j0, lambda, phi);
      const double k2 = dphi(jm, lambda, phi + 0.5 * step * k1);
      const double k3 = dphi(jm, lambda, phi + 0.5 * step * k2);
      const double k4 = dphi(j1, lambda, phi + step * k3);
      phi += step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return phi;
  }
};

struct Angles {
  double left;
  double right;
};

Angles boundary_angles(const SLSpec& s, const Table& t) {
  if (s.bc == BoundaryKind::Dirichlet) return {0.0, kPi};
  // (g, p g') = rho (sin phi, cos phi); g' = -H g on the left, g' = H g on the right.
  return {std::atan2(1.0, -s.H * t.p.front()), std::atan2(1.0, s.H * t.p.back())};
}

}  // namespace

SLEigenpair eigen_k(const SLSpec& spec, int k, const SolverConfig& cfg) {
  spec.validate();
  if (k < 1) throw InvalidInput("eigen_k: index must be >= 1");
  const Table table(spec);
  const Angles ang = boundary_angles(spec, table);
  const int n = spec.grid_n;
  const int mid = n / 2;
  const bool half_band = spec.mu == 0.0;

  // Increasing in lambda; zero exactly at the k-th eigenvalue.
  auto defect = [&](double lambda) {
    const double left = table.phase(lambda, ang.left, 0, mid);
    if (half_band) return left - k * kHalfPi;
    const double right = table.phase(lambda, ang.right + (k - 1) * kPi, n, mid);
    return left - right;
  };

  int evals = 0;
  constexpr int kCap = 400;
  double lo = -1.0;
  double hi = 1.0;
  double flo = defect(lo);
  double fhi = defect(hi);
  evals += 2;
  while (flo > 0.0) {
    hi = lo;
    fhi = flo;
    lo *= 2.0;
    flo = defect(lo);
    if (++evals > 80) throw BracketFail("eigen_k: no lower bracket for k = " + std::to_string(k));
  }
  while (fhi < 0.0) {
    lo = hi;
    flo = fhi;
    hi *= 2.0;
    fhi = defect(hi);
    if (++evals > 160) throw BracketFail("eigen_k: no upper bracket for k = " + std::to_string(k));
  }

  // Illinois-modified regula falsi with bisection fallback.
  double x = 0.5 * (lo + hi);
  double x_prev = std::numeric_limits<double>::infinity();
  int side = 0;
  bool converged = false;
  while (evals < kCap) {
    double cand = hi - fhi * (hi - lo) / (fhi - flo);
    if (!(cand > lo && cand < hi) || !std::isfinite(cand)) cand = 0.5 * (lo + hi);
    x = cand;
    const double fx = defect(x);
    ++evals;
    if (fx == 0.0 || std::abs(x - x_prev) <= cfg.lam_tol * std::max(1.0, std::abs(x)) * 0.1 ||
        hi - lo <= cfg.lam_tol * std::max(1.0, std::abs(x)) * 0.1) {
      converged = true;
      break;
    }
    x_prev = x;
    if (fx < 0.0) {
      lo = x;
      flo = fx;
      if (side == -1) fhi *= 0.5;
      side = -1;
    } else {
      hi = x;
      fhi = fx;
      if (side == 1) flo *= 0.5;
      side = 1;
    }
  }
  if (!converged) throw NonConvergent("eigen_k: iteration cap reached for k = " + std::to_string(k));

  SLEigenpair out;
  out.k = k;
  out.lambda = x;
  out.iterations = evals;
  out.grid = spec.grid();
  out.fn.resize(n + 1);
  out.fn_prime.resize(n + 1);

  // Integrate (g, p g') inward from both ends and join the halves at the midpoint, so each end
  // condition holds to rounding and the integration error sits in the interior.
  const double lambda = x;
  auto rhs = [&](int j, const std::array<double, 2>& y) {
    return std::array<double, 2>{y[1] / table.p[j], (table.q[j] - lambda * table.p[j]) * y[0]};
  };
  auto sweep = [&](double angle, int from, int to) {
    const int dir = to > from ? 1 : -1;
    const double step = dir * table.h;
    std::array<double, 2> y{std::sin(angle), std::cos(angle)};
    out.fn[from] = y[0];
    out.fn_prime[from] = y[1] / table.p[2 * from];
    for (int i = from; i != to; i += dir) {
      const int j0 = 2 * i;
      const auto k1 = rhs(j0, y);
      const auto k2 = rhs(j0 + dir, {y[0] + 0.5 * step * k1[0], y[1] + 0.5 * step * k1[1]});
      const auto k3 = rhs(j0 + dir, {y[0] + 0.5 * step * k2[0], y[1] + 0.5 * step * k2[1]});
      const auto k4 = rhs(j0 + 2 * dir, {y[0] + step * k3[0], y[1] + step * k3[1]});
      for (int c = 0; c < 2; ++c) y[c] += step / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
      out.fn[i + dir] = y[0];
      out.fn_prime[i + dir] = y[1] / table.p[j0 + 2 * dir];
    }
    return y;
  };
  const auto yr = sweep(ang.right, n, mid);
  const auto yl = sweep(ang.left, 0, mid);
  // Least-squares match of the two (g, p g') states at the midpoint.
  const double join = (yl[0] * yr[0] + yl[1] * yr[1]) / (yr[0] * yr[0] + yr[1] * yr[1]);
  for (int i = mid + 1; i <= n; ++i) {
    out.fn[i] *= join;
    out.fn_prime[i] *= join;
  }
  const double h = table.h;

  std::vector<double> dens(n + 1);
  for (int i = 0; i <= n; ++i) dens[i] = table.p[2 * i] * out.fn[i] * out.fn[i];
  double scale = 1.0 / std::sqrt(numerics::simpson(dens, h));
  const bool flip = out.fn_prime[0] != 0.0 ? out.fn_prime[0] < 0.0 : out.fn[0] < 0.0;
  if (flip) scale = -scale;
  for (int i = 0; i <= n; ++i) {
    out.fn[i] *= scale;
    out.fn_prime[i] *= scale;
  }

  // Dirichlet end values are zero up to integration error; their sign is meaningless.
  const std::span<const double> all(out.fn);
  out.nodes = spec.bc == BoundaryKind::Dirichlet ? numerics::sign_changes(all.subspan(1, n - 1), 1e-9)
                                                 : numerics::sign_changes(all, 1e-9);
  if (spec.bc == BoundaryKind::Robin) {
    out.bc_residual_left = std::abs(out.fn_prime.front() + spec.H * out.fn.front());
    out.bc_residual_right = std::abs(-out.fn_prime.back() + spec.H * out.fn.back());
  } else {
    out.bc_residual_left = std::abs(out.fn.front());
    out.bc_residual_right = std::abs(out.fn.back());
  }
  if (out.nodes != k - 1) {
    throw BracketFail("eigen_k: eigenfunction " + std::to_string(k) + " has " +
                      std::to_string(out.nodes) + " nodes; grid too coarse");
  }
  return out;
}

namespace {

struct Tridiag {
  std::vector<double> diag;
  std::vector<double> off;  // off[i] couples i and i+1
};

// M^{-1/2} K M^{-1/2} for the lumped-mass discretization.
Tridiag fd_matrix(const SLSpec& s, int n) {
  const double h = s.halfwidth / (n / 2);
  const auto x = numerics::band_grid(kHalfPi, s.halfwidth, n);
  std::vector<double> pm(n);
  for (int i = 0; i < n; ++i) pm[i] = std::pow(std::sin(0.5 * (x[i] + x[i + 1])), s.dim - 2);
  std::vector<double> kd(n + 1, 0.0);
  std::vector<double> ko(n, 0.0);
  std::vector<double> mass(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double sn = std::sin(x[i]);
    const double m = (i == 0 || i == n) ? 0.5 * h : h;
    mass[i] = m * std::pow(sn, s.dim - 2);
    kd[i] = m * s.mu * std::pow(sn, s.dim - 4);
    if (i > 0) kd[i] += pm[i - 1] / h;
    if (i < n) kd[i] += pm[i] / h;
  }
  for (int i = 0; i < n; ++i) ko[i] = -pm[i] / h;
  int first = 0;
  int last = n;
  if (s.bc == BoundaryKind::Robin) {
    kd[0] -= s.H * std::pow(std::sin(x[0]), s.dim - 2);
    kd[n] -= s.H * std::pow(std::sin(x[n]), s.dim - 2);
  } else {
    first = 1;
    last = n - 1;
  }
  Tridiag t;
  for (int i = first; i <= last; ++i) {
    t.diag.push_back(kd[i] / mass[i]);
    if (i < last) t.off.push_back(ko[i] / std::sqrt(mass[i] * mass[i + 1]));
  }
  return t;
}

int count_below(const Tridiag& t, double x) {
  int count = 0;
  double d = 1.0;
  for (std::size_t i = 0; i < t.diag.size(); ++i) {
    const double b2 = i == 0 ? 0.0 : t.off[i - 1] * t.off[i - 1];
    d = (t.diag[i] - x) - (i == 0 ? 0.0 : b2 / d);
    if (d == 0.0) d = -1e-300;
    if (d < 0.0) ++count;
  }
  return count;
}

}  // namespace

std::vector<double> eigen_fd(const SLSpec& spec, int count, int grid_n) {
  spec.validate();
  if (count < 1) throw InvalidInput("eigen_fd: count must be >= 1");
  if (grid_n < 8 || grid_n % 2 != 0) throw InvalidInput("eigen_fd: grid_n must be even and >= 8");
  const Tridiag t = fd_matrix(spec, grid_n);
  if (static_cast<int>(t.diag.size()) < count) throw InvalidInput("eigen_fd: grid too small");
  double gmin = std::numeric_limits<double>::infinity();
  double gmax = -gmin;
  for (std::size_t i = 0; i < t.diag.size(); ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(t.off[i - 1]);
    if (i < t.off.size()) r += std::abs(t.off[i]);
    gmin = std::min(gmin, t.diag[i] - r);
    gmax = std::max(gmax, t.diag[i] + r);
  }
  std::vector<double> out;
  double floor = gmin;
  for (int j = 0; j < count; ++j) {
    double lo = floor;
    double hi = gmax;
    for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(lo)); ++it) {
      const double m = 0.5 * (lo + hi);
      (count_below(t, m) >= j + 1 ? hi : lo) = m;
    }
    out.push_back(0.5 * (lo + hi));
    floor = lo;
  }
  return out;
}

std::vector<double> eigen_fd_crosscheck(const SLSpec& spec, int count) {
  const auto coarse = eigen_fd(spec, count, spec.grid_n);
  const auto fine = eigen_fd(spec, count, 2 * spec.grid_n);
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
  return out;
}

double rayleigh(const SLSpec& spec, std::span<const double> g, std::span<const double> g_prime) {
  spec.validate();
  const auto x = spec.grid();
  if (g.size() != x.size() || g_prime.size() != x.size()) {
    throw InvalidInput("rayleigh: samples must match the spec grid");
  }
  const double h = spec.halfwidth / (spec.grid_n / 2);
  std::vector<double> num(x.size());
  std::vector<double> den(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double sn = std::sin(x[i]);
    const double p = std::pow(sn, spec.dim - 2);
    num[i] = p * g_prime[i] * g_prime[i] + spec.mu * std::pow(sn, spec.dim - 4) * g[i] * g[i];
    den[i] = p * g[i] * g[i];
  }
  double top = numerics::simpson(num, h);
  if (spec.bc == BoundaryKind::Robin) {
    top -= spec.H * (std::pow(std::sin(x.front()), spec.dim - 2) * g.front() * g.front() +
                     std::pow(std::sin(x.back()), spec.dim - 2) * g.back() * g.back());
  }
  const double bottom = numerics::simpson(den, h);
  if (!(bottom > 0.0) || !std::isfinite(bottom)) throw ZeroDenominator("rayleigh: zero weighted norm");
  return top / bottom;
}

double rayleigh(const SLSpec& spec, std::span<const double> g) {
  const double h = spec.halfwidth / (spec.grid_n / 2);
  const auto gp = numerics::derivative4(g, h);
  return rayleigh(spec, g, gp);
}

}  // namespace conespec

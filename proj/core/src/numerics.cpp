// SPDX-License-Identifier: Apache-2.0
#include "conespec/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "conespec/errors.hpp"

namespace conespec::numerics {

std::vector<double> band_grid(double center, double halfwidth, int n) {
  if (n < 2 || n % 2 != 0) throw InvalidInput("band_grid: interval count must be even and >= 2");
  if (!(halfwidth > 0.0)) throw InvalidInput("band_grid: halfwidth must be positive");
  const int half = n / 2;
  const double h = halfwidth / half;
  std::vector<double> grid(static_cast<std::size_t>(n) + 1);
  grid[half] = center;
  for (int j = 1; j < half; ++j) {
    grid[half + j] = center + j * h;
    grid[half - j] = center - j * h;
  }
  grid[n] = center + halfwidth;
  grid[0] = center - halfwidth;
  return grid;
}

std::vector<double> geometric_grid(double r0, double r_max, int points_per_octave) {
  if (!(r0 > 0.0) || !(r_max > r0) || points_per_octave < 1) {
    throw InvalidInput("geometric_grid: need 0 < r0 < r_max and a positive density");
  }
  const double octaves = std::log2(r_max / r0);
  const int n = static_cast<int>(std::ceil(octaves * points_per_octave - 1e-9));
  std::vector<double> r(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) r[i] = r0 * std::exp2(static_cast<double>(i) / points_per_octave);
  r[n] = std::min(r[n], r_max);
  return r;
}

double simpson(std::span<const double> f, double h) {
  const std::size_t n = f.size() - 1;
  if (f.size() < 3 || n % 2 != 0) throw InvalidInput("simpson: need an even number of intervals");
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t i = 1; i < n; ++i) (i % 2 ? odd : even) += f[i];
  return h / 3.0 * (f.front() + f.back() + 4.0 * odd + 2.0 * even);
}

double boole(std::span<const double> f, double h) {
  const std::size_t n = f.size() - 1;
  if (f.size() < 5 || n % 4 != 0) throw InvalidInput("boole: interval count must be a multiple of 4");
  double s = 0.0;
  for (std::size_t i = 0; i < n; i += 4) {
    s += 7.0 * (f[i] + f[i + 4]) + 32.0 * (f[i + 1] + f[i + 3]) + 12.0 * f[i + 2];
  }
  return 2.0 * h / 45.0 * s;
}

namespace {

GaussRule build_gauss(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 2) throw InvalidInput("gauss_legendre: need at least 2 nodes");
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_gauss(n)).first;
  return it->second;
}

double sphere_area(int n) {
  if (n < 0) throw InvalidInput("sphere_area: negative dimension");
  return 2.0 * std::pow(kPi, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1));
}

double sin_power_integral(int n, double lo, double hi) {
  if (n < 0) throw InvalidInput("sin_power_integral: negative exponent");
  if (n == 0) return hi - lo;
  if (n == 1) return std::cos(lo) - std::cos(hi);
  auto boundary = [n](double t) { return -std::pow(std::sin(t), n - 1) * std::cos(t) / n; };
  return boundary(hi) - boundary(lo) + (n - 1.0) / n * sin_power_integral(n - 2, lo, hi);
}

double csc_power_integral(int n, double lo, double hi) {
  if (n < 0) throw InvalidInput("csc_power_integral: negative exponent");
  if (!(lo > 0.0 && hi < kPi && lo <= hi)) throw InvalidInput("csc_power_integral: need 0 < lo <= hi < pi");
  if (n == 0) return hi - lo;
  if (n == 1) return std::log(std::tan(0.5 * hi)) - std::log(std::tan(0.5 * lo));
  auto boundary = [n](double t) {
    return -std::cos(t) * std::pow(std::sin(t), -(n - 1)) / (n - 1.0);
  };
  return boundary(hi) - boundary(lo) + (n - 2.0) / (n - 1.0) * csc_power_integral(n - 2, lo, hi);
}

int sign_changes(std::span<const double> v, double zero_tol) {
  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::abs(x));
  const double cut = zero_tol * vmax;
  int changes = 0;
  int last = 0;
  for (double x : v) {
    if (std::abs(x) <= cut) continue;
    const int s = x > 0 ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

std::vector<double> derivative4(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  if (n < 5) throw InvalidInput("derivative4: need at least 5 samples");
  std::vector<double> d(n);
  const double c = 1.0 / (12.0 * h);
  d[0] = c * (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]);
  d[1] = c * (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]);
  for (std::size_t i = 2; i + 2 < n; ++i) d[i] = c * (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]);
  d[n - 2] = -c * (-3.0 * f[n - 1] - 10.0 * f[n - 2] + 18.0 * f[n - 3] - 6.0 * f[n - 4] + f[n - 5]);
  d[n - 1] = -c * (-25.0 * f[n - 1] + 48.0 * f[n - 2] - 36.0 * f[n - 3] + 16.0 * f[n - 4] - 3.0 * f[n - 5]);
  return d;
}

double loglog_slope(std::span<const double> x, std::span<const double> y, double x_min) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int m = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < x_min || !(std::abs(y[i]) > 0.0)) continue;
    const double lx = std::log(x[i]);
    const double ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (m < 2) throw InvalidInput("loglog_slope: fewer than two usable samples");
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace conespec::numerics

// SPDX-License-Identifier: Apache-2.0
#include "conespec/link_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "conespec/cone_profile.hpp"
#include "conespec/errors.hpp"
#include "conespec/numerics.hpp"
#include "conespec/sphere_modes.hpp"

namespace conespec {

Homogeneity homogeneity(int d, double lambda, double tol) {
  Homogeneity h;
  const double half = 0.5 * (d - 2);
  h.radicand = half * half + lambda;
  if (std::abs(h.radicand) <= tol) {
    h.log_mode = true;
    h.delta = 0.0;
  } else if (h.radicand < 0.0) {
    h.is_complex = true;
    h.delta = std::sqrt(-h.radicand);
  } else {
    h.delta = std::sqrt(h.radicand);
  }
  if (h.is_complex) {
    h.gamma_plus = -half;
    h.gamma_minus = -half;
  } else {
    h.gamma_plus = -half + h.delta;
    h.gamma_minus = -half - h.delta;
  }
  return h;
}

std::vector<const LinkMode*> LinkSpectrum::modes_of(int ell) const {
  std::vector<const LinkMode*> out;
  for (const auto& m : modes) {
    if (m.source.ell == ell) out.push_back(&m);
  }
  std::sort(out.begin(), out.end(),
            [](const LinkMode* a, const LinkMode* b) { return a->source.k < b->source.k; });
  return out;
}

LinkSpectrum assemble(const ConeProfile& p, double lambda_max, const SolverConfig& cfg) {
  const int d = p.dim;
  if (!(lambda_max > d - 1)) throw InvalidInput("assemble: lambda_max must exceed d-1");
  LinkSpectrum out;
  out.dim = d;
  out.lambda_max = lambda_max;

  const double base = eigen_k(SLSpec::robin(p, 0.0), 1, cfg).lambda;
  for (int ell = 0;; ++ell) {
    const SphereMode sm = sphere_mode(d, ell);
    if (sm.mu + base > lambda_max) break;
    const SLSpec spec = SLSpec::robin(p, sm.mu);
    for (int k = 1;; ++k) {
      SLEigenpair e = eigen_k(spec, k, cfg);
      if (e.lambda > lambda_max) break;
      out.modes.push_back({{ell, k, sm.mu, sm.multiplicity}, std::move(e)});
    }
  }
  std::sort(out.modes.begin(), out.modes.end(), [](const LinkMode& a, const LinkMode& b) {
    if (a.pair.lambda != b.pair.lambda) return a.pair.lambda < b.pair.lambda;
    if (a.source.ell != b.source.ell) return a.source.ell < b.source.ell;
    return a.source.k < b.source.k;
  });

  double previous = 0.0;
  std::vector<double> weighted;
  for (const auto& m : out.modes) {
    if (out.eigenvalues.empty() || m.pair.lambda - previous > cfg.cluster_tol) {
      out.eigenvalues.push_back({m.pair.lambda, 0, {}, {}});
      weighted.push_back(0.0);
    }
    previous = m.pair.lambda;
    auto& c = out.eigenvalues.back();
    c.sources.push_back(m.source);
    c.multiplicity += m.source.multiplicity;
    weighted.back() += m.pair.lambda * static_cast<double>(m.source.multiplicity);
  }
  for (std::size_t i = 0; i < out.eigenvalues.size(); ++i) {
    auto& c = out.eigenvalues[i];
    c.lambda = weighted[i] / static_cast<double>(c.multiplicity);
    c.homogeneity = homogeneity(d, c.lambda);
  }
  return out;
}

double aligned_error(int d, const std::vector<double>& grid, const std::vector<double>& f,
                     const std::vector<double>& ref) {
  if (grid.size() != f.size() || grid.size() != ref.size()) {
    throw InvalidInput("aligned_error: size mismatch");
  }
  const double h = grid[1] - grid[0];
  std::vector<double> w(grid.size());
  std::vector<double> fr(grid.size());
  std::vector<double> rr(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    w[i] = std::pow(std::sin(grid[i]), d - 2);
    fr[i] = w[i] * f[i] * ref[i];
    rr[i] = w[i] * ref[i] * ref[i];
  }
  const double c = numerics::simpson(rr, h);
  if (!(c > 0.0)) throw ZeroDenominator("aligned_error: zero reference");
  // |f - t ref| / |f| at the optimal t, evaluated directly to avoid cancellation in 1 - cos^2.
  const double t = numerics::simpson(fr, h) / c;
  std::vector<double> ee(grid.size());
  std::vector<double> ff(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double e = f[i] - t * ref[i];
    ee[i] = w[i] * e * e;
    ff[i] = w[i] * f[i] * f[i];
  }
  const double a = numerics::simpson(ff, h);
  if (!(a > 0.0)) throw ZeroDenominator("aligned_error: zero function");
  return std::sqrt(std::max(0.0, numerics::simpson(ee, h)) / a);
}

namespace {

const LinkMode* find_mode(const LinkSpectrum& s, int ell, int k) {
  for (const auto& m : s.modes) {
    if (m.source.ell == ell && m.source.k == k) return &m;
  }
  return nullptr;
}

}  // namespace

IntegrabilityReport verify_strong_integrability(const ConeProfile& p, const SolverConfig& cfg) {
  const int d = p.dim;
  IntegrabilityReport r;
  r.dim = d;
  double lambda_max = 3.0 * (d - 1);
  for (int attempt = 0;; ++attempt) {
    r.spectrum = assemble(p, lambda_max, cfg);
    const bool above = std::any_of(r.spectrum.eigenvalues.begin(), r.spectrum.eigenvalues.end(),
                                   [&](const LinkEigenvalue& e) {
                                     return e.lambda > d - 1 + cfg.cluster_tol;
                                   });
    if (above) break;
    if (attempt >= 6) throw NonConvergent("verify: no eigenvalue found above d-1");
    lambda_max *= 2.0;
  }
  const auto& ev = r.spectrum.eigenvalues;
  r.lambda1 = ev.front().lambda;
  r.stability_margin = r.lambda1 + 0.25 * (d - 2) * (d - 2);
  r.strictly_stable = r.stability_margin > 0.0;

  r.no_other_below = true;
  bool gap_set = false;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    const double lam = ev[i].lambda;
    if (std::abs(lam) <= cfg.cluster_tol) {
      r.dim_kernel0 = ev[i].multiplicity;
    } else if (std::abs(lam - (d - 1)) <= cfg.cluster_tol) {
      r.dim_kernel_d_minus_1 = ev[i].multiplicity;
    } else if (lam > d - 1) {
      if (!gap_set) {
        r.gap_above = lam;
        gap_set = true;
      }
    } else if (i != 0) {
      r.no_other_below = false;
    }
  }

  const JacobiFields jf = jacobi_fields(p);
  auto match = [&](int ell, int k, const std::vector<double>& ref) {
    const LinkMode* m = find_mode(r.spectrum, ell, k);
    if (m == nullptr) return 1.0;
    return aligned_error(d, m->pair.grid, m->pair.fn, ref);
  };
  r.axial_error = match(0, 2, jf.axial);
  r.transverse_error = match(1, 1, jf.transverse);
  r.rotation_error = match(1, 2, jf.rotation);
  r.fields_identified = r.axial_error <= cfg.fn_tol && r.transverse_error <= cfg.fn_tol &&
                        r.rotation_error <= cfg.fn_tol;

  // A cluster with several sources must be explained by the Jacobi fields.
  for (const auto& e : ev) {
    if (e.sources.size() < 2) continue;
    for (const auto& src : e.sources) {
      double err = 1.0;
      if (src.ell == 0 && src.k == 2) err = r.axial_error;
      if (src.ell == 1 && src.k == 1) err = r.transverse_error;
      if (src.ell == 1 && src.k == 2) err = r.rotation_error;
      if (err > cfg.fn_tol) {
        throw AmbiguousCluster("verify: eigenvalue cluster near " + std::to_string(e.lambda) +
                               " not explained by a Jacobi field (ell=" + std::to_string(src.ell) +
                               ", k=" + std::to_string(src.k) + ")");
      }
    }
  }

  r.verdict = r.strictly_stable && r.dim_kernel0 == d && r.dim_kernel_d_minus_1 == d - 1 &&
              r.no_other_below && r.fields_identified;
  return r;
}

std::vector<double> decay_exponents(const std::vector<LinkEigenvalue>& spectrum) {
  std::vector<double> out;
  for (const auto& e : spectrum) {
    out.push_back(e.homogeneity.gamma_plus);
    out.push_back(e.homogeneity.gamma_minus);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double a, double b) { return std::abs(a - b) <= 1e-12; }),
            out.end());
  return out;
}

}  // namespace conespec

// SPDX-License-Identifier: Apache-2.0
#include "conespec/particular_solution.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "conespec/cone_profile.hpp"
#include "conespec/errors.hpp"
#include "conespec/link_spectrum.hpp"
#include "conespec/numerics.hpp"
#include "conespec/sphere_modes.hpp"

namespace conespec {

namespace {

constexpr int kGaussPoints = 12;

// int_lo^hi g(t) dt with g given as t -> g(t) * t, Gauss-Legendre in x = log t.
template <class F>
double log_gauss(double lo, double hi, F&& g_times_t) {
  if (lo == hi) return 0.0;
  const auto& rule = numerics::gauss_legendre(kGaussPoints);
  const double xa = std::log(lo);
  const double xb = std::log(hi);
  const double half = 0.5 * (xb - xa);
  const double mid = 0.5 * (xb + xa);
  double s = 0.0;
  for (int i = 0; i < kGaussPoints; ++i) {
    s += rule.weights[i] * g_times_t(std::exp(mid + half * rule.nodes[i]));
  }
  return half * s;
}

double band_inner(int d, const std::vector<double>& theta, const std::vector<double>& a,
                  const std::vector<double>& b) {
  std::vector<double> v(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    v[i] = std::pow(std::sin(theta[i]), d - 2) * a[i] * b[i];
  }
  return numerics::simpson(v, theta[1] - theta[0]);
}

void sample(RadialComponent& c, const std::vector<double>& r) {
  c.c.resize(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) c.c[i] = c.law(r[i]);
}

std::function<double(double)> power_law(double coeff, double exponent) {
  return [coeff, exponent](double r) { return coeff * std::pow(r, exponent); };
}

const BoundaryMode& find_bmode(const std::vector<BoundaryMode>& bmodes, const SourceMode& s) {
  for (const auto& b : bmodes) {
    if (b.ell == s.ell && b.parity == s.parity) return b;
  }
  throw InvalidInput("source references boundary mode (ell=" + std::to_string(s.ell) + ", " +
                     to_string(s.parity) + ") that was not supplied");
}

// Sixth-order central first and second derivatives in x = log r.
struct LogDerivatives {
  double value;
  double d1;
  double d2;
};

template <class F>
LogDerivatives log_derivatives(F&& u, double r, double hx) {
  double v[7];
  for (int j = -3; j <= 3; ++j) v[j + 3] = u(r * std::exp(j * hx));
  const double d1 = (-v[0] + 9.0 * v[1] - 45.0 * v[2] + 45.0 * v[4] - 9.0 * v[5] + v[6]) / (60.0 * hx);
  const double d2 = (2.0 * v[0] - 27.0 * v[1] + 270.0 * v[2] - 490.0 * v[3] + 270.0 * v[4] -
                     27.0 * v[5] + 2.0 * v[6]) /
                    (180.0 * hx * hx);
  return {v[3], d1, d2};
}

}  // namespace

RadialSource RadialSource::power(double coeff, double exponent) {
  return {power_law(coeff, exponent), PowerTerm{coeff, exponent}};
}

LimitChoice select_limits(int d, double delta, double beta, double tol) {
  const double ea = 0.5 * d + delta - beta;
  const double eb = 0.5 * d - delta - beta;
  if (std::abs(ea) <= tol || std::abs(eb) <= tol) {
    throw ResonantExponent("d/2 +- delta - beta vanishes (delta=" + std::to_string(delta) +
                           ", beta=" + std::to_string(beta) + ")");
  }
  return {ea > 0.0 ? Limit::R0 : Limit::Infinity, eb > 0.0 ? Limit::R0 : Limit::Infinity};
}

CauchyEulerSolution::CauchyEulerSolution(int d, double lambda, RadialSource f, double beta,
                                         std::vector<double> r_grid,
                                         std::optional<LimitChoice> override_limits)
    : d_(d), lambda_(lambda), f_(std::move(f)), r_(std::move(r_grid)) {
  if (r_.size() < 2 || !(r_.front() > 0.0)) throw InvalidInput("CauchyEuler: invalid radial grid");
  if (!std::is_sorted(r_.begin(), r_.end())) throw InvalidInput("CauchyEuler: grid must increase");
  const Homogeneity h = homogeneity(d, lambda);
  if (h.is_complex) {
    throw InvalidInput("CauchyEuler: complex homogeneity; the construction needs a strictly stable cone");
  }
  delta_ = h.delta;
  limits_ = override_limits ? *override_limits : select_limits(d, delta_, beta);

  // Both integrals are carried in scaled form so that no intermediate power of r over- or
  // underflows: Ihat(s) = s^{-q} int_a^s t^q f dt with q = delta + d/2, and
  // uhat(r) = u(r) / r = int_b^r (s/r)^p Ihat(s) ds/s with p = d/2 - delta.
  const double q = delta_ + 0.5 * d;
  const std::size_t n = r_.size() - 1;
  const double rmax = r_.back();
  const bool need_tail = limits_.a == Limit::Infinity || limits_.b == Limit::Infinity;
  if (need_tail && !f_.tail) {
    throw TailDivergence("CauchyEuler: infinite limit needs a power-law tail beyond r_max");
  }
  const double tc = f_.tail ? f_.tail->coeff : 0.0;
  const double e1 = f_.tail ? q + f_.tail->exponent + 1.0 : 0.0;  // I(s) ~ s^{e1}

  inode_.assign(n + 1, 0.0);
  if (limits_.a == Limit::R0) {
    for (std::size_t i = 0; i < n; ++i) inode_[i + 1] = inner(i, r_[i + 1]);
  } else {
    if (!(e1 < 0.0)) throw TailDivergence("CauchyEuler: inner integral diverges at infinity");
    inode_[n] = tc * std::pow(rmax, e1 - q) / e1;  // -int_rmax^inf c t^{e1-1} dt, scaled
    for (std::size_t i = n; i > 0; --i) inode_[i - 1] = inner(i - 1, r_[i - 1]);
  }

  jnode_.assign(n + 1, 0.0);
  if (limits_.b == Limit::R0) {
    for (std::size_t i = 0; i < n; ++i) jnode_[i + 1] = outer(i, r_[i + 1]);
  } else {
    // Beyond r_max, I(s) = A + B s^{e1}.
    if (e1 == 0.0) throw ResonantExponent("CauchyEuler: logarithmic inner tail");
    const double B = tc / e1;
    const double A_scaled =
        limits_.a == Limit::R0 ? inode_[n] - B * std::pow(rmax, e1 - q) : 0.0;  // A rmax^{-q}
    if (A_scaled != 0.0 && !(delta_ > 0.0)) {
      throw TailDivergence("CauchyEuler: outer integral diverges at infinity");
    }
    if (B != 0.0 && !(e1 - 2.0 * delta_ < 0.0)) {
      throw TailDivergence("CauchyEuler: outer integral diverges at infinity");
    }
    double tail = 0.0;
    if (A_scaled != 0.0) tail += A_scaled / (2.0 * delta_);
    if (B != 0.0) tail -= B * std::pow(rmax, e1 - q) / (e1 - 2.0 * delta_);
    jnode_[n] = -tail;
    for (std::size_t i = n; i > 0; --i) jnode_[i - 1] = outer(i - 1, r_[i - 1]);
  }

  u_.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) u_[i] = r_[i] * jnode_[i];
  for (double v : u_) {
    if (!std::isfinite(v)) throw EvaluationUnstable("CauchyEuler: non-finite solution on the grid");
  }
}

std::size_t CauchyEulerSolution::panel(double r) const {
  const auto it = std::upper_bound(r_.begin(), r_.end(), r);
  std::size_t i = it == r_.begin() ? 0 : static_cast<std::size_t>(it - r_.begin()) - 1;
  return std::min(i, r_.size() - 2);
}

double CauchyEulerSolution::inner(std::size_t i, double s) const {
  const double q = delta_ + 0.5 * d_;
  auto gi = [&](double t) { return std::pow(t / s, q) * t * f_.f(t); };
  if (limits_.a == Limit::R0) return std::pow(r_[i] / s, q) * inode_[i] + log_gauss(r_[i], s, gi);
  return std::pow(r_[i + 1] / s, q) * inode_[i + 1] - log_gauss(s, r_[i + 1], gi);
}

double CauchyEulerSolution::outer(std::size_t i, double r) const {
  const double p = 0.5 * d_ - delta_;
  auto go = [&](double s) { return std::pow(s / r, p) * inner(i, s); };
  if (limits_.b == Limit::R0) return std::pow(r_[i] / r, p) * jnode_[i] + log_gauss(r_[i], r, go);
  return std::pow(r_[i + 1] / r, p) * jnode_[i + 1] - log_gauss(r, r_[i + 1], go);
}

double CauchyEulerSolution::operator()(double r) const {
  if (!(r > 0.0)) throw InvalidInput("CauchyEuler: radius must be positive");
  return r * outer(panel(r), r);
}

double CauchyEulerSolution::residual(double r, double hx) const {
  const auto ld = log_derivatives([this](double x) { return (*this)(x); }, r, hx);
  return ld.d2 + (d_ - 2) * ld.d1 - lambda_ * ld.value - r * r * f_.f(r);
}

std::vector<int> RadialField::degrees() const {
  std::vector<int> out;
  for (const auto& c : components) out.push_back(c.ell);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<double> RadialField::mode_norm() const {
  std::vector<double> norm2(r.size(), 0.0);
  for (int ell : degrees()) {
    std::vector<const RadialComponent*> cs;
    for (const auto& c : components) {
      if (c.ell == ell) cs.push_back(&c);
    }
    const std::size_t m = cs.size();
    std::vector<double> gram(m * m);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a; b < m; ++b) {
        gram[a * m + b] = gram[b * m + a] = band_inner(dim, theta, cs[a]->profile, cs[b]->profile);
      }
    }
    for (std::size_t i = 0; i < r.size(); ++i) {
      double s = 0.0;
      for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) s += cs[a]->c[i] * cs[b]->c[i] * gram[a * m + b];
      }
      norm2[i] += std::max(s, 0.0);
    }
  }
  for (auto& v : norm2) v = std::sqrt(v);
  return norm2;
}

std::vector<double> RadialField::profile_at(int ell, double radius) const {
  std::vector<double> v(theta.size(), 0.0);
  for (const auto& c : components) {
    if (c.ell != ell) continue;
    const double a = c.law(radius);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += a * c.profile[i];
  }
  return v;
}

double SourceSpec::scale() const {
  double s = 0.0;
  for (const auto& m : modes) s += m.amplitude * m.amplitude;
  return std::sqrt(s);
}

bool admissible(const SourceSpec& src, int d, const std::vector<double>& lambdas, double tol) {
  for (double lam : lambdas) {
    const Homogeneity h = homogeneity(d, lam);
    if (h.is_complex) continue;
    if (std::abs(0.5 * d + h.delta - src.beta) <= tol) return false;
    if (std::abs(0.5 * d - h.delta - src.beta) <= tol) return false;
  }
  return true;
}

TransferResult transfer_boundary(const SourceSpec& src, const std::vector<BoundaryMode>& bmodes,
                                 const ConeProfile& p, const std::vector<double>& r_grid,
                                 const SolverConfig& cfg) {
  if (!(src.beta > 0.0)) throw InvalidInput("transfer_boundary: beta must be positive");
  const int d = p.dim;
  const double beta = src.beta;
  const double kappa = (1.0 - beta) * (d - 1.0 - beta);
  TransferResult out;
  for (RadialField* f : {&out.u1, &out.f}) {
    f->dim = d;
    f->beta = beta;
    f->theta = p.grid;
    f->r = r_grid;
  }
  const std::size_t n = p.grid.size();
  for (const auto& s : src.modes) {
    const BoundaryMode& bm = find_bmode(bmodes, s);
    if (bm.psi.size() != n) throw InvalidInput("transfer_boundary: boundary mode grid mismatch");
    const bool resonant = bm.in_resonance;
    if (!resonant && std::abs(bm.ell_k) <= cfg.res_tol) {
      throw ResonanceDivision("transfer_boundary: vanishing ell_k outside the resonance set");
    }
    RadialComponent u;
    RadialComponent f;
    u.ell = f.ell = s.ell;
    u.profile.resize(n);
    u.profile_prime.resize(n);
    f.profile.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double psi = bm.psi[i];
      const double dpsi = bm.psi_prime[i];
      if (resonant) {
        const double g = p.g[i];
        const double dg = p.g_prime[i];
        u.profile[i] = g * psi;
        u.profile_prime[i] = dg * psi + g * dpsi;
        f.profile[i] = kappa * g * psi - (d - 1.0) * g * psi + 2.0 * dg * dpsi;
      } else {
        u.profile[i] = psi / bm.ell_k;
        u.profile_prime[i] = dpsi / bm.ell_k;
        f.profile[i] = kappa * psi / bm.ell_k;
      }
    }
    f.profile_prime = numerics::derivative4(f.profile, p.step());
    u.law = power_law(s.amplitude, 1.0 - beta);
    f.law = power_law(s.amplitude, -1.0 - beta);
    sample(u, r_grid);
    sample(f, r_grid);
    out.u1.components.push_back(std::move(u));
    out.f.components.push_back(std::move(f));
  }
  return out;
}

const std::vector<SLEigenpair>& InteriorBasis::of(int ell) const {
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (degrees[i] == ell) return modes[i];
  }
  throw InvalidInput("InteriorBasis: degree " + std::to_string(ell) + " not computed");
}

InteriorBasis interior_basis(const ConeProfile& p, const std::vector<int>& degrees, int per_degree,
                             const SolverConfig& cfg) {
  if (per_degree < 1) throw InvalidInput("interior_basis: need at least one mode per degree");
  InteriorBasis b;
  b.dim = p.dim;
  for (int ell : degrees) {
    const SLSpec spec = SLSpec::robin(p, sphere_mode_eigenvalue(p.dim, ell));
    std::vector<SLEigenpair> pairs;
    for (int k = 1; k <= per_degree; ++k) pairs.push_back(eigen_k(spec, k, cfg));
    b.degrees.push_back(ell);
    b.modes.push_back(std::move(pairs));
  }
  return b;
}

RadialField project(const RadialField& field, const InteriorBasis& basis, double exponent) {
  RadialField out;
  out.dim = field.dim;
  out.beta = field.beta;
  out.theta = field.theta;
  out.r = field.r;
  const double r0 = field.r.front();
  for (int ell : field.degrees()) {
    for (const auto& mode : basis.of(ell)) {
      double w = 0.0;
      for (const auto& c : field.components) {
        if (c.ell != ell) continue;
        w += c.c.front() / std::pow(r0, exponent) * band_inner(field.dim, field.theta, c.profile, mode.fn);
      }
      RadialComponent rc;
      rc.ell = ell;
      rc.k = mode.k;
      rc.lambda = mode.lambda;
      rc.profile = mode.fn;
      rc.profile_prime = mode.fn_prime;
      rc.law = power_law(w, exponent);
      sample(rc, out.r);
      out.components.push_back(std::move(rc));
    }
  }
  return out;
}

RadialField solve_radial_modes(const RadialField& f, double beta, const SolverConfig& cfg,
                               const std::vector<LimitOverride>& overrides,
                               std::vector<RadialModeReport>* reports) {
  (void)cfg;
  RadialField out;
  out.dim = f.dim;
  out.beta = beta;
  out.theta = f.theta;
  out.r = f.r;
  const double r0 = f.r.front();
  for (const auto& c : f.components) {
    if (c.k < 1) throw InvalidInput("solve_radial_modes: components must be interior Robin modes");
    const double w = c.c.front() / std::pow(r0, -1.0 - beta);
    std::optional<LimitChoice> lim;
    for (const auto& o : overrides) {
      if (o.ell == c.ell && o.k == c.k) lim = o.limits;
    }
    RadialModeReport rep;
    rep.ell = c.ell;
    rep.k = c.k;
    rep.lambda = c.lambda;
    rep.weight = w;
    RadialComponent u;
    u.ell = c.ell;
    u.k = c.k;
    u.lambda = c.lambda;
    u.profile = c.profile;
    u.profile_prime = c.profile_prime;
    const Homogeneity h = homogeneity(f.dim, c.lambda);
    rep.delta = h.delta;
    if (w == 0.0) {
      rep.limits = lim ? *lim : select_limits(f.dim, h.delta, beta);
      u.law = [](double) { return 0.0; };
    } else {
      auto ce = std::make_shared<CauchyEulerSolution>(f.dim, c.lambda, RadialSource::power(w, -1.0 - beta),
                                                      beta, f.r, lim);
      rep.limits = ce->limits();
      u.law = [ce](double r) { return (*ce)(r); };
      for (std::size_t i = 1; i + 1 < f.r.size(); ++i) {
        const double scale = std::abs(w) * std::pow(f.r[i], 1.0 - beta);
        rep.ode_residual = std::max(rep.ode_residual, std::abs(ce->residual(f.r[i])) / scale);
      }
    }
    sample(u, out.r);
    out.components.push_back(std::move(u));
    if (reports) reports->push_back(rep);
  }
  return out;
}

double interior_residual(const RadialField& u, const SourceSpec& src, const ConeProfile& p,
                         const std::vector<BoundaryMode>& bmodes, const InteriorBasis& basis) {
  const int d = p.dim;
  const double beta = src.beta;
  const double scale = std::max(src.scale(), 1e-300);
  const double cb = std::pow(std::cos(p.theta0), d - 2);
  constexpr double hx = 2e-3;
  double worst = 0.0;
  for (int ell : basis.degrees) {
    std::vector<const RadialComponent*> cs;
    for (const auto& c : u.components) {
      if (c.ell == ell) cs.push_back(&c);
    }
    for (const auto& mode : basis.of(ell)) {
      std::vector<double> proj;
      for (const auto* c : cs) proj.push_back(band_inner(d, u.theta, c->profile, mode.fn));
      double trace = 0.0;
      for (const auto& s : src.modes) {
        if (s.ell != ell) continue;
        const BoundaryMode& bm = find_bmode(bmodes, s);
        trace += s.amplitude * cb * (bm.psi.front() * mode.fn.front() + bm.psi.back() * mode.fn.back());
      }
      auto coeff = [&](double r) {
        double v = 0.0;
        for (std::size_t j = 0; j < cs.size(); ++j) v += cs[j]->law(r) * proj[j];
        return v;
      };
      for (std::size_t i = 1; i + 1 < u.r.size(); ++i) {
        const double r = u.r[i];
        const auto ld = log_derivatives(coeff, r, hx);
        const double rb = std::pow(r, 1.0 - beta);
        const double res = ld.d2 + (d - 2) * ld.d1 - mode.lambda * ld.value - rb * trace;
        worst = std::max(worst, std::abs(res) / (scale * rb));
      }
    }
  }
  return worst;
}

double boundary_residual(const RadialField& u, const SourceSpec& src, const ConeProfile& p,
                         const std::vector<BoundaryMode>& bmodes) {
  const double beta = src.beta;
  const double scale = std::max(src.scale(), 1e-300);
  double worst = 0.0;
  std::vector<int> degrees = u.degrees();
  for (const auto& s : src.modes) degrees.push_back(s.ell);
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  for (int ell : degrees) {
    for (std::size_t i = 0; i < u.r.size(); ++i) {
      const double r = u.r[i];
      double va = 0.0, vb = 0.0, da = 0.0, db = 0.0;
      for (const auto& c : u.components) {
        if (c.ell != ell) continue;
        va += c.c[i] * c.profile.front();
        vb += c.c[i] * c.profile.back();
        da += c.c[i] * c.profile_prime.front();
        db += c.c[i] * c.profile_prime.back();
      }
      double ga = 0.0, gb = 0.0;
      for (const auto& s : src.modes) {
        if (s.ell != ell) continue;
        const BoundaryMode& bm = find_bmode(bmodes, s);
        ga += s.amplitude * bm.psi.front();
        gb += s.amplitude * bm.psi.back();
      }
      const double rb = std::pow(r, 1.0 - beta);
      const double left = da + p.H * va - rb * ga;
      const double right = -db + p.H * vb - rb * gb;
      worst = std::max(worst, std::max(std::abs(left), std::abs(right)) / (scale * rb));
    }
  }
  return worst;
}

BuildResult build_up(const SourceSpec& src, const ConeProfile& p,
                     const std::vector<BoundaryMode>& bmodes, const SolverConfig& cfg,
                     int per_degree) {
  cfg.validate();
  const double beta = src.beta;
  const auto r = numerics::geometric_grid(cfg.r0, cfg.r_max, 16);
  TransferResult tr = transfer_boundary(src, bmodes, p, r, cfg);

  BuildResult out;
  out.report.beta = beta;
  out.report.source_scale = src.scale();
  const InteriorBasis basis = interior_basis(p, tr.f.degrees(), per_degree, cfg);
  std::vector<double> lambdas;
  for (const auto& modes : basis.modes) {
    for (const auto& m : modes) lambdas.push_back(m.lambda);
  }
  if (!admissible(src, p.dim, lambdas)) {
    throw ResonantExponent("build_up: beta hits d/2 +- delta_k for a retained interior mode");
  }

  RadialField neg_f = tr.f;
  for (auto& c : neg_f.components) {
    auto law = c.law;
    c.law = [law](double x) { return -law(x); };
    for (auto& v : c.c) v = -v;
  }
  const RadialField fk = project(neg_f, basis, -1.0 - beta);
  out.u1 = std::move(tr.u1);
  out.u2 = solve_radial_modes(fk, beta, cfg, {}, &out.report.per_mode);
  out.up = out.u1;
  for (const auto& c : out.u2.components) out.up.components.push_back(c);

  // Unresolved part of f per degree, at r0 (all laws share the same power).
  for (int ell : neg_f.degrees()) {
    const auto full = neg_f.profile_at(ell, r.front());
    auto rest = full;
    for (const auto& c : fk.components) {
      if (c.ell != ell) continue;
      for (std::size_t i = 0; i < rest.size(); ++i) rest[i] -= c.c.front() * c.profile[i];
    }
    const double nf = band_inner(p.dim, p.grid, full, full);
    if (nf > 0.0) {
      out.report.truncation =
          std::max(out.report.truncation, std::sqrt(band_inner(p.dim, p.grid, rest, rest) / nf));
    }
  }

  const auto norm = out.up.mode_norm();
  if (src.scale() > 0.0) out.report.slope = numerics::loglog_slope(r, norm, cfg.r_max / 1000.0);
  out.report.interior_residual = interior_residual(out.up, src, p, bmodes, basis);
  out.report.boundary_residual = boundary_residual(out.up, src, p, bmodes);
  return out;
}

void add_homogeneous(RadialField& u, int ell, const SLEigenpair& mode, double gamma, double coeff) {
  RadialComponent c;
  c.ell = ell;
  c.k = mode.k;
  c.lambda = mode.lambda;
  c.profile = mode.fn;
  c.profile_prime = mode.fn_prime;
  c.law = power_law(coeff, gamma);
  sample(c, u.r);
  u.components.push_back(std::move(c));
}

DecayClassification classify_decay(const RadialField& field, double beta) {
  DecayClassification out;
  const std::size_t n = field.r.size();
  const double top = field.r.back() / 10.0;
  double total2 = 0.0;
  double resid2 = 0.0;
  double top2 = 0.0;
  double dropped2 = 0.0;
  for (const auto& c : field.components) {
    if (c.k < 1) throw InvalidInput("classify_decay: field must be expanded in interior Robin modes");
    const Homogeneity h = homogeneity(field.dim, c.lambda);
    std::vector<double> b1(n), b2(n), wts(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double r = field.r[i];
      const double lr = std::log(r);
      if (h.log_mode) {
        b1[i] = std::pow(r, h.gamma_plus);
        b2[i] = std::pow(r, h.gamma_plus) * lr;
      } else if (h.is_complex) {
        b1[i] = std::pow(r, h.gamma_plus) * std::cos(h.delta * lr);
        b2[i] = std::pow(r, h.gamma_plus) * std::sin(h.delta * lr);
      } else {
        b1[i] = std::pow(r, h.gamma_plus);
        b2[i] = std::pow(r, h.gamma_minus);
      }
      wts[i] = 1.0 / (std::abs(b1[i]) + std::abs(b2[i]));
    }
    // Weighted 2x2 least squares by normal equations on scaled columns.
    double s11 = 0, s12 = 0, s22 = 0, t1 = 0, t2 = 0, cc = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double w2 = wts[i] * wts[i];
      s11 += w2 * b1[i] * b1[i];
      s12 += w2 * b1[i] * b2[i];
      s22 += w2 * b2[i] * b2[i];
      t1 += w2 * b1[i] * c.c[i];
      t2 += w2 * b2[i] * c.c[i];
      cc += w2 * c.c[i] * c.c[i];
    }
    const double det = s11 * s22 - s12 * s12;
    if (!(std::abs(det) > 1e-300)) throw DegenerateBasis("classify_decay: dependent radial basis");
    const double a = (t1 * s22 - t2 * s12) / det;
    const double b = (s11 * t2 - s12 * t1) / det;
    const double g1 = h.gamma_plus;
    const double g2 = (h.log_mode || h.is_complex) ? h.gamma_plus : h.gamma_minus;
    // Exponents carry the eigenvalue error, so the boundary case gamma = -beta is kept.
    const bool keep1 = g1 <= -beta + 1e-7;
    const bool keep2 = g2 <= -beta + 1e-7;
    out.terms.push_back({c.ell, c.k, c.lambda, g1, a, keep1});
    out.terms.push_back({c.ell, c.k, c.lambda, g2, b, keep2});
    for (std::size_t i = 0; i < n; ++i) {
      const double w2 = wts[i] * wts[i];
      const double e = c.c[i] - a * b1[i] - b * b2[i];
      resid2 += w2 * e * e;
      if (field.r[i] >= top) {
        const double drop = (keep1 ? 0.0 : a * b1[i]) + (keep2 ? 0.0 : b * b2[i]);
        dropped2 += drop * drop;
        top2 += c.c[i] * c.c[i];
      }
    }
    total2 += cc;
  }
  out.fit_error = total2 > 0.0 ? std::sqrt(resid2 / total2) : 0.0;
  out.discarded = top2 > 0.0 ? std::sqrt(dropped2 / top2) : 0.0;
  return out;
}

}  // namespace conespec

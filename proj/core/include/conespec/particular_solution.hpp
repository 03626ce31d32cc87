// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "conespec/boundary_spectrum.hpp"
#include "conespec/config.hpp"
#include "conespec/sl_engine.hpp"

namespace conespec {

struct ConeProfile;

// Fields are finite sums  sum_j law_j(r) * profile_j(theta) * Y_ell(j)  with one fixed spherical
// harmonic Y_ell of unit L2(S^{d-2}) norm per sphere degree, so inner products over the link
// reduce to band integrals with weight sin^{d-2}.

/// c * t^exponent
struct PowerTerm {
  double coeff = 0.0;
  double exponent = 0.0;
};

/// Right-hand side f_k(t) of the radial equation. `tail` must describe f_k exactly for
/// t >= r_max whenever an infinite integration limit is selected.
struct RadialSource {
  std::function<double(double)> f;
  std::optional<PowerTerm> tail;

  [[nodiscard]] static RadialSource power(double coeff, double exponent);
};

enum class Limit { R0, Infinity };

struct LimitChoice {
  Limit a = Limit::R0;  ///< inner lower limit
  Limit b = Limit::R0;  ///< outer lower limit
};

/// a = R0 iff d/2 + delta - beta > 0, b = R0 iff d/2 - delta - beta > 0.
/// Throws ResonantExponent when either quantity is within tol of zero.
[[nodiscard]] LimitChoice select_limits(int d, double delta, double beta, double tol = 1e-9);

/// u(r) = r^{delta-(d-2)/2} int_b^r s^{-2 delta-1} int_a^s t^{delta+d/2} f(t) dt ds,
/// solving r^2 u'' + (d-1) r u' - lambda u = r^2 f on [r0, r_max]. Integrals are evaluated by
/// nested Gauss-Legendre rules on the panels of the geometric grid in log r; infinite limits use
/// the closed-form integral of the power-law tail beyond r_max.
class CauchyEulerSolution {
 public:
  CauchyEulerSolution(int d, double lambda, RadialSource f, double beta, std::vector<double> r_grid,
                      std::optional<LimitChoice> override_limits = std::nullopt);

  [[nodiscard]] double operator()(double r) const;
  /// r^2 u'' + (d-1) r u' - lambda u - r^2 f at r, derivatives by sixth-order central differences
  /// in log r with step hx.
  [[nodiscard]] double residual(double r, double hx = 2e-3) const;

  [[nodiscard]] const std::vector<double>& r_grid() const { return r_; }
  [[nodiscard]] const std::vector<double>& samples() const { return u_; }
  [[nodiscard]] LimitChoice limits() const { return limits_; }
  [[nodiscard]] double delta() const { return delta_; }
  [[nodiscard]] double lambda() const { return lambda_; }

 private:
  [[nodiscard]] std::size_t panel(double r) const;
  [[nodiscard]] double inner(std::size_t i, double s) const;
  [[nodiscard]] double outer(std::size_t i, double r) const;

  int d_;
  double lambda_;
  double delta_;
  RadialSource f_;
  std::vector<double> r_;
  LimitChoice limits_;
  std::vector<double> inode_;  // scaled inner integral at grid nodes
  std::vector<double> jnode_;  // u / r at grid nodes
  std::vector<double> u_;
};

/// One separable term of a field.
struct RadialComponent {
  int ell = 0;
  int k = 0;                       ///< interior Robin index; 0 when the profile is not a Robin mode
  double lambda = 0.0;             ///< Robin eigenvalue when k > 0
  std::vector<double> profile;     ///< theta samples on the band grid
  std::vector<double> profile_prime;
  std::function<double(double)> law;  ///< radial coefficient at any r in [r0, r_max]
  std::vector<double> c;           ///< law sampled on the radial grid
};

struct RadialField {
  int dim = 0;
  double beta = 0.0;
  std::vector<double> theta;
  std::vector<double> r;
  std::vector<RadialComponent> components;

  /// L2 norm over the link at each grid radius.
  [[nodiscard]] std::vector<double> mode_norm() const;
  /// theta profile of the degree-ell part at radius r (law evaluated, not interpolated).
  [[nodiscard]] std::vector<double> profile_at(int ell, double r) const;
  [[nodiscard]] std::vector<int> degrees() const;
};

/// Boundary source term amp * r^{-beta} * psi(theta) Y_ell, identified by (ell, parity).
struct SourceMode {
  int ell = 0;
  Parity parity = Parity::Even;
  double amplitude = 0.0;
};

struct SourceSpec {
  double beta = 0.0;
  std::vector<SourceMode> modes;

  [[nodiscard]] double scale() const;  ///< sqrt(sum amp^2)
};

/// True iff d/2 +- delta - beta stays away from zero for every given interior eigenvalue.
[[nodiscard]] bool admissible(const SourceSpec& src, int d, const std::vector<double>& lambdas,
                              double tol = 1e-9);

struct TransferResult {
  RadialField u1;
  RadialField f;
};

/// Step 1: u1 = sum amp r^{1-beta} psi / ell_k over non-resonant modes plus
/// sum amp r^{1-beta} g psi over the resonance set, and f = Laplacian of u1.
[[nodiscard]] TransferResult transfer_boundary(const SourceSpec& src,
                                               const std::vector<BoundaryMode>& bmodes,
                                               const ConeProfile& p, const std::vector<double>& r_grid,
                                               const SolverConfig& cfg = {});

/// Interior Robin eigenpairs per sphere degree (first `per_degree` modes each).
struct InteriorBasis {
  int dim = 0;
  std::vector<int> degrees;
  std::vector<std::vector<SLEigenpair>> modes;  ///< parallel to degrees

  [[nodiscard]] const std::vector<SLEigenpair>& of(int ell) const;
};

[[nodiscard]] InteriorBasis interior_basis(const ConeProfile& p, const std::vector<int>& degrees,
                                           int per_degree, const SolverConfig& cfg = {});

/// Projects a power-law field (all laws proportional to r^{e}) onto the interior basis; each
/// output component carries law w_k r^{e}.
[[nodiscard]] RadialField project(const RadialField& field, const InteriorBasis& basis,
                                  double exponent);

struct RadialModeReport {
  int ell = 0;
  int k = 0;
  double lambda = 0.0;
  double delta = 0.0;
  LimitChoice limits;
  double weight = 0.0;        ///< coefficient w_k of r^{-1-beta} in f_k
  double ode_residual = 0.0;  ///< max |residual| / (|w_k| r^{1-beta})
};

/// Step 2: solves the radial equation with right side f_k for every component of `f`
/// (components must be interior Robin modes with power laws t^{-1-beta}).
/// `override_limits` replaces the selection rule for the listed (ell, k) pairs.
struct LimitOverride {
  int ell = 0;
  int k = 0;
  LimitChoice limits;
};

[[nodiscard]] RadialField solve_radial_modes(const RadialField& f, double beta,
                                             const SolverConfig& cfg = {},
                                             const std::vector<LimitOverride>& overrides = {},
                                             std::vector<RadialModeReport>* reports = nullptr);

struct BuildReport {
  double beta = 0.0;
  double source_scale = 0.0;
  double slope = 0.0;               ///< log-log slope of the mode norm over the top 3 decades
  double interior_residual = 0.0;   ///< modal Green-identity residual / (S r^{1-beta})
  double boundary_residual = 0.0;   ///< Robin residual / (S r^{1-beta})
  double truncation = 0.0;          ///< relative part of f not resolved by the basis
  std::vector<RadialModeReport> per_mode;
};

struct BuildResult {
  RadialField u1;
  RadialField u2;
  RadialField up;
  BuildReport report;
};

/// u_p = u1 + u2 solving Laplace's equation in the cone outside B_{r0} with Robin data
/// d_nu u + H u = G. u2 solves the radial equations with right side -f so that the sum is harmonic.
[[nodiscard]] BuildResult build_up(const SourceSpec& src, const ConeProfile& p,
                                   const std::vector<BoundaryMode>& bmodes,
                                   const SolverConfig& cfg = {}, int per_degree = 8);

/// Modal Green-identity residual of a field with Robin data G (see build_up); relative to
/// S r^{1-beta}.
[[nodiscard]] double interior_residual(const RadialField& u, const SourceSpec& src,
                                       const ConeProfile& p, const std::vector<BoundaryMode>& bmodes,
                                       const InteriorBasis& basis);
[[nodiscard]] double boundary_residual(const RadialField& u, const SourceSpec& src,
                                       const ConeProfile& p, const std::vector<BoundaryMode>& bmodes);

/// Adds coeff * r^{gamma} * fn, a homogeneous solution when gamma is a root for fn's eigenvalue.
void add_homogeneous(RadialField& u, int ell, const SLEigenpair& mode, double gamma, double coeff);

struct DecayTerm {
  int ell = 0;
  int k = 0;
  double lambda = 0.0;
  double gamma = 0.0;
  double coeff = 0.0;
  bool retained = true;
};

struct DecayClassification {
  std::vector<DecayTerm> terms;
  double fit_error = 0.0;       ///< relative residual of the two-exponent fits
  double discarded = 0.0;       ///< relative size of the zeroed part over the top decade
};

/// Fits every interior component to a r^{gamma+} + b r^{gamma-} (log and oscillatory variants when
/// the radicand vanishes or is negative) and zeroes the terms with gamma > -beta.
[[nodiscard]] DecayClassification classify_decay(const RadialField& field, double beta);

}  // namespace conespec

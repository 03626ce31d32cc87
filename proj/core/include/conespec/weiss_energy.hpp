// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "conespec/config.hpp"

namespace conespec {

struct ConeProfile;
struct LinkSpectrum;
struct SLEigenpair;

/// rho(r) and rho'(r).
struct RadialFactor {
  std::function<double(double)> value;
  std::function<double(double)> derivative;

  [[nodiscard]] static RadialFactor power(double coeff, double exponent);
};

struct SeparableTerm {
  RadialFactor rho;
  std::vector<double> q;        ///< theta samples on the field's band grid
  std::vector<double> q_prime;
};

/// Axially symmetric field u(r, theta) = sum_i rho_i(r) q_i(theta) on the band [lo, hi] (polar
/// angle from the symmetry axis), extended by zero outside; u > 0 inside the band is required.
struct AxisymField {
  int dim = 0;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> theta;    ///< uniform grid on [lo, hi]
  std::vector<SeparableTerm> terms;

  [[nodiscard]] double step() const { return theta[1] - theta[0]; }

  /// r * g(theta) on the cone band.
  [[nodiscard]] static AxisymField cone(const ConeProfile& p);
  /// rho(r) * g(theta).
  [[nodiscard]] static AxisymField cone_with_radial(const ConeProfile& p, RadialFactor rho);
  /// (x_d)_+ = r cos(theta) on [0, pi/2].
  [[nodiscard]] static AxisymField half_plane(int d, int grid_n = 4096);
  /// r * q(theta) for an arbitrary band profile on a symmetric band.
  [[nodiscard]] static AxisymField one_homogeneous(int d, double halfwidth, std::vector<double> q,
                                                   std::vector<double> q_prime);

  /// Adds coeff * r^gamma * q(theta), q sampled on the same grid.
  AxisymField& add(double coeff, double gamma, const std::vector<double>& q,
                   const std::vector<double>& q_prime);
  /// Adds coeff * r^{gamma_k} phi_k with phi_k the k-th Dirichlet eigenfunction (mu = 0) of the
  /// band; the term is harmonic in the cone and vanishes on its boundary.
  AxisymField& add_dirichlet_mode(int k, double coeff, const SolverConfig& cfg = {});
  /// u(s x) / s.
  [[nodiscard]] AxisymField rescaled(double s) const;
  /// Throws InvalidInput when u <= 0 at an interior band point for some sampled radius.
  void check_positive(const std::vector<double>& radii) const;
};

/// W(u, r) = r^{-d} int_{B_r} (|grad u|^2 + 1_{u>0}) - r^{-d-1} int_{dB_r} u^2.
/// Radial integrals use the composite Boole rule on `radial_n` panels; the angular factors use
/// Simpson on the band grid with measure |S^{d-2}| sin^{d-2}. Throws GridTooCoarse when halving
/// the radial grid changes W by more than quad_tol |W|.
[[nodiscard]] double weiss(const AxisymField& u, double r, const SolverConfig& cfg = {},
                           int radial_n = 4096);

/// 2 r^{-d-2} int_{dB_r} (x . grad u - u)^2.
[[nodiscard]] double weiss_deficit(const AxisymField& u, double r);

struct DerivativeCheck {
  double lhs = 0.0;  ///< fourth-order central difference of W
  double rhs = 0.0;  ///< deficit integral
  double gap = 0.0;
};

[[nodiscard]] DerivativeCheck weiss_derivative_check(const AxisymField& u, double r,
                                                     const SolverConfig& cfg = {});

struct WeissReport {
  std::vector<double> r_values;
  std::vector<double> W;
  std::vector<double> dW_lhs;
  std::vector<double> dW_rhs;
  double kappa0 = 0.0;  ///< ||u(1 .)||_{L2(S^{d-1})}
};

[[nodiscard]] WeissReport weiss_report(const AxisymField& u, const std::vector<double>& radii,
                                       const SolverConfig& cfg = {});

/// |S^{d-2}| int_band sin^{d-2}: the (d-1)-measure of the link.
[[nodiscard]] double link_measure(int d, double halfwidth);

/// ||U||_{L2(S^{d-1})} with U extended by zero outside the band.
[[nodiscard]] double kappa0(const ConeProfile& p);

struct MeasureIdentity {
  double W1 = 0.0;
  double measure_over_d = 0.0;
  double gap = 0.0;  ///< relative
};

/// W(U, 1) by quadrature against the closed-form link measure over d.
[[nodiscard]] MeasureIdentity link_measure_identity(const ConeProfile& p, const SolverConfig& cfg = {});

enum class FNormalization {
  Energy,  ///< (kappa0^2 / d)(lambda_1^D - (d-1)) + measure / d, the one-homogeneous Weiss energy
  Literal  ///< kappa0^2 (lambda_1^D - (d-1)) + measure / d
};

/// Aperture functional on the band of the given half-width; lambda_1^D from the Dirichlet
/// problem with mu = 0 on the same number of grid intervals as the profile.
[[nodiscard]] double F_functional(double band_halfwidth, const ConeProfile& p,
                                  const SolverConfig& cfg = {},
                                  FNormalization norm = FNormalization::Energy);

struct Criticality {
  double F0 = 0.0;
  double dF = 0.0;        ///< central difference in the half-width
  double relative = 0.0;  ///< |dF| / F0
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
};

[[nodiscard]] Criticality F_criticality(const ConeProfile& p, double eps, const SolverConfig& cfg = {},
                                        FNormalization norm = FNormalization::Energy);

enum class FoliationSide { Upper, Lower };
enum class ExponentBranch { Plus, Minus };

/// U(x) +- coeff r^{-(d-2)/2 +- delta_1} phi_1(theta), phi_1 the first interior Robin eigenfunction
/// taken positive. Upper adds, lower subtracts. theta must lie in the band and r >= r_min.
/// Throws MissingCoefficient when coeff is absent.
[[nodiscard]] double foliation_leading_term(const ConeProfile& p, const LinkSpectrum& link,
                                            FoliationSide side, ExponentBranch branch,
                                            std::optional<double> coeff, double r, double theta,
                                            double r_min);

/// Cubic Hermite interpolation of samples (f, f') on a uniform grid.
[[nodiscard]] double hermite(const std::vector<double>& grid, const std::vector<double>& f,
                             const std::vector<double>& fp, double x);

}  // namespace conespec

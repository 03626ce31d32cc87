// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "conespec/boundary_spectrum.hpp"
#include "conespec/errors.hpp"
#include "conespec/link_spectrum.hpp"
#include "conespec/numerics.hpp"
#include "conespec/particular_solution.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace conespec;
using testing_support::profile;

namespace {

const std::vector<BoundaryMode>& bmodes7() {
  static const auto m = boundary_modes(profile(7), 8);
  return m;
}

const BuildResult& criterion_build() {
  static const BuildResult b = [] {
    SourceSpec src;
    src.beta = 0.7;
    src.modes = {{0, Parity::Odd, 1.0}, {0, Parity::Even, 0.5}, {1, Parity::Odd, -0.8}};
    return build_up(src, profile(7), bmodes7());
  }();
  return b;
}

}  // namespace

TEST(SelectLimits, SignRule) {
  const int d = 7;
  const double delta = 2.0;
  // d/2 + delta = 5.5, d/2 - delta = 1.5
  auto l = select_limits(d, delta, 1.0);
  EXPECT_EQ(l.a, Limit::R0);
  EXPECT_EQ(l.b, Limit::R0);
  l = select_limits(d, delta, 3.0);
  EXPECT_EQ(l.a, Limit::R0);
  EXPECT_EQ(l.b, Limit::Infinity);
  l = select_limits(d, delta, 6.0);
  EXPECT_EQ(l.a, Limit::Infinity);
  EXPECT_EQ(l.b, Limit::Infinity);
  EXPECT_THROW((void)select_limits(d, delta, 1.5), ResonantExponent);
  EXPECT_THROW((void)select_limits(d, delta, 5.5), ResonantExponent);
}

TEST(CauchyEuler, MatchesClosedForm) {
  const auto grid = numerics::geometric_grid(1.0, 1e4, 16);
  for (int trial = 0; trial < 25; ++trial) {
    const int d = testing_support::uniform_int(3, 10);
    const double lam = testing_support::uniform(0.0, 40.0);
    double beta = testing_support::uniform(0.1, 6.0);
    const double delta = homogeneity(d, lam).delta;
    if (std::abs(0.5 * d - delta - beta) < 0.05 || std::abs(0.5 * d + delta - beta) < 0.05) beta += 0.1;
    const double c = testing_support::uniform(-2.0, 2.0);
    const CauchyEulerSolution u(d, lam, RadialSource::power(c, -1.0 - beta), beta, grid);
    const bool a_inf = u.limits().a == Limit::Infinity;
    const bool b_inf = u.limits().b == Limit::Infinity;
    for (double r : {1.0, 1.7, 30.0, 999.0, 1e4}) {
      const double ref = oracle::integral_representation(d, lam, c, -1.0 - beta, a_inf, b_inf, 1.0, r);
      const double scale = std::abs(c) * std::pow(r, 1.0 - beta);
      EXPECT_NEAR(u(r), ref, 1e-9 * scale) << "d=" << d << " lambda=" << lam << " beta=" << beta << " r=" << r;
    }
  }
}

TEST(CauchyEuler, ResidualSmall) {
  const auto grid = numerics::geometric_grid(1.0, 1e5, 16);
  const CauchyEulerSolution u(7, 6.0, RadialSource::power(1.0, -1.7), 0.7, grid);
  for (double r : {2.0, 50.0, 3000.0}) EXPECT_LT(std::abs(u.residual(r)) / std::pow(r, 0.3), 1e-6);
}

TEST(CauchyEuler, FiniteLimitsForLargeLambda) {
  const auto grid = numerics::geometric_grid(1.0, 1e4, 16);
  const CauchyEulerSolution u(7, 30.0, RadialSource::power(1.0, -1.7), 0.7, grid);
  EXPECT_EQ(u.limits().a, Limit::R0);
  EXPECT_EQ(u.limits().b, Limit::Infinity);
  for (double r : {1.0, 10.0, 1e4}) {
    EXPECT_NEAR(u(r), oracle::integral_representation(7, 30.0, 1.0, -1.7, false, true, 1.0, r),
                1e-9 * std::pow(r, 0.3));
  }
}

TEST(CauchyEuler, ZeroSourceGivesZero) {
  const auto grid = numerics::geometric_grid(1.0, 1e3, 16);
  const CauchyEulerSolution u(5, 3.0, RadialSource::power(0.0, -1.5), 0.5, grid);
  for (double v : u.samples()) EXPECT_EQ(v, 0.0);
}

TEST(CauchyEuler, InfiniteLimitNeedsTail) {
  const auto grid = numerics::geometric_grid(1.0, 1e3, 16);
  RadialSource f{[](double t) { return std::pow(t, -3.0); }, std::nullopt};
  EXPECT_THROW(CauchyEulerSolution(5, 3.0, f, 2.0, grid, LimitChoice{Limit::R0, Limit::Infinity}),
               TailDivergence);
}

TEST(CauchyEuler, RejectsBadGrids) {
  EXPECT_THROW(CauchyEulerSolution(5, 3.0, RadialSource::power(1.0, -2.0), 1.0, {1.0}), InvalidInput);
  EXPECT_THROW(CauchyEulerSolution(5, 3.0, RadialSource::power(1.0, -2.0), 1.0, {2.0, 1.0}), InvalidInput);
  EXPECT_THROW(CauchyEulerSolution(5, -3.0, RadialSource::power(1.0, -2.0), 1.0, {1.0, 2.0}), InvalidInput);
}

TEST(Transfer, NonResonantModeDividesByEllK) {
  const auto& p = profile(7);
  const auto r = numerics::geometric_grid(1.0, 100.0, 8);
  SourceSpec src;
  src.beta = 0.7;
  src.modes = {{0, Parity::Even, 2.0}};
  const auto tr = transfer_boundary(src, bmodes7(), p, r);
  ASSERT_EQ(tr.u1.components.size(), 1u);
  const auto& bm = *std::find_if(bmodes7().begin(), bmodes7().end(),
                                 [](const BoundaryMode& m) { return m.ell == 0 && m.parity == Parity::Even; });
  const auto& c = tr.u1.components[0];
  for (std::size_t i = 0; i < p.grid.size(); i += 97) EXPECT_NEAR(c.profile[i], bm.psi[i] / bm.ell_k, 1e-15);
  EXPECT_NEAR(c.law(8.0), 2.0 * std::pow(8.0, 0.3), 1e-13);
}

TEST(Transfer, ZeroSourceGivesZeroField) {
  SourceSpec src;
  src.beta = 0.7;
  src.modes = {{0, Parity::Odd, 0.0}, {1, Parity::Odd, 0.0}};
  SolverConfig cfg;
  cfg.r_max = 1e3;
  const auto b = build_up(src, profile(7), bmodes7(), cfg, 4);
  for (const double v : b.up.mode_norm()) EXPECT_EQ(v, 0.0);
}

TEST(BuildUp, GrowthAndResiduals) {
  const auto& b = criterion_build();
  EXPECT_LE(b.report.slope, 0.35);
  EXPECT_LE(b.report.interior_residual, 1e-6);
  EXPECT_LE(b.report.boundary_residual, 1e-6);
  for (const auto& m : b.report.per_mode) EXPECT_LT(m.ode_residual, 1e-6) << m.ell << "," << m.k;
}

TEST(BuildUp, QuadraticGrowthSource) {
  SourceSpec src;
  src.beta = 0.8;
  src.modes = {{0, Parity::Odd, 1.0}, {1, Parity::Even, 0.6}};
  const auto b = build_up(src, profile(7), bmodes7());
  EXPECT_LE(b.report.slope, 0.25);
  EXPECT_LE(b.report.boundary_residual, 1e-6);
}

TEST(BuildUp, Linearity) {
  SolverConfig cfg;
  cfg.r_max = 4096.0;
  SourceSpec a;
  a.beta = 0.7;
  a.modes = {{0, Parity::Odd, 1.0}};
  SourceSpec b = a;
  b.modes = {{1, Parity::Odd, 1.0}};
  SourceSpec ab = a;
  ab.modes = {{0, Parity::Odd, 2.0}, {1, Parity::Odd, -3.0}};
  const auto& p = profile(7);
  const auto na = build_up(a, p, bmodes7(), cfg, 4).up.mode_norm();
  const auto nb = build_up(b, p, bmodes7(), cfg, 4).up.mode_norm();
  const auto nab = build_up(ab, p, bmodes7(), cfg, 4).up.mode_norm();
  // Different sphere degrees are orthogonal, so norms add in quadrature.
  for (std::size_t i = 0; i < na.size(); i += 17) {
    const double expect = std::hypot(2.0 * na[i], 3.0 * nb[i]);
    EXPECT_NEAR(nab[i], expect, 1e-9 * expect);
  }
}

TEST(BuildUp, HomogeneousAdditionKeepsResiduals) {
  const auto& p = profile(7);
  SourceSpec src;
  src.beta = 0.7;
  src.modes = {{0, Parity::Odd, 1.0}, {1, Parity::Odd, -0.8}};
  SolverConfig cfg;
  cfg.r_max = 4096.0;
  auto b = build_up(src, p, bmodes7(), cfg, 4);
  const auto basis = interior_basis(p, {0, 1}, 4, cfg);
  const double before = interior_residual(b.up, src, p, bmodes7(), basis);
  const double before_bc = boundary_residual(b.up, src, p, bmodes7());
  const auto& mode = basis.of(1)[1];  // lambda = d - 1
  add_homogeneous(b.up, 1, mode, homogeneity(7, mode.lambda).gamma_minus, 0.3);
  EXPECT_NEAR(interior_residual(b.up, src, p, bmodes7(), basis), before, 1e-8);
  EXPECT_NEAR(boundary_residual(b.up, src, p, bmodes7()), before_bc, 1e-8);
}

TEST(BuildUp, RejectsUnknownMode) {
  SourceSpec src;
  src.beta = 0.7;
  src.modes = {{9, Parity::Even, 1.0}};
  EXPECT_THROW((void)build_up(src, profile(7), bmodes7()), InvalidInput);
}

namespace {

RadialField homogeneous_field(std::initializer_list<std::tuple<int, int, int, double>> terms) {
  // (ell, k, branch +1/-1, coeff)
  const auto& p = profile(7);
  RadialField u;
  u.dim = 7;
  u.theta = p.grid;
  u.r = numerics::geometric_grid(1.0, 1e4, 8);
  for (const auto& [ell, k, branch, coeff] : terms) {
    const auto mode = eigen_k(SLSpec::robin(p, ell * (ell + 4.0)), k);
    const auto h = homogeneity(7, mode.lambda);
    add_homogeneous(u, ell, mode, branch > 0 ? h.gamma_plus : h.gamma_minus, coeff);
  }
  return u;
}

double coeff_of(const DecayClassification& c, double gamma) {
  for (const auto& t : c.terms) {
    if (std::abs(t.gamma - gamma) < 1e-6 && std::abs(t.coeff) > 1e-12) return t.coeff;
  }
  return 0.0;
}

bool retained(const DecayClassification& c, double gamma) {
  for (const auto& t : c.terms) {
    if (std::abs(t.gamma - gamma) < 1e-6) return t.retained;
  }
  return false;
}

}  // namespace

TEST(ClassifyDecay, LargeNegativeBetaKeepsAll) {
  const auto c = classify_decay(homogeneous_field({{1, 2, +1, 1.0}, {0, 2, -1, 2.0}}), -10.0);
  for (const auto& t : c.terms) EXPECT_TRUE(t.retained);
  EXPECT_LT(c.fit_error, 1e-10);
  EXPECT_LT(c.discarded, 1e-12);
}

TEST(ClassifyDecay, LinearBoundary) {
  const auto field = homogeneous_field({{1, 2, +1, 1.5}});
  const auto keep = classify_decay(field, -1.0);
  EXPECT_TRUE(retained(keep, 1.0));
  EXPECT_NEAR(coeff_of(keep, 1.0), 1.5, 1e-9);
  const auto drop = classify_decay(field, -0.5);
  EXPECT_FALSE(retained(drop, 1.0));
  EXPECT_NEAR(drop.discarded, 1.0, 1e-9);
}

TEST(ClassifyDecay, MixtureSplits) {
  const auto c = classify_decay(homogeneous_field({{0, 2, +1, 1.0}, {0, 2, -1, 4.0}}), 1.0);
  EXPECT_FALSE(retained(c, 0.0));
  EXPECT_TRUE(retained(c, -5.0));
  EXPECT_NEAR(coeff_of(c, 0.0), 1.0, 1e-8);
  EXPECT_NEAR(coeff_of(c, -5.0), 4.0, 1e-6);
}

TEST(ClassifyDecay, NeedsRobinModes) {
  RadialField u;
  u.dim = 7;
  u.r = {1.0, 2.0};
  RadialComponent c;
  c.k = 0;
  u.components.push_back(c);
  EXPECT_THROW((void)classify_decay(u, 1.0), InvalidInput);
}

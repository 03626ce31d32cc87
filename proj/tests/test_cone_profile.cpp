// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "conespec/cone_profile.hpp"
#include "conespec/errors.hpp"
#include "conespec/numerics.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace conespec;
using testing_support::profile;

namespace {

// Regression values at the default grid; the FD oracle below confirms them independently.
constexpr double kTheta0[] = {0.9855147378620952,  0.78539816339780533, 0.67279547260947181,
                              0.59803094704331272, 0.5437286919828539,  0.50197530879470698,
                              0.46857503201411399, 0.4410669586995879};

}  // namespace

class ProfileByDim : public ::testing::TestWithParam<int> {};

TEST_P(ProfileByDim, FrozenAperture) {
  const int d = GetParam();
  EXPECT_NEAR(profile(d).theta0, kTheta0[d - 3], 1e-11);
}

TEST_P(ProfileByDim, InvariantsHold) {
  const int d = GetParam();
  const auto& p = profile(d);
  const auto diag = diagnose(p);
  EXPECT_GT(p.theta0, 0.0);
  EXPECT_LT(p.theta0, numerics::kHalfPi);
  EXPECT_DOUBLE_EQ(p.H, (d - 2) * std::tan(p.theta0));
  EXPECT_LE(diag.symmetry_error, 1e-7);
  EXPECT_LE(diag.center_slope, 1e-7);
  EXPECT_LE(diag.left_slope_error, 1e-7);
  EXPECT_LE(diag.right_slope_error, 1e-7);
  EXPECT_LE(diag.endpoint_value, 1e-7);
  EXPECT_GT(diag.min_interior, 0.0);
  EXPECT_LE(diag.ode_residual, 1e-6);
  EXPECT_LE(diag.curvature_error, 1e-12);
  // Maximum at the center.
  const std::size_t mid = p.g.size() / 2;
  for (double v : p.g) EXPECT_LE(v, p.g[mid] + 1e-15);
}

INSTANTIATE_TEST_SUITE_P(Dims, ProfileByDim, ::testing::Range(3, 11));

TEST(Profile, ApertureMatchesFiniteDifferenceOracle) {
  for (int d : {3, 7}) {
    EXPECT_NEAR(profile(d).theta0, oracle::fd_theta0(d), 1e-8) << "d=" << d;
  }
}

TEST(Profile, CoarseGridInvariantsUpToDimension12) {
  SolverConfig cfg;
  cfg.grid_n = 4096;
  for (int d = 3; d <= 12; ++d) {
    const auto p = solve_profile(d, cfg);
    const auto diag = diagnose(p);
    EXPECT_LE(std::max({diag.symmetry_error, diag.center_slope, diag.left_slope_error, diag.right_slope_error,
                        diag.endpoint_value}),
              1e-7)
        << "d=" << d;
    EXPECT_LE(diag.ode_residual, cfg.ode_tol) << "d=" << d;
  }
}

TEST(Profile, GridRefinementConverges) {
  // theta0 at N, 2N, 4N: the differences shrink at least like N^-2.
  double t[3];
  int n = 256;
  for (double& x : t) {
    SolverConfig cfg;
    cfg.grid_n = n;
    x = solve_profile(7, cfg).theta0;
    n *= 2;
  }
  const double e1 = std::abs(t[0] - t[1]);
  const double e2 = std::abs(t[1] - t[2]);
  EXPECT_LE(e1, 1.0 / (256.0 * 256.0));
  EXPECT_LE(e2, std::max(e1 / 4.0, 1e-12));
}

TEST(Profile, LegendreCrosscheck) {
  EXPECT_LE(legendre_crosscheck(profile(7)), 1e-6);  // odd d, second kind
  EXPECT_LE(legendre_crosscheck(profile(8)), 1e-6);  // even d, first kind
  EXPECT_LE(legendre_crosscheck(profile(3)), 1e-6);
}

TEST(Profile, LegendreCrosscheckDetectsCorruption) {
  ConeProfile p = profile(7);
  for (double& v : p.g) v += 0.1;
  EXPECT_GT(legendre_crosscheck(p), 1e-2);
}

TEST(Profile, RejectsBadDimension) {
  EXPECT_THROW((void)solve_profile(2), InvalidInput);
  SolverConfig cfg;
  cfg.grid_n = 63;
  EXPECT_THROW((void)solve_profile(5, cfg), InvalidInput);
}

TEST(Profile, JacobiFieldAlgebraAndZeros) {
  for (int d : {3, 7}) {
    const auto& p = profile(d);
    const auto j = jacobi_fields(p);
    const std::size_t n = p.grid.size();
    const std::size_t mid = n / 2;
    for (std::size_t i = 0; i < n; ++i) {
      const double t = p.grid[i];
      EXPECT_EQ(j.axial[i], std::cos(t) * p.g[i] - std::sin(t) * p.g_prime[i]);
      EXPECT_EQ(j.rotation[i], p.g_prime[i]);
    }
    // axial and rotation change sign once, at pi/2.
    EXPECT_EQ(numerics::sign_changes(j.axial, 1e-9), 1);
    EXPECT_EQ(numerics::sign_changes(j.rotation, 1e-9), 1);
    EXPECT_NEAR(j.axial[mid], 0.0, 1e-12);
    EXPECT_NEAR(j.rotation[mid], 0.0, 1e-12);
    EXPECT_NEAR(j.transverse.front(), j.transverse.back(), 1e-10);
    EXPECT_EQ(numerics::sign_changes(j.transverse, 1e-9), 0);
  }
}

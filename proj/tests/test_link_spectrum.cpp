// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "conespec/cone_profile.hpp"
#include "conespec/errors.hpp"
#include "conespec/link_spectrum.hpp"
#include "conespec/sphere_modes.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace conespec;
using testing_support::profile;

TEST(Homogeneity, VietaRelations) {
  for (int trial = 0; trial < 50; ++trial) {
    const int d = testing_support::uniform_int(3, 12);
    const double lam = testing_support::uniform(-0.25 * (d - 2) * (d - 2) + 1e-3, 200.0);
    const auto h = homogeneity(d, lam);
    ASSERT_FALSE(h.is_complex);
    EXPECT_NEAR(h.gamma_plus + h.gamma_minus, -(d - 2.0), 1e-12);
    EXPECT_NEAR(h.gamma_plus * h.gamma_minus, -lam, 1e-9 * std::max(1.0, lam));
  }
}

TEST(Homogeneity, JacobiValues) {
  for (int d = 3; d <= 10; ++d) {
    const auto h0 = homogeneity(d, 0.0);
    EXPECT_DOUBLE_EQ(h0.gamma_plus, 0.0);
    EXPECT_DOUBLE_EQ(h0.gamma_minus, -(d - 2.0));
    const auto h1 = homogeneity(d, d - 1.0);
    EXPECT_NEAR(h1.gamma_plus, 1.0, 1e-14);
    EXPECT_NEAR(h1.gamma_minus, -(d - 1.0), 1e-14);
  }
}

TEST(Homogeneity, ComplexAndDegenerateFlags) {
  const auto c = homogeneity(5, -3.0);  // radicand 9/4 - 3 < 0
  EXPECT_TRUE(c.is_complex);
  EXPECT_DOUBLE_EQ(c.gamma_plus, -1.5);
  EXPECT_NEAR(c.delta, std::sqrt(0.75), 1e-15);
  const auto z = homogeneity(5, -2.25);
  EXPECT_TRUE(z.log_mode);
  EXPECT_FALSE(z.is_complex);
}

TEST(LinkSpectrum, Dim7Table) {
  const LinkSpectrum s = assemble(profile(7), 20.0);
  ASSERT_GE(s.eigenvalues.size(), 4u);
  EXPECT_LT(s.eigenvalues[0].lambda, -5.0);
  EXPECT_NEAR(s.eigenvalues[1].lambda, 0.0, 1e-7);
  EXPECT_EQ(s.eigenvalues[1].multiplicity, 7);
  EXPECT_EQ(s.eigenvalues[1].sources.size(), 2u);
  EXPECT_NEAR(s.eigenvalues[2].lambda, 6.0, 1e-7);
  EXPECT_EQ(s.eigenvalues[2].multiplicity, 6);
  EXPECT_GT(s.eigenvalues[3].lambda, 6.0);
  for (std::size_t i = 1; i < s.eigenvalues.size(); ++i) {
    EXPECT_GT(s.eigenvalues[i].lambda - s.eigenvalues[i - 1].lambda, SolverConfig{}.cluster_tol);
  }
}

TEST(LinkSpectrum, MultiplicityIsSumOfSources) {
  const LinkSpectrum s = assemble(profile(4), 30.0);
  for (const auto& e : s.eigenvalues) {
    std::int64_t m = 0;
    for (const auto& src : e.sources) {
      EXPECT_EQ(src.multiplicity, sphere_mode_multiplicity(4, src.ell));
      m += src.multiplicity;
    }
    EXPECT_EQ(m, e.multiplicity);
    EXPECT_LE(e.lambda, 30.0);
  }
}

TEST(LinkSpectrum, Dim3Unstable) {
  const auto r = verify_strong_integrability(profile(3));
  EXPECT_LT(r.lambda1, -1.0);
  EXPECT_LT(r.stability_margin, 0.0);
  EXPECT_FALSE(r.strictly_stable);
  EXPECT_FALSE(r.verdict);
}

TEST(LinkSpectrum, TableReproducedAcrossDimensions) {
  for (int d = 3; d <= 10; ++d) {
    const auto r = verify_strong_integrability(profile(d));
    EXPECT_LT(r.lambda1, -(d - 2.0) - 1e-4) << d;
    EXPECT_EQ(r.dim_kernel0, d);
    EXPECT_EQ(r.dim_kernel_d_minus_1, d - 1);
    EXPECT_TRUE(r.no_other_below);
    EXPECT_GT(r.gap_above, d - 1.0);
    EXPECT_TRUE(r.fields_identified);
    EXPECT_LE(std::max({r.axial_error, r.transverse_error, r.rotation_error}), 1e-5);
    EXPECT_EQ(r.strictly_stable, d >= 7) << d;
    EXPECT_EQ(r.verdict, d >= 7) << d;
    EXPECT_GT(std::abs(r.stability_margin), 1e-4);
  }
}

TEST(LinkSpectrum, GapAboveDim7) {
  const auto r = verify_strong_integrability(profile(7));
  const auto& p = profile(7);
  // Candidates for the first eigenvalue above d-1: (0,3), (1,3), (2,1).
  const double hw = p.theta0;
  const double c0 = oracle::fd_eigenvalues(7, hw, 0.0, true, p.H, 3, 2000)[2];
  const double c1 = oracle::fd_eigenvalues(7, hw, 5.0, true, p.H, 3, 2000)[2];
  const double c2 = oracle::fd_eigenvalues(7, hw, 12.0, true, p.H, 1, 2000)[0];
  EXPECT_NEAR(r.gap_above, std::min({c0, c1, c2}), 1e-5);
  EXPECT_GT(r.gap_above, 6.0);
}

TEST(LinkSpectrum, DecayExponents) {
  const LinkSpectrum s = assemble(profile(7), 10.0);
  const auto ex = decay_exponents(s.eigenvalues);
  EXPECT_TRUE(std::is_sorted(ex.begin(), ex.end()));
  auto has = [&](double x) {
    return std::any_of(ex.begin(), ex.end(), [&](double y) { return std::abs(x - y) < 1e-7; });
  };
  EXPECT_TRUE(has(0.0));
  EXPECT_TRUE(has(-5.0));
  EXPECT_TRUE(has(1.0));
  EXPECT_TRUE(has(-6.0));
  const auto h1 = s.eigenvalues[0].homogeneity;
  EXPECT_GT(h1.delta, 0.0);
  EXPECT_LT(h1.delta, 2.5);
  EXPECT_TRUE(has(-2.5 + h1.delta));
  EXPECT_TRUE(has(-2.5 - h1.delta));
}

TEST(LinkSpectrum, AlignedErrorDetectsMismatch) {
  const auto& p = profile(5);
  const auto j = jacobi_fields(p);
  EXPECT_LT(aligned_error(5, p.grid, j.axial, j.axial), 1e-14);
  std::vector<double> scaled = j.axial;
  for (double& v : scaled) v *= -3.0;
  EXPECT_LT(aligned_error(5, p.grid, scaled, j.axial), 1e-12);
  EXPECT_GT(aligned_error(5, p.grid, j.rotation, j.transverse), 0.1);
}

TEST(LinkSpectrum, RejectsSmallLambdaMax) {
  EXPECT_THROW((void)assemble(profile(5), 4.0), InvalidInput);
}

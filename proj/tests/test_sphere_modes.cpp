// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "conespec/errors.hpp"
#include "conespec/sphere_modes.hpp"
#include "oracles.hpp"

using namespace conespec;

TEST(SphereModes, LowDegrees) {
  const auto m0 = sphere_mode(7, 0);
  const auto m1 = sphere_mode(7, 1);
  const auto m2 = sphere_mode(7, 2);
  EXPECT_EQ(m0.mu, 0.0);
  EXPECT_EQ(m0.multiplicity, 1);
  EXPECT_EQ(m1.mu, 5.0);
  EXPECT_EQ(m1.multiplicity, 6);
  EXPECT_EQ(m2.mu, 12.0);
}

TEST(SphereModes, GenericIdentities) {
  for (int d = 3; d <= 12; ++d) {
    EXPECT_EQ(sphere_mode_eigenvalue(d, 1), d - 2.0);
    EXPECT_EQ(sphere_mode_eigenvalue(d, 2), 2.0 * (d - 1));
    EXPECT_EQ(sphere_mode_multiplicity(d, 1), d - 1);
    for (int ell = 1; ell < 10; ++ell) {
      EXPECT_GT(sphere_mode_eigenvalue(d, ell), sphere_mode_eigenvalue(d, ell - 1));
    }
  }
}

TEST(SphereModes, CircleFactorInDimensionThree) {
  EXPECT_EQ(sphere_mode_multiplicity(3, 0), 1);
  for (int ell = 1; ell <= 8; ++ell) {
    EXPECT_EQ(sphere_mode_multiplicity(3, ell), 2);
    EXPECT_EQ(sphere_mode_eigenvalue(3, ell), double(ell * ell));
  }
}

TEST(SphereModes, MultiplicityMatchesMonomialCount) {
  // Harmonics on S^{d-2} are harmonic polynomials in d - 1 variables.
  for (int d = 3; d <= 10; ++d) {
    for (int ell = 0; ell <= 6; ++ell) {
      EXPECT_EQ(sphere_mode_multiplicity(d, ell), oracle::harmonic_count(d - 1, ell)) << d << "," << ell;
    }
  }
}

TEST(SphereModes, ModesUpTo) {
  const auto m = modes_up_to(4, 10.0);
  ASSERT_EQ(m.size(), 3u);
  EXPECT_EQ(m.back().mu, 6.0);
  EXPECT_EQ(m.back().multiplicity, 5);
  EXPECT_EQ(modes_up_to(4, 0.0).size(), 1u);
}

TEST(SphereModes, RejectsBadInput) {
  EXPECT_THROW((void)sphere_mode(2, 0), InvalidInput);
  EXPECT_THROW((void)sphere_mode(5, -1), InvalidInput);
}

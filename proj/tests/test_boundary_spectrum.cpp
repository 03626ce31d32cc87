// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "conespec/boundary_spectrum.hpp"
#include "conespec/cone_profile.hpp"
#include "conespec/errors.hpp"
#include "conespec/numerics.hpp"
#include "conespec/sphere_modes.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace conespec;
using testing_support::profile;

TEST(BoundarySpectrum, EvenDegreeZeroIsConstant) {
  for (int d : {3, 5, 8}) {
    const auto& p = profile(d);
    const auto m = boundary_mode(p, 0, Parity::Even);
    EXPECT_NEAR(m.ell_k, p.H, 1e-9 * std::max(1.0, p.H));
    const auto [lo, hi] = std::minmax_element(m.psi.begin(), m.psi.end());
    EXPECT_NEAR(*lo, *hi, 1e-10 * std::abs(*hi));
  }
}

TEST(BoundarySpectrum, OddDegreeZeroMatchesQuadrature) {
  for (int d = 3; d <= 10; ++d) {
    const auto& p = profile(d);
    const auto m = boundary_mode(p, 0, Parity::Odd);
    EXPECT_NEAR(m.ell_k, oracle::boundary_ell0_odd(d, p.theta0, p.H), 1e-8) << d;
  }
}

TEST(BoundarySpectrum, OddZeroAndEvenOneResonate) {
  for (int d = 3; d <= 10; ++d) {
    const auto& p = profile(d);
    EXPECT_LT(std::abs(boundary_mode(p, 0, Parity::Odd).ell_k), 1e-7) << d;
    EXPECT_LT(std::abs(boundary_mode(p, 1, Parity::Even).ell_k), 1e-7) << d;
  }
}

TEST(BoundarySpectrum, FiniteDifferenceSteklov) {
  for (int d : {3, 7}) {
    const auto& p = profile(d);
    const auto modes = boundary_modes(p, 6);
    for (const auto& m : modes) {
      const auto [even, odd] = oracle::fd_steklov(d, p.theta0, p.H, m.mu, 2000);
      const double ref = m.parity == Parity::Even ? even : odd;
      EXPECT_NEAR(m.ell_k, ref, 1e-5 * std::max(1.0, std::abs(ref)))
          << "d=" << d << " ell=" << m.ell << " " << to_string(m.parity);
    }
  }
}

TEST(BoundarySpectrum, OrderedAndResonanceMultiplicity) {
  for (int d = 3; d <= 10; ++d) {
    const auto modes = boundary_modes(profile(d), 8);
    ASSERT_EQ(modes.size(), 8u);
    for (std::size_t i = 1; i < modes.size(); ++i) EXPECT_GE(modes[i - 1].ell_k, modes[i].ell_k);
    EXPECT_EQ(resonance_multiplicity(modes), d) << d;
    for (const auto& m : modes) {
      const bool expected = (m.ell == 0 && m.parity == Parity::Odd) || (m.ell == 1 && m.parity == Parity::Even);
      EXPECT_EQ(m.in_resonance, expected);
      EXPECT_EQ(m.multiplicity, sphere_mode_multiplicity(d, m.ell));
    }
  }
}

TEST(BoundarySpectrum, ParitySymmetryAndResiduals) {
  const auto& p = profile(6);
  for (int ell = 0; ell <= 3; ++ell) {
    for (Parity par : {Parity::Even, Parity::Odd}) {
      const auto m = boundary_mode(p, ell, par);
      const double sgn = par == Parity::Even ? 1.0 : -1.0;
      const std::size_t n = m.psi.size();
      double asym = 0.0;
      for (std::size_t i = 0; i < n; ++i) asym = std::max(asym, std::abs(m.psi[i] - sgn * m.psi[n - 1 - i]));
      EXPECT_LT(asym, 1e-10);
      EXPECT_LT(m.bc_residual, 1e-7);
      EXPECT_LT(m.ode_residual, 1e-6);
      // Normalization on the two boundary spheres.
      const double c = std::pow(std::cos(p.theta0), 4);
      EXPECT_NEAR(numerics::sphere_area(4) * c * (m.psi.front() * m.psi.front() + m.psi.back() * m.psi.back()), 1.0, 1e-12);
    }
  }
}

TEST(BoundarySpectrum, HigherDegreesSinkBelow) {
  const auto& p = profile(7);
  for (Parity par : {Parity::Even, Parity::Odd}) {
    double prev = boundary_mode(p, 0, par).ell_k;
    for (int ell = 1; ell <= 5; ++ell) {
      const double cur = boundary_mode(p, ell, par).ell_k;
      EXPECT_LT(cur, prev);
      prev = cur;
    }
  }
}

TEST(BoundarySpectrum, RejectsBadArguments) {
  EXPECT_THROW((void)boundary_modes(profile(4), 0), InvalidInput);
  EXPECT_THROW((void)boundary_mode(profile(4), -1, Parity::Even), InvalidInput);
}

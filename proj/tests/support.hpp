// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "conespec/cone_profile.hpp"
#include "conespec/config.hpp"

namespace testing_support {

// Profiles are reused across tests in one process.
inline const conespec::ConeProfile& profile(int d) {
  static std::map<int, conespec::ConeProfile> cache;
  auto it = cache.find(d);
  if (it == cache.end()) it = cache.emplace(d, conespec::solve_profile(d)).first;
  return it->second;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(conespec::SolverConfig{}.seed);
  return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }
inline int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace testing_support

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace conespec {

/// Base of every failure raised by the numerical core. The CLI maps these to exit code 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoZeroFound : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NonConvergent : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class BracketFail : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class EvaluationUnstable : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ZeroDenominator : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class AmbiguousCluster : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegenerateBasis : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ResonanceDivision : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ResonantExponent : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class TailDivergence : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class GridTooCoarse : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class MissingCoefficient : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Raised when an input violates a documented precondition (bad dimension, empty band, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace conespec

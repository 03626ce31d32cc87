// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "conespec/config.hpp"

namespace conespec::cli {

enum ExitCode : int { kOk = 0, kVerdictFalse = 1, kNumerical = 2, kUsage = 64 };

/// Malformed JSON; line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column)
      : std::runtime_error(what), line_(line), column_(column) {}
  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Well-formed JSON that violates the config invariants or schema.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Empty (or whitespace-only) file gives the defaults.
[[nodiscard]] SolverConfig parse_config(const std::string& text);
[[nodiscard]] SolverConfig load_config(const std::string& path);

/// `args` excludes the program name. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace conespec::cli

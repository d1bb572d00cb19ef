// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace botlens {

enum class ErrorKind {
  Config,       // invalid configuration or arguments
  Io,           // unreadable / unwritable files
  Domain,       // precondition or input-data violation
  Unsupported,  // request outside the supported domain (e.g. KDE with d > 3)
  Convergence,  // iterative method failed to converge
  Internal,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Exception carrying the error category and the module that raised it.
/// what() is "<module>: <message>".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string_view module, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& module() const noexcept { return module_; }

 private:
  ErrorKind kind_;
  std::string module_;
};

/// Non-fatal problem found while reading an input (line numbers are 1-based).
struct Diagnostic {
  std::size_t line = 0;
  std::string message;
};

}  // namespace botlens

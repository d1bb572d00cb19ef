// SPDX-License-Identifier: Apache-2.0
#include "botlens/error.hpp"

namespace botlens {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Config: return "configuration error";
    case ErrorKind::Io: return "I/O error";
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Convergence: return "convergence error";
    case ErrorKind::Internal: return "internal error";
  }
  return "unknown error";
}

Error::Error(ErrorKind kind, std::string_view module, const std::string& message)
    : std::runtime_error(std::string(module) + ": " + message), kind_(kind), module_(module) {}

}  // namespace botlens

#pragma once

#include <stdexcept>
#include <string>

namespace biphoton {

/// Raised when an operation would divide by a vanishing amplitude, e.g. a
/// Mach-Zehnder setting that routes every photon into the discarded arm.
class DegenerateAmplitudeError : public std::runtime_error {
 public:
  explicit DegenerateAmplitudeError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a low-rank factorization cannot meet its requested accuracy.
class TruncationError : public std::runtime_error {
 public:
  explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace biphoton

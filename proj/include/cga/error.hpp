#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cga {

enum class ErrorKind {
  InvalidRequest,
  DivergedOrbit,
  DegenerateOrbit,
  DegenerateSeries,
  OutOfDomain,
  IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cga

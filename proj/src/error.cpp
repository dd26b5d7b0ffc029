#include "cga/error.hpp"

namespace cga {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidRequest: return "InvalidRequest";
    case ErrorKind::DivergedOrbit: return "DivergedOrbit";
    case ErrorKind::DegenerateOrbit: return "DegenerateOrbit";
    case ErrorKind::DegenerateSeries: return "DegenerateSeries";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::IoError: return "IoError";
  }
  return "Error";
}

}  // namespace cga

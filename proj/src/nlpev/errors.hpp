#pragma once

#include <stdexcept>
#include <string>

namespace nlpev {

enum class ErrorKind {
  argument,        // bad parameter or precondition violation
  parse,           // malformed structured text
  io,              // file system failure
  validation,      // problem data violates a standing assumption
  geometry,        // interval/window inclusion failure
  shape,           // size mismatch between grids or vectors
  positivity,      // a vector required to be positive is not
  structure,       // matrix lacks required structure (Metzler, irreducible)
  nonconvergence,  // iteration budget exhausted
  unsupported,     // operation not defined for this input
  internal,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::argument: return "argument";
    case ErrorKind::parse: return "parse";
    case ErrorKind::io: return "io";
    case ErrorKind::validation: return "validation";
    case ErrorKind::geometry: return "geometry";
    case ErrorKind::shape: return "shape";
    case ErrorKind::positivity: return "positivity";
    case ErrorKind::structure: return "structure";
    case ErrorKind::nonconvergence: return "nonconvergence";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::internal: return "internal";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Thrown when an iteration stops on its budget; carries the last certified bracket.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& message, double lambda_lo, double lambda_hi, long iterations)
      : Error(ErrorKind::nonconvergence, message),
        lambda_lo(lambda_lo),
        lambda_hi(lambda_hi),
        iterations(iterations) {}

  double lambda_lo;
  double lambda_hi;
  long iterations;
};

}  // namespace nlpev

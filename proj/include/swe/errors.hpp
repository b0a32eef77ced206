#ifndef SWE_ERRORS_HPP
#define SWE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace swe {

/// Base class for all errors raised by the library. `code()` is a stable
/// machine-readable identifier; `what()` carries the human-readable detail.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

/// Malformed input file (mesh, config).
class ParseError : public Error {
public:
  explicit ParseError(const std::string& msg) : Error("PARSE_ERROR", msg) {}
};

/// Invalid mesh geometry or topology.
class GeometryError : public Error {
public:
  explicit GeometryError(const std::string& msg) : Error("GEOMETRY_ERROR", msg) {}
};

/// Invalid caller-supplied data (non-finite values, conflicting constraints, ...).
class InputError : public Error {
public:
  explicit InputError(const std::string& msg) : Error("INPUT_ERROR", msg) {}
};

/// The total wave height lost positivity; the scheme cannot continue.
class PositivityLost : public Error {
public:
  explicit PositivityLost(const std::string& msg) : Error("POSITIVITY_LOST", msg) {}
};

/// Iterative solver failed to reach the requested tolerance.
class NoConvergence : public Error {
public:
  NoConvergence(const std::string& msg, int iterations, double residual)
      : Error("NO_CONVERGENCE", msg), iterations_(iterations), residual_(residual) {}
  int iterations() const { return iterations_; }
  double residual() const { return residual_; }

private:
  int iterations_;
  double residual_;
};

/// A condition the library guarantees can not happen did happen.
class InternalError : public Error {
public:
  explicit InternalError(const std::string& msg) : Error("INTERNAL_ERROR", msg) {}
};

} // namespace swe

#endif

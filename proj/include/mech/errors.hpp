#ifndef MECH_ERRORS_HPP
#define MECH_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mech {

/// Base for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression source. `offset` is the byte position of the problem.
class ParseError : public Error {
public:
  ParseError(std::size_t offset, const std::string &what)
      : Error(what + " (at offset " + std::to_string(offset) + ")"),
        offset(offset) {}
  std::size_t offset;
};

/// Evaluation left the real domain (log/sqrt of a negative, division by
/// zero, 0^negative). `offset` locates the offending node in the source.
class EvalError : public Error {
public:
  EvalError(std::size_t offset, const std::string &what)
      : Error(what + " (node at offset " + std::to_string(offset) + ")"),
        offset(offset) {}
  std::size_t offset;
};

/// Degenerate metric, point outside the chart domain, or a vanishing
/// time-form norm.
class GeometryError : public Error {
public:
  using Error::Error;
};

/// Operation not defined for the system's work-form variant.
class VariantError : public Error {
public:
  using Error::Error;
};

/// Scenario document rejected. `path` is the JSON path of the offending
/// field (e.g. "work_form.V").
class ValidationError : public Error {
public:
  ValidationError(const std::string &path, const std::string &what)
      : Error(path + ": " + what), path(path) {}
  std::string path;
};

/// Numerical failure during integration or a solver step.
class NumericsError : public Error {
public:
  using Error::Error;
};

} // namespace mech

#endif

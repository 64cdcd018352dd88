#ifndef SHAPESEP_ERRORS_HPP
#define SHAPESEP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace shapesep {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A parameter is outside its documented domain (k <= 0, thickness too large, ...).
class InvalidParameterError : public Error {
public:
  explicit InvalidParameterError(const std::string& what) : Error(what) {}
};

/// Two geometric arguments live in different ambient dimensions.
class DimensionMismatchError : public Error {
public:
  explicit DimensionMismatchError(const std::string& what) : Error(what) {}
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
public:
  explicit PreconditionError(const std::string& what) : Error(what) {}
};

/// An exhaustive search was asked to run beyond its hard size cap.
class SizeCapError : public Error {
public:
  explicit SizeCapError(const std::string& what) : Error(what) {}
};

/// Operation is not available in the requested dimension.
class UnsupportedDimensionError : public Error {
public:
  explicit UnsupportedDimensionError(const std::string& what) : Error(what) {}
};

/// A value violates a type invariant (degenerate shape, non-bijective ordering, ...).
class InvariantViolationError : public Error {
public:
  explicit InvariantViolationError(const std::string& what) : Error(what) {}
};

/// A generator failed to realize its construction (e.g. could not separate wedges).
class GeneratorError : public Error {
public:
  explicit GeneratorError(const std::string& what) : Error(what) {}
};

} // namespace shapesep

#endif

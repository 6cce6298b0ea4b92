#ifndef ZPD_ERRORS_HPP_
#define ZPD_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace zpd {

/// Parameter or argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
  public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A result would exceed the representable floating-point range.
class OverflowError : public std::range_error {
  public:
    explicit OverflowError(const std::string& what) : std::range_error(what) {}
};

/// An iterative numerical procedure failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
  public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input data (bad magic, bad CSV shape, ...).
class ParseError : public std::runtime_error {
  public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem-level failure while reading or writing artifacts.
class IoError : public std::runtime_error {
  public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Request exceeds a configured resource budget (e.g. in-memory batch size).
class ResourceError : public std::runtime_error {
  public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace zpd

#endif  // ZPD_ERRORS_HPP_

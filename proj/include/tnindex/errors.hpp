#pragma once

#include <stdexcept>
#include <string>

namespace tnindex {

/// Base class of every error raised by the library. `kind()` is a stable
/// machine-readable tag used by the CLI error JSON.
class Error : public std::runtime_error
{
public:
   Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
   const std::string& kind() const noexcept { return kind_; }

private:
   std::string kind_;
};

/// Evaluation outside an operation's domain (r <= 0, stencil across the nut).
class DomainError : public Error
{
public:
   explicit DomainError(const std::string& w) : Error("domain", w) {}
};

/// Point on the singular axis of the requested gauge chart for omega.
class ChartError : public Error
{
public:
   explicit ChartError(const std::string& w) : Error("chart", w) {}
};

/// A holonomy eigenvalue too close to an integer (e^{2 pi i lambda} = 1).
class GenericityError : public Error
{
public:
   GenericityError(const std::string& w, int channel)
      : Error("genericity", w), channel_(channel) {}
   int channel() const noexcept { return channel_; }

private:
   int channel_;
};

/// Quadrature or series failed to reach its tolerance.
class ConvergenceError : public Error
{
public:
   explicit ConvergenceError(const std::string& w) : Error("convergence", w) {}
};

/// A quantity that must be rotation invariant was not.
class SymmetryError : public Error
{
public:
   explicit SymmetryError(const std::string& w) : Error("symmetry", w) {}
};

/// Internal consistency fault (non-definite metric, failed cancellation).
class ConsistencyError : public Error
{
public:
   explicit ConsistencyError(const std::string& w) : Error("consistency", w) {}
};

/// Malformed input document (syntax, unknown keys, wrong JSON types).
class ParseError : public Error
{
public:
   explicit ParseError(const std::string& w) : Error("parse", w) {}
};

/// Invalid user-supplied parameters.
class ValidationError : public Error
{
public:
   explicit ValidationError(const std::string& w) : Error("validation", w) {}
};

}  // namespace tnindex

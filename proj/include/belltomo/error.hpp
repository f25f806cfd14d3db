#ifndef BELLTOMO_ERROR_HPP
#define BELLTOMO_ERROR_HPP

#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace belltomo {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated an operation's precondition.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// The request exceeds the sizes the dense representations support.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A constructive result failed its own entry-wise verification.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure could not reach its target accuracy.
/// `residual()` carries the achieved error bound or the offending residual.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double residual)
      : Error(what + " (residual " + format(residual) + ")"), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  static std::string format(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
  }
  double residual_;
};

/// Every evaluation of a search objective failed.
class SearchError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file; `line()` is 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace belltomo

#endif  // BELLTOMO_ERROR_HPP

#pragma once

#include <stdexcept>
#include <string>

namespace envelope {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The scalar system has no root in the search bracket: the requested
/// level does not exist as a bound state.
class NoBoundStateError : public Error {
 public:
  using Error::Error;
};

/// An iterative procedure exhausted its budget.
class NonConvergenceError : public Error {
 public:
  using Error::Error;
};

/// No root of the calibration equation inside the bracket.
class NoRootError : public Error {
 public:
  using Error::Error;
};

/// Radial stiffness came out negative: no stable orbital oscillation.
class NegativeStiffnessError : public Error {
 public:
  using Error::Error;
};

/// Observable requested for a state mixing different orbital contents,
/// which is ill-defined away from the plain quantum-number count.
class MixedQ0Error : public Error {
 public:
  using Error::Error;
};

/// System outside what the variational solver supports.
class UnsupportedSystemError : public Error {
 public:
  using Error::Error;
};

/// All requested basis bands are symmetry-forbidden.
class EmptyBasisError : public Error {
 public:
  using Error::Error;
};

/// Configuration file syntax or content error; carries a line number.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace envelope

#pragma once

#include <stdexcept>
#include <string>

namespace sweep {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A configuration left the open set U(t) on which derivatives are defined.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Invalid regularity parameters or operation arguments.
class ParameterError : public Error {
public:
  using Error::Error;
};

/// An iterative solver hit its iteration cap above tolerance.
class ConvergenceError : public Error {
public:
  using Error::Error;
};

/// The linearized feasible set is empty (dual diverges).
class InfeasiblePolyhedronError : public Error {
public:
  using Error::Error;
};

/// Brute-force projection found no feasible candidate.
class EmptyPolyhedronError : public Error {
public:
  using Error::Error;
};

/// The summed polar parts vanish; the good-direction construction fails.
class DegenerateConeError : public Error {
public:
  using Error::Error;
};

/// Time step exceeds the admissible bound h_max.
class StepTooLargeError : public Error {
public:
  using Error::Error;
};

/// An iterate violated the feasibility tolerance.
class FeasibilityError : public Error {
public:
  using Error::Error;
};

/// Multiplier elimination could not reproduce the target force.
class InfeasibleDecompositionError : public Error {
public:
  using Error::Error;
};

/// Convex-hull step of the elimination algorithm degenerated.
class DegenerateHullError : public Error {
public:
  using Error::Error;
};

/// Malformed scenario file.
class ParseError : public Error {
public:
  using Error::Error;
};

/// Well-formed scenario file with invalid content.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// Filesystem failure while reading or writing artifacts.
class IoError : public Error {
public:
  using Error::Error;
};

} // namespace sweep

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace topdc {

// Every library failure derives from Error. Numerical failures (the CLI maps
// them to exit code 3) derive from NumericalError; input/validation failures
// (exit code 2) derive from InputError.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

// materials
class OutOfRange : public InputError {
 public:
  using InputError::InputError;
};
class UnknownSpecies : public InputError {
 public:
  using InputError::InputError;
};

// file parsing
class ParseError : public InputError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};
class MonotonicityError : public InputError {
 public:
  using InputError::InputError;
};

// modes
class ModeCutOff : public NumericalError {
 public:
  using NumericalError::NumericalError;
};
class InvalidGeometry : public InputError {
 public:
  using InputError::InputError;
};
class DomainEdge : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// overlap
class GridMismatch : public InputError {
 public:
  using InputError::InputError;
};
class NonPositiveOverlap : public NumericalError {
 public:
  using NumericalError::NumericalError;
};
class DisjointModes : public NonPositiveOverlap {
 public:
  using NonPositiveOverlap::NonPositiveOverlap;
};

// phasematch
class NoRoot : public InputError {
 public:
  using InputError::InputError;
};
class EnergyNotConserved : public InputError {
 public:
  using InputError::InputError;
};

// rates
class NonPositiveOmega3 : public InputError {
 public:
  using InputError::InputError;
};
class GridTooCoarse : public NumericalError {
 public:
  using NumericalError::NumericalError;
};
class MissingSeed : public InputError {
 public:
  using InputError::InputError;
};

// taper
class ProfileTooShort : public InputError {
 public:
  using InputError::InputError;
};
class DegenerateModes : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace topdc

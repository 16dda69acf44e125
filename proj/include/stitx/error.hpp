#pragma once

#include <stdexcept>
#include <string>

namespace stitx {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Violated precondition on caller-supplied arguments.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Numerical or geometric breakdown (degenerate polygon, unbounded LP, ...).
class GeometryError : public Error {
 public:
  using Error::Error;
};

// Simulation aborted (runaway division, repeated degenerate splits, ...).
class SimulationError : public Error {
 public:
  using Error::Error;
};

}  // namespace stitx

#pragma once

#include <stdexcept>
#include <string>

namespace torusone {

// Base of everything the library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input document (CLI exit code 1).
struct ParseError : Error {
  using Error::Error;
};

// Data that parses but violates a precondition (exit code 2).
struct InvalidInput : Error {
  using Error::Error;
};

// Two independent computations disagree (exit code 3).
struct CrossCheckError : Error {
  using Error::Error;
};

// Lattice-point enumeration exceeded TORUSONE_MAX_ENUM (exit code 4).
struct EnumerationLimit : Error {
  using Error::Error;
};

}  // namespace torusone

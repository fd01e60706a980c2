#pragma once

#include <stdexcept>
#include <string>

namespace vamci {

// Base of every error the pipeline raises on bad input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or unreadable input (CLI exit code 2).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed input that violates a domain rule or precondition (CLI exit code 3).
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace vamci

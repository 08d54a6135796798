#pragma once

#include <stdexcept>
#include <string>

namespace cosimplex {

// Malformed input: maps to exit code 2 in the command-line tool.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition of an operation does not hold (bad index, non-normal tower, ...).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The requested quantity needs data above the truncation level.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cosimplex

#pragma once

#include <stdexcept>
#include <string>

namespace mgal {

// Base of every exception thrown by the library. The command-line tool maps
// any Error to a nonzero exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand shapes do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Row or node index outside its container.
class IndexError : public Error {
 public:
  using Error::Error;
};

// Input data violates a documented invariant (asymmetric graph, self-loop, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Configuration cannot be honoured (m < 2 for adversarial training, empty
// labeled set, unknown method, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A loss or probe value became NaN or infinite.
class NumericError : public Error {
 public:
  using Error::Error;
};

// API misuse such as calling backward on a non-scalar.
class ContractError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace mgal

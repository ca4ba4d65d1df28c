#pragma once

#include <stdexcept>
#include <string>

namespace dgn {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Violated precondition: dimension mismatch, invalid argument, domain violation.
struct ContractError : Error {
  using Error::Error;
};

// Malformed input file or record.
struct DataError : Error {
  using Error::Error;
};

// Non-finite value where a finite one is required (e.g. gradients fed to the optimizer).
struct NumericError : Error {
  using Error::Error;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw ContractError(msg);
}

}  // namespace dgn

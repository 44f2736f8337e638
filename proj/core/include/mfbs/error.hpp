#pragma once

#include <stdexcept>
#include <string>

namespace mfbs {

// Input outside a model's domain: guard violations, bad option parameters.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical procedure failed to deliver its contract.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mfbs

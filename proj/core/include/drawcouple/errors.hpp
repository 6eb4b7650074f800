#pragma once

#include <stdexcept>
#include <string>

namespace drawcouple {

// Bad input: malformed population, out-of-range count, unknown id, ...
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An exact enumeration would exceed its guard rail.
class InstanceTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace drawcouple

#pragma once

#include <stdexcept>
#include <string>

namespace remon {

// Thrown when a parameter combination is valid but yields no usable
// operating point (zero-rate code, infeasible blocklength root, ...).
// Precondition violations throw std::invalid_argument instead.
class infeasible_error : public std::runtime_error {
  public:
    explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace remon

#pragma once

#include <stdexcept>
#include <string>

namespace rcdfs {

// Raised for malformed or out-of-range caller input (bad selectors, ragged
// files, invalid parameters).
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// Raised when an estimate is requested over a distribution with no mass.
class EmptyDistributionError : public std::domain_error {
public:
    explicit EmptyDistributionError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace rcdfs

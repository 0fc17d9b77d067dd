#pragma once

#include <stdexcept>
#include <string>

namespace sepfda {

/// Invalid configuration, malformed input, or violated precondition.
/// The CLI maps this category to exit code 2.
class InvalidInputError : public std::runtime_error {
public:
    explicit InvalidInputError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure: loss of positive definiteness, singular updates,
/// failed estimation.  The CLI maps this category to exit code 3.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace sepfda

#pragma once

#include <stdexcept>
#include <string>

namespace bbl {

/// Malformed or out-of-range input (bad parameters, bad JSON fields,
/// violated preconditions). The CLI maps this to exit code 1.
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// An objective or integrand that is not finite on the requested domain,
/// e.g. log utility with reachable nonpositive wealth.
class DomainError : public InputError {
public:
    explicit DomainError(const std::string& what) : InputError(what) {}
};

/// A solver that failed to converge. The CLI maps this to exit code 2.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bbl

#pragma once

#include <stdexcept>
#include <string>

namespace billiards {

// Bad input: malformed curve data, out-of-range arguments, points outside the
// phase space. The CLI maps these to exit code 2.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ConvexityError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class UnsupportedOrderError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class PhaseSpaceError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// A numerical procedure did not reach its tolerance. Exit code 3.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace billiards

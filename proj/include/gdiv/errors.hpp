#pragma once

#include <stdexcept>
#include <string>

namespace gdiv {

// Input that violates a documented precondition of an operation.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Case outside the reach of the formulas.
struct UnsupportedCaseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Enumeration, orbit or precision limits were hit.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ContainmentError : InputError {
    using InputError::InputError;
};
struct NotInKernelError : InputError {
    using InputError::InputError;
};
struct ZeroElementError : InputError {
    using InputError::InputError;
};
struct DivisionByZero : InputError {
    using InputError::InputError;
};
struct DivisorMismatchError : InputError {
    using InputError::InputError;
};
struct NotLambdaPolyError : InputError {
    using InputError::InputError;
};
struct NotSimpleRootError : InputError {
    using InputError::InputError;
};
struct NotCoprimeError : InputError {
    using InputError::InputError;
};
struct NotTameError : InputError {
    using InputError::InputError;
};
struct SplittingBaseError : InputError {
    using InputError::InputError;
};
struct InvalidStructureError : InputError {
    using InputError::InputError;
};

struct BudgetExceededError : ResourceError {
    using ResourceError::ResourceError;
};
struct OrbitBudgetError : ResourceError {
    using ResourceError::ResourceError;
};
struct PrecisionExhaustedError : ResourceError {
    using ResourceError::ResourceError;
};

}  // namespace gdiv

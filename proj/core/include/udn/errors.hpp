#pragma once

#include <stdexcept>
#include <string>

namespace udn {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A quadrature, series or simulation step failed to reach its tolerance.
class NumericFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The requested formula is not valid for these parameters
/// (e.g. strongest-association closed forms below theta = 1).
class ValidityError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace udn

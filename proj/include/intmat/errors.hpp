#pragma once

#include <stdexcept>
#include <string>

namespace intmat {

// Base of every error raised by the library. The CLI maps `exit_code()`
// straight onto the process status.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual int exit_code() const noexcept { return 1; }
};

// Shape mismatch: non-square input to det, k > n for MDS checks, ...
class DimensionError : public Error {
public:
    using Error::Error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class FitError : public Error {
public:
    using Error::Error;
};

// Enumeration would exceed the configured work budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 2; }
};

}  // namespace intmat

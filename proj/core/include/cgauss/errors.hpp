#pragma once

#include <stdexcept>
#include <string>

namespace cgauss {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
};

/// An approximation contradicted a claimed apartness bound |x| >= 2^-k.
/// Signals a violated precondition, not a recoverable state.
class WitnessViolation : public Error {
public:
    explicit WitnessViolation(const std::string& what) : Error(what) {}
};

class DomainViolation : public Error {
public:
    explicit DomainViolation(const std::string& what) : Error(what) {}
};

class FuelExhausted : public Error {
public:
    FuelExhausted() : Error("fuel exhausted") {}
};

/// Every task of a fuel-limited race ran out of fuel.
class AllTasksExhausted : public Error {
public:
    AllTasksExhausted() : Error("all raced tasks exhausted their fuel") {}
};

class SingularMatrix : public Error {
public:
    SingularMatrix() : Error("matrix is singular") {}
};

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

} // namespace cgauss

#pragma once

#include <stdexcept>
#include <string>

namespace zq {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SizeError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct TruncationError : Error { using Error::Error; };
// non-monotone lift, Jacobian sign flip, etc.
struct DegeneracyError : Error { using Error::Error; };
struct SolverError : Error {
    SolverError(const std::string& what, double factor) : Error(what), contraction(factor) {}
    double contraction;
};
struct SymmetryError : Error { using Error::Error; };
struct ExtrapolationError : Error { using Error::Error; };
struct ExtractionError : Error { using Error::Error; };
struct UsageError : Error { using Error::Error; };

} // namespace zq

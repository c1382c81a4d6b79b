#pragma once

#include <stdexcept>
#include <string>

namespace loxo {

// Bad input from the caller: malformed config, parameter out of its stated
// range, mismatched dimensions. Maps to CLI exit code 2.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An evaluation left its mathematical domain (log of a non-positive value,
// division by zero, ...). Treated like a validation problem by the CLI.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The requested computation is excluded by the geometry itself: degenerate
// metric, vanishing denominator, negative discriminant. When a zero crossing
// was located, carries a bracketing interval. Maps to CLI exit code 3.
class AdmissibilityError : public std::runtime_error {
public:
    explicit AdmissibilityError(const std::string& what)
        : std::runtime_error(what) {}
    AdmissibilityError(const std::string& what, double lo, double hi)
        : std::runtime_error(what + " in [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "]"),
          has_bracket(true), bracket_lo(lo), bracket_hi(hi) {}

    bool has_bracket = false;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
};

// A computed curve failed an oracle tolerance. Maps to CLI exit code 4.
class VerificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace loxo

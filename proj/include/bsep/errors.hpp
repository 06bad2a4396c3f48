#pragma once

#include <stdexcept>
#include <string>

namespace bsep {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input text. Carries the 1-based line number when known.
struct ParseError : Error {
    int line = 0;
    explicit ParseError(const std::string& msg, int line_no = 0)
        : Error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
          line(line_no) {}
};

/// Structurally well-formed input that violates a documented rule.
struct ValidationError : Error {
    using Error::Error;
};

struct DisconnectedError : Error {
    explicit DisconnectedError(const std::string& msg = "graph is not connected") : Error(msg) {}
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct NotWeightMinimal : Error {
    using Error::Error;
};

struct NotATree : Error {
    using Error::Error;
};

struct TriangleViolation : Error {
    using Error::Error;
};

struct EmptyInput : Error {
    using Error::Error;
};

struct WrongSize : Error {
    using Error::Error;
};

/// Instance exceeds a configured cap (vertex count, LP size, ...).
struct SizeLimit : Error {
    using Error::Error;
};

/// Search ran out of its node budget. Distinct from proven infeasibility.
struct BudgetExceeded : Error {
    using Error::Error;
};

struct NoApplicableBound : Error {
    using Error::Error;
};

/// Internal self-check failed; indicates a bug, not bad input.
struct SolverSelfCheckError : Error {
    using Error::Error;
};

}  // namespace bsep

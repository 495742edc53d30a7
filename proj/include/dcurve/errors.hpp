#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dcurve {

/// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Precondition violation: the input is outside an operation's domain.
struct domain_error : error {
    using error::error;
};

/// Division by zero in the scalar field, or division by the zero operator.
struct division_by_zero : domain_error {
    division_by_zero() : domain_error("division by zero") {}
    explicit division_by_zero(const std::string& msg) : domain_error(msg) {}
};

/// Syntax error carrying the byte offset of the offending token.
struct parse_error : error {
    std::size_t position;
    parse_error(const std::string& msg, std::size_t pos) : error(msg), position(pos) {}
};

/// A broken internal invariant. Indicates a bug, not bad input.
struct internal_error : error {
    using error::error;
};

} // namespace dcurve

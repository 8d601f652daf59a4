#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace metab {

/// Raised when an operation's mathematical precondition does not hold
/// (rank mismatch, non-monic divisor, index out of range, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Syntax error in one of the text grammars. `position` is a 0-based
/// offset into the input.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t position, const std::string& message)
        : std::runtime_error("parse error at position " + std::to_string(position) + ": " + message),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace metab

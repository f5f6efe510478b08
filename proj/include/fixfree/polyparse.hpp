#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "fixfree/polycore.hpp"

namespace fixfree {

/// Raised for malformed polynomial text; position() is a 0-based byte offset.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t position, const std::string& message)
        : std::runtime_error("parse error at position " + std::to_string(position) + ": " + message),
          position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Integer polynomial in t from an expression such as "(t+1)*(t^2-t-1)" or a
/// coefficient list "[c0, c1, ...]" in ascending order.  Whitespace is ignored.
/// Exponents are nonnegative integer literals no larger than max_exponent.
IntPoly parse_polynomial(const std::string& text, unsigned long max_exponent = 4096);

}  // namespace fixfree

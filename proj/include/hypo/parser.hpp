#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hypo/symbol.hpp"

namespace hypo {

/// Syntax or semantic error in a symbol expression. `position()` is the
/// zero-based character offset where the problem was detected.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position);
    std::size_t position() const { return position_; }
    const std::string& reason() const { return reason_; }

private:
    std::string reason_;
    std::size_t position_;
};

/// Parses an expression over x1..xN with +, -, *, ^, parentheses, the
/// imaginary unit `i`, and integer / decimal / p/q literals. `^` binds
/// tighter than `*`, which binds tighter than `+` and `-`.
PolynomialSymbol parse_symbol(std::string_view text, std::size_t dimension);

}  // namespace hypo

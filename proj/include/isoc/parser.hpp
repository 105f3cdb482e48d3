#pragma once

#include "isoc/poly.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace isoc {

class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& what, std::size_t pos)
        : std::invalid_argument(what + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

// Grammar (whitespace ignored, no implicit multiplication):
//   expr     := term (("+"|"-") term)*
//   term     := factor ("*" factor)*
//   factor   := rational | symbol ("^" uint)? | "(" expr ")" | "-" factor
//   rational := uint ("/" uint)?
//   symbol   := letter+
Poly parseExpr(std::string_view text);

} // namespace isoc

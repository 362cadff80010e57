#pragma once

// Text front end for expressions.
//
//   expr   := term (("+" | "-") term)*
//   term   := factor (("*" | "/") factor)*
//   factor := "-" factor | atom ("^" integer)?
//   atom   := number | "j" | ident | ident "(" expr ")" | "(" expr ")"
//
// `^` binds tighter than unary minus, which binds tighter than `*` and `/`.
// Identifiers are z<k>, zb<k> and the functions exp, ln, sin, cos.
// Binary minus produces Negate nodes inside a Sum: "a - b" is Sum(a, -b).

#include <string>
#include <string_view>

#include "bipara/expr.hpp"

namespace bipara {

/// Throws SyntaxError, UnknownVariable or IndexOutOfRange.
Expr parse(std::string_view text, const CoordinateChart& chart);

/// Deterministic printing that parse() reads back to an equivalent tree.
/// Para-complex constants print as "(a+b*j)", plain j multiples as "j" or
/// "(b*j)".
std::string to_text(const Expr& e);

}  // namespace bipara

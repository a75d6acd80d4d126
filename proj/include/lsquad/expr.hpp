#pragma once

#include <string>

#include "lsquad/core.hpp"

namespace lsquad {

// Small arithmetic expression grammar for user-supplied weight functions:
// numeric constants, x, pi, + - * /, unary minus, ^ (right-associative
// power), sqrt, cos, sin, exp, abs, and parentheses. Compiled once to a
// closure tree; evaluation has no side effects and touches nothing but x.
// Syntax errors raise std::invalid_argument naming the offending position.
weight_fn parse_weight_expr(const std::string& text);

// Catalog lookup by canonical name ("1", "1-x^2", "sqrt(1-x^2)",
// "x*sqrt(1-x^3)", "cos(20*pi*x)"); anything else is parsed as an expression.
weight_fn resolve_weight(const std::string& name_or_expr);

}  // namespace lsquad

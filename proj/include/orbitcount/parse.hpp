#pragma once

#include <string>

#include "orbitcount/multipoly.hpp"

namespace oc {

// Parse an expression over variables x1..x<nvars> with rational literals
// (integer, integer/integer, decimal), operators + - * / ^ and parentheses.
// '^' takes a nonnegative integer literal; '/' requires a nonzero constant
// divisor. Total on the grammar; throws SyntaxError / Error otherwise.
MultiPoly parse_poly(const std::string& text, int nvars);

}  // namespace oc

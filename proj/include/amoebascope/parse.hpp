#pragma once

// Text grammar for polynomial and curve literals (see docs/formats.md).
//
//   polynomial := [sign] term (('+'|'-') term)*
//   term       := factor ('*' factor)*
//   factor     := number | variable ['^' integer]
//   number     := decimal ['/' decimal] ['i']      e.g. 3, -1/6, 0.25, 2i
//               | '(' signed [('+'|'-') unsigned 'i'] ')'   e.g. (-1/6), (1+2i)
//   variable   := 'z' digit+ | 'z' | 'w'           z/w alias z1/z2
//
// Curve literal: "n; comp1; comp2; ...; compn", each component a univariate
// polynomial in t, optionally "(num)/(den)" (both parenthesized; a bare '/'
// between digits is a rational coefficient, never polynomial division).
//
// Parse errors carry 1-based line/column of the offending character.

#include <string>

#include "amoebascope/algebra.hpp"

namespace amoebascope {

// ambient_dim: pass 0 to infer from the highest variable index used,
// or a positive value to check/fix the dimension.
LaurentPolynomial parse_polynomial(const std::string& text, int ambient_dim = 0);

RationalCurve parse_curve(const std::string& text);

std::string format_polynomial(const LaurentPolynomial& f);

} // namespace amoebascope

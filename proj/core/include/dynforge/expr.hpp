#pragma once

#include <string>

#include "dynforge/bipoly.hpp"

namespace dynforge {

// Parse a polynomial in t and z over F. Grammar: integer literals (reduced
// mod p), the variables t and z, the operators + - * ^ with nonnegative
// integer exponents, parentheses, and unary minus. Multiplication is always
// explicit and there is no division. Throws parse_error carrying the byte
// offset of the offending token.
BiPoly parse_poly(const std::string& src, FieldPtr F);

// Same grammar restricted to polynomials in t alone.
TPoly parse_tpoly(const std::string& src, FieldPtr F);

// A family a/b written as one expression with at most one division, at the
// top parenthesis level: "(z^3 - t)/z" or just "z^2 + t". Validates through
// the RatFamily constructor.
RatFamily parse_family(const std::string& src, FieldPtr F);

}  // namespace dynforge

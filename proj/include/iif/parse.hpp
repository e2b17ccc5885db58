#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "iif/system.hpp"

namespace iif {

/// A parsed expression: rational when possible, otherwise a Darboux product.
using ParsedExpr = std::variant<Frac, DarbouxExpr>;

/// Grammar: + - * / ^, parentheses, numbers (integer, a/b, decimal), x, y,
/// bare identifiers as parameters, `g0(x)` / `g0''(x)` / `f1(y)` for arbitrary
/// functions and their derivatives, `exp(e)`, `sqrt(e)` and
/// `expint(dx = e, dy = e)`. Throws ParseError with 1-based line and column.
ParsedExpr parse_expr(std::string_view text);

/// Like parse_expr but requires a rational result.
Frac parse_frac(std::string_view text);
/// Like parse_expr, wrapping a rational result.
DarbouxExpr parse_darboux(std::string_view text);

/// `P = ...; Q = ...;` in either order. Throws ParseError or NonCoprime.
PlanarSystem parse_system(std::string_view text);

/// Text that parse_system reads back to the same system.
std::string serialize(const PlanarSystem& sys);

}  // namespace iif

#pragma once

#include <string_view>

#include "iif/parse.hpp"
#include "iif/symbol.hpp"

namespace iif::test {

inline Frac F(std::string_view text) { return parse_frac(text); }
inline DarbouxExpr Dx(std::string_view text) { return parse_darboux(text); }
inline PlanarSystem Sys(std::string_view text) { return parse_system(text); }

inline MPoly X() { return MPoly::variable(var_x()); }
inline MPoly Y() { return MPoly::variable(var_y()); }
inline Frac jetf(std::string_view name, int order = 0) { return Frac::variable(jet(name, order)); }

}  // namespace iif::test

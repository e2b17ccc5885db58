#pragma once

#include <set>
#include <string>
#include <string_view>

#include "iif/frac.hpp"

namespace iif {

/// Total derivative d/dx or d/dy. Jets of functions of the chosen variable
/// move one order up; everything else except the variable itself is constant.
MPoly derive(const MPoly& p, Axis axis);
Frac derive(const Frac& f, Axis axis);
Frac derive(const Frac& f, Axis axis, int times);

inline Frac dx(const Frac& f) { return derive(f, Axis::X); }
inline Frac dy(const Frac& f) { return derive(f, Axis::Y); }

/// Names of arbitrary functions appearing in f.
std::set<std::string> function_names(const Frac& f);

/// Highest derivative order of `name` in f, or -1 if absent.
int max_jet_order(const Frac& f, std::string_view name);

/// Replace the function `name` (and its derivatives) by expr and its derivatives.
Frac substitute_function(const Frac& f, std::string_view name, Axis axis, const Frac& expr);

/// True when f involves neither x, y nor any function symbol.
bool is_constant_coefficient(const Frac& f);

}  // namespace iif

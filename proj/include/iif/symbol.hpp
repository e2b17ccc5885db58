#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace iif {

enum class SymKind : std::uint8_t { X, Y, Param, Jet };

/// Which independent variable a function symbol depends on.
enum class Axis : std::uint8_t { X, Y };

/// A variable of the polynomial ring: x, y, a named constant parameter, or
/// the k-th derivative of an arbitrary function g(x) / f(y).
struct SymbolInfo {
    SymKind kind;
    std::string name;
    int order = 0;
    Axis axis = Axis::X;
};

/// Variables are identified by a stable 64-bit key derived from their
/// description, so monomial order does not depend on creation order.
using Var = std::uint64_t;

Var var_x();
Var var_y();
Var param(std::string_view name);
Var jet(std::string_view name, int order, Axis axis = Axis::X);

const SymbolInfo& info(Var v);

inline bool is_jet(Var v) { return info(v).kind == SymKind::Jet; }
inline bool is_param(Var v) { return info(v).kind == SymKind::Param; }

/// The next derivative g^(k+1) of a jet g^(k). Throws JetLimitExceeded.
Var next_jet(Var v);

/// Maximum jet order; defaults to 8, overridable through IIF_JET_LIMIT.
int jet_limit();
void set_jet_limit(int limit);

/// Display form: x, y, rho, g0(x), g0''(x), f1'(y).
std::string display_name(Var v);

/// Total order used only for printing (x, y, parameters, then jets by name/order).
bool display_less(Var a, Var b);

}  // namespace iif

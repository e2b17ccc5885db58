#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "iif/derivation.hpp"

namespace iif {

/// x' = P, y' = Q with P, Q polynomial in y over the differential field.
class PlanarSystem {
public:
    /// Throws NonCoprime when P and Q share a factor depending on y.
    PlanarSystem(Frac p, Frac q);

    const Frac& P() const { return p_; }
    const Frac& Q() const { return q_; }
    /// Maximum degree in y of P and Q.
    unsigned degree_y() const;
    Frac divergence() const;

    /// Substitute an arbitrary function by an expression (e.g. for numeric runs).
    PlanarSystem substitute_function(std::string_view name, Axis axis, const Frac& expr) const;
    PlanarSystem substitute_param(Var p, const Frac& value) const;

private:
    Frac p_;
    Frac q_;
};

/// gcd of the numerators of P and Q involves neither y nor functions of y.
bool coprime_in_y(const Frac& p, const Frac& q);
inline bool coprime_in_y(const PlanarSystem& s) { return coprime_in_y(s.P(), s.Q()); }

/// Coefficients of y^k of a rational expression whose denominator is free of y.
/// Throws Unsupported otherwise.
std::map<unsigned, Frac> y_coefficients(const Frac& f);

/// P V_x + Q V_y - alpha div V.
Frac iif_residual(const PlanarSystem& sys, const Frac& v, const Frac& alpha = Frac(1));

/// Cofactor k with P f_x + Q f_y = k f and deg_y k <= d - 1; throws NotInvariant.
Frac invariant_curve_check(const PlanarSystem& sys, const Frac& f);

struct DarbouxFactor {
    MPoly base;
    Frac exponent;
};

/// exp of a line integral of the closed form rx dx + ry dy.
struct ExpIntegral {
    Frac rx;
    Frac ry;
};

/// c * prod base_i^lambda_i * exp(e) * prod exp(int rx dx + ry dy).
class DarbouxExpr {
public:
    DarbouxExpr() : constant_(1) {}
    /// A rational expression as a product of its numerator and denominator.
    static DarbouxExpr from_frac(const Frac& f);

    const Frac& constant() const { return constant_; }
    const std::vector<DarbouxFactor>& factors() const { return factors_; }
    const Frac& exp_part() const { return exp_; }
    const std::vector<ExpIntegral>& integrals() const { return integrals_; }

    DarbouxExpr& scale(const Frac& c);
    /// Multiplies by base^exponent, merging equal bases.
    DarbouxExpr& times_power(const MPoly& base, const Frac& exponent);
    DarbouxExpr& times_exp(const Frac& e);
    /// Throws Unsupported when rx dx + ry dy is not closed.
    DarbouxExpr& times_exp_integral(const Frac& rx, const Frac& ry);

    /// d/dx log V or d/dy log V; throws ZeroBase for a zero base.
    Frac log_derivative(Axis axis) const;
    /// V^r, distributing the power over every factor.
    DarbouxExpr pow(const Frac& r) const;
    friend DarbouxExpr operator*(const DarbouxExpr& a, const DarbouxExpr& b);

    /// The rational value when every exponent is an integer and no exponential remains.
    std::optional<Frac> as_frac() const;

    DarbouxExpr substitute_function(std::string_view name, Axis axis, const Frac& expr) const;
    DarbouxExpr substitute_param(Var p, const Frac& value) const;

private:
    Frac constant_;
    std::vector<DarbouxFactor> factors_;
    Frac exp_;
    std::vector<ExpIntegral> integrals_;
};

/// `c * (base)^(e) * exp((h)/(g))`.
std::string to_string(const DarbouxExpr& v);

/// P (log V)_x + Q (log V)_y - alpha div.
Frac darboux_log_residual(const PlanarSystem& sys, const DarbouxExpr& v, const Frac& alpha = Frac(1));

}  // namespace iif

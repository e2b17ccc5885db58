#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "iif/ore.hpp"

namespace iif {

/// sum c_j * u_j + rest, where the u_j are jets of unknown functions and the
/// coefficients are free of unknowns.
class LinearForm {
public:
    LinearForm() = default;
    explicit LinearForm(Frac rest) : rest_(std::move(rest)) {}

    /// Splits an expression that is linear in the jets of `unknowns`.
    /// Throws Unsupported when f is not linear in them.
    static LinearForm from_frac(const Frac& f, const std::set<std::string>& unknowns);
    static LinearForm unknown(std::string_view name, Axis axis = Axis::X, int order = 0);

    const std::map<Var, Frac>& terms() const { return terms_; }
    const Frac& rest() const { return rest_; }
    bool is_zero() const { return terms_.empty() && rest_.is_zero(); }
    bool is_homogeneous() const { return rest_.is_zero(); }

    std::set<std::string> unknowns() const;
    /// Highest order of `name`, -1 if absent.
    int order_of(std::string_view name) const;
    /// Coefficient of the jet of `name` with the given order.
    Frac coefficient(std::string_view name, int order) const;
    /// The operator acting on `name`; its axis comes from the jets present.
    OrePoly operator_on(std::string_view name, Axis axis = Axis::X) const;

    LinearForm derive(Axis axis) const;
    /// Replaces `name` and its derivatives by expr and its derivatives.
    LinearForm substitute(std::string_view name, const LinearForm& expr, Axis axis = Axis::X) const;
    /// Applies a substitution to the coefficients (e.g. to a system function).
    LinearForm map_coefficients(const std::function<Frac(const Frac&)>& fn) const;
    Frac to_frac() const;

    friend LinearForm operator+(const LinearForm& a, const LinearForm& b);
    friend LinearForm operator-(const LinearForm& a, const LinearForm& b);
    friend LinearForm operator*(const Frac& c, const LinearForm& a);
    friend bool operator==(const LinearForm& a, const LinearForm& b) {
        return a.terms_ == b.terms_ && a.rest_ == b.rest_;
    }

private:
    std::map<Var, Frac> terms_;
    Frac rest_;
};

/// `L(h0) + M(h2) + rest` with operators in the serialization of OrePoly.
std::string to_string(const LinearForm& f);

struct LabelledEquation {
    std::string label;
    LinearForm form;
    /// Power of y the equation came from, -1 when not applicable.
    int power = -1;
};

/// Linear differential equations in several unknown functions.
struct LinearDiffSystem {
    std::vector<std::string> unknowns;
    Axis axis = Axis::X;
    std::vector<LabelledEquation> equations;
};

}  // namespace iif

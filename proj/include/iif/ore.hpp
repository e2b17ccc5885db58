#pragma once

#include <string>
#include <utility>
#include <vector>

#include "iif/derivation.hpp"

namespace iif {

/// Derivation record kept per call: narrative steps plus every non-constant
/// quantity that was divided by and is therefore assumed nonzero.
struct StepLog {
    std::vector<std::string> steps;
    std::vector<Frac> side_conditions;

    void step(std::string s) { steps.push_back(std::move(s)); }
    /// Records f != 0 unless f is a nonzero rational, deduplicating up to sign.
    void assume_nonzero(const Frac& f);
    void merge(const StepLog& other);
};

/// Linear differential operator sum a_k * D^k with D a = a D + a'.
class OrePoly {
public:
    OrePoly() = default;
    explicit OrePoly(Axis axis) : axis_(axis) {}
    OrePoly(Axis axis, std::vector<Frac> coeffs);

    static OrePoly d(Axis axis = Axis::X) { return OrePoly(axis, {Frac(0), Frac(1)}); }
    static OrePoly scalar(const Frac& a, Axis axis = Axis::X) { return OrePoly(axis, {a}); }

    Axis axis() const { return axis_; }
    const std::vector<Frac>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    /// -1 for the zero operator.
    int order() const { return static_cast<int>(c_.size()) - 1; }
    const Frac& lead() const { return c_.back(); }
    Frac coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(k)] : Frac(); }

    OrePoly monic() const;
    /// L(f) for an expression f in the ambient field.
    Frac apply(const Frac& f) const;

    friend OrePoly operator+(const OrePoly& a, const OrePoly& b);
    friend OrePoly operator-(const OrePoly& a, const OrePoly& b);
    friend OrePoly operator*(const OrePoly& a, const OrePoly& b);
    friend OrePoly operator*(const Frac& a, const OrePoly& b);
    friend bool operator==(const OrePoly& a, const OrePoly& b) { return a.axis_ == b.axis_ && a.c_ == b.c_; }

private:
    void trim();

    Axis axis_ = Axis::X;
    std::vector<Frac> c_;
};

/// A = Q * B + R with order(R) < order(B). Leading coefficients of B that are
/// not rational constants go to the log when provided.
std::pair<OrePoly, OrePoly> right_divide(const OrePoly& a, const OrePoly& b, StepLog* log = nullptr);

/// Monic greatest common right divisor by the right Euclidean algorithm.
OrePoly ore_gcrd(const OrePoly& a, const OrePoly& b, StepLog* log = nullptr);

/// `a2*D^2 + a1*D + a0` with parenthesized sums.
std::string to_string(const OrePoly& op);

/// Rewrite w^(k), k >= 2, using the second-order relation rel(w) = 0, where w
/// is the function `name`. The result involves only w and w'.
Frac reduce_mod_relation(const Frac& expr, std::string_view name, const OrePoly& relation);

}  // namespace iif

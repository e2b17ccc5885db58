#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "iif/linear.hpp"
#include "iif/system.hpp"

namespace iif {

enum class AnsatzShape { PlainSum, PoweredSum, SingleVariable, Product };
enum class Parity { None, Even };

struct AnsatzSpec {
    AnsatzShape shape = AnsatzShape::PlainSum;
    /// Degree M of the sum (inner degree m for PoweredSum).
    int degree = 0;
    /// Outer power n of PoweredSum.
    int power = 2;
    Parity parity = Parity::None;
    /// Explicit y-exponents; overrides degree/parity when nonempty.
    std::vector<int> powers;
    Frac alpha = Frac(1);
    /// Unknown name prefix: h0, h2, ... or the single function name.
    std::string prefix = "h";
    /// Known x-factor r(x) of the Product shape.
    Frac product_factor = Frac(1);

    std::vector<int> exponents() const;
    std::vector<std::string> unknown_names() const;
    /// sum h_i(x) y^i, V0(y) or r(x) h(y) with symbolic unknowns.
    Frac candidate() const;
    Axis axis() const { return shape == AnsatzShape::SingleVariable || shape == AnsatzShape::Product ? Axis::Y : Axis::X; }
};

/// One equation per surviving power of y of the residual (a single equation
/// for the one-function shapes).
LinearDiffSystem build_coefficient_system(const PlanarSystem& sys, const AnsatzSpec& spec);

struct TriangularOptions {
    /// Unknown never solved for; defaults to the last unknown.
    std::optional<std::string> keep;
    /// Integrate single-unknown first-order equations with closed-form solutions.
    bool integrate = false;
    /// Integration constant names, e.g. h6 -> k6 (default k followed by the index).
    std::map<std::string, std::string> constants;
};

struct TriangularResult {
    /// Solved unknowns in the order they were eliminated.
    std::vector<std::pair<std::string, LinearForm>> solved;
    LinearDiffSystem remaining;
    StepLog log;
};

TriangularResult triangular_substitute(const LinearDiffSystem& sys, const TriangularOptions& opts = {});

/// Numerator of a condition with monomial and rational content removed, sign fixed.
MPoly condition_core(const Frac& c);

/// Conditions making B a multiple of A, including the inhomogeneous parts.
std::vector<MPoly> equivalence_conditions(const LinearForm& a, const LinearForm& b, const std::string& unknown);

/// Conditions making every coefficient of the form vanish.
std::vector<MPoly> nullity_conditions(const LinearForm& f);

struct SolvedConditions {
    /// function name -> value, in solving order (later values may refer to
    /// earlier-solved names only through the printed form).
    std::vector<std::pair<std::string, Frac>> assignments;
    /// Conditions that could not be solved, after substitution.
    std::vector<MPoly> residual;
};

/// Repeatedly solves a condition linear in an undifferentiated function symbol.
/// Candidates come from `prefer` in order, otherwise lexicographically.
SolvedConditions solve_conditions(std::vector<MPoly> conditions, const std::vector<std::string>& prefer = {},
                                  StepLog* log = nullptr);

/// Apply solved assignments (functions of x) to an expression.
Frac apply_assignments(const Frac& f, const std::vector<std::pair<std::string, Frac>>& assignments);

struct ReductionOutcome {
    enum Kind { SingleODE, ConditionSet, Inconsistent } kind = SingleODE;
    std::string unknown;
    OrePoly op;
    std::vector<MPoly> conditions;
    Frac witness;
    StepLog log;
};

const char* to_string(ReductionOutcome::Kind k);

/// GCRD chain over the operators acting on `target`.
ReductionOutcome compatibility_eliminate(const LinearDiffSystem& sys, const std::string& target);

/// Closed-form solution of a1 h' + a0 h = 0. Falls back to an unevaluated
/// exponential integral and reports NonSplittingDenominator through `exact`.
struct HyperexpSolution {
    DarbouxExpr value;
    bool exact = true;
    /// h'/h as a rational expression.
    Frac log_derivative;
};
HyperexpSolution solve_first_order_hyperexp(const OrePoly& op);

/// V from a kept-unknown solution h with rational log-derivative, expressed
/// as h times a rational expression.
DarbouxExpr back_substitute(const TriangularResult& tri, const AnsatzSpec& spec, const HyperexpSolution& h);

}  // namespace iif

#include "iif/ansatz.hpp"

#include <algorithm>

#include "iif/error.hpp"
#include "iif/upoly.hpp"

namespace iif {

namespace {

std::string trailing_index(const std::string& name) {
    std::size_t i = name.size();
    while (i > 0 && std::isdigit(static_cast<unsigned char>(name[i - 1]))) --i;
    return name.substr(i);
}

Axis function_axis(const Frac& f, std::string_view name, Axis fallback = Axis::X) {
    for (const MPoly* p : {&f.num(), &f.den()})
        for (Var v : p->variables()) {
            const SymbolInfo& s = info(v);
            if (s.kind == SymKind::Jet && s.name == name) return s.axis;
        }
    return fallback;
}

bool has_functions(const Frac& f) { return !function_names(f).empty(); }

// Multiply through by the common denominator and remove the content shared by
// every coefficient, so single-function equations print without spurious factors.
LinearForm primitive(const LinearForm& f) {
    MPoly den(1);
    auto absorb = [&den](const Frac& c) {
        if (c.is_zero()) return;
        den = den * divide_or_throw(c.den(), gcd(den, c.den()));
    };
    for (const auto& [v, c] : f.terms()) absorb(c);
    absorb(f.rest());
    LinearForm scaled = Frac(den) * f;
    MPoly g;
    for (const auto& [v, c] : scaled.terms()) g = g.is_zero() ? c.num() : gcd(g, c.num());
    if (!scaled.rest().is_zero()) g = g.is_zero() ? scaled.rest().num() : gcd(g, scaled.rest().num());
    if (g.is_zero()) return f;
    Frac s = Frac(MPoly(1), g);
    LinearForm out = s * scaled;
    // Fix the sign on the highest-order coefficient.
    const Frac* lead = nullptr;
    int best = -1;
    for (const auto& [v, c] : out.terms())
        if (info(v).order > best) {
            best = info(v).order;
            lead = &c;
        }
    if (lead) {
        Rat rc = lead->num().rational_content();
        std::string txt = to_string(lead->num());
        if (!txt.empty() && txt[0] == '-') rc = -rc;
        out = Frac(1 / rc) * out;
    }
    return out;
}

void remove_equation_if_zero(std::vector<LabelledEquation>& eqs, StepLog& log) {
    for (auto it = eqs.begin(); it != eqs.end();) {
        if (it->form.is_zero()) {
            log.step(it->label + " relation vanishes identically");
            it = eqs.erase(it);
        } else {
            ++it;
        }
    }
}

// Gaussian elimination over the fraction field. Rows are coefficient vectors
// with the right-hand side last. Free unknowns are set to zero.
std::optional<std::vector<Frac>> solve_linear(std::vector<std::vector<Frac>> rows, std::size_t n) {
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c].is_zero()) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        Frac inv = rows[r][c].inverse();
        for (auto& e : rows[r]) e *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c].is_zero()) continue;
            Frac m = rows[i][c];
            for (std::size_t j = c; j <= n; ++j) rows[i][j] -= m * rows[r][j];
        }
        pivot_col.push_back(static_cast<int>(c));
        ++r;
    }
    for (std::size_t i = r; i < rows.size(); ++i)
        if (!rows[i][n].is_zero()) return std::nullopt;
    std::vector<Frac> out(n);
    for (std::size_t i = 0; i < r; ++i) out[static_cast<std::size_t>(pivot_col[i])] = rows[i][n];
    return out;
}

// Candidate bases f for terms c f'/f: squarefree factors of the denominator,
// with univariate rational factors split into their rational linear factors.
std::vector<MPoly> log_candidates(const MPoly& den, Var t) {
    std::vector<MPoly> out;
    auto add = [&out](const MPoly& f) {
        if (f.is_constant()) return;
        MPoly m = f.monic();
        if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    };
    for (auto& [f, mult] : squarefree_factors(den)) {
        std::optional<UPoly> u = UPoly::from_mpoly(f, t);
        if (!u || u->degree() < 2) {
            add(f);
            continue;
        }
        UPoly rest = *u;
        for (const Rat& root : rational_roots(rest)) {
            UPoly lin(t, {-root, Rat(1)});
            while (true) {
                auto [q, r] = divmod(rest, lin);
                if (!r.is_zero()) break;
                rest = q;
            }
            add(lin.to_mpoly());
        }
        if (rest.degree() > 0) add(rest.to_mpoly());
    }
    return out;
}

Var axis_var(Axis a) { return a == Axis::X ? var_x() : var_y(); }

}  // namespace

// ---------------------------------------------------------------- AnsatzSpec

std::vector<int> AnsatzSpec::exponents() const {
    if (shape == AnsatzShape::SingleVariable || shape == AnsatzShape::Product) return {0};
    if (!powers.empty()) return powers;
    std::vector<int> out;
    for (int i = 0; i <= degree; ++i)
        if (parity == Parity::None || i % 2 == 0) out.push_back(i);
    return out;
}

std::vector<std::string> AnsatzSpec::unknown_names() const {
    if (shape == AnsatzShape::SingleVariable || shape == AnsatzShape::Product) return {prefix};
    std::vector<std::string> out;
    for (int i : exponents()) out.push_back(prefix + std::to_string(i));
    return out;
}

Frac AnsatzSpec::candidate() const {
    if (shape == AnsatzShape::SingleVariable) return Frac::variable(jet(prefix, 0, Axis::Y));
    if (shape == AnsatzShape::Product) return product_factor * Frac::variable(jet(prefix, 0, Axis::Y));
    MPoly acc;
    MPoly y = MPoly::variable(var_y());
    for (int i : exponents()) acc += MPoly::variable(jet(prefix + std::to_string(i), 0)) * y.pow(static_cast<unsigned>(i));
    return Frac(acc);
}

// ---------------------------------------------------------------- coefficient system

LinearDiffSystem build_coefficient_system(const PlanarSystem& sys, const AnsatzSpec& spec) {
    LinearDiffSystem out;
    out.unknowns = spec.unknown_names();
    out.axis = spec.axis();
    std::set<std::string> names(out.unknowns.begin(), out.unknowns.end());
    Frac c = spec.candidate();
    Frac res;
    if (spec.shape == AnsatzShape::PoweredSum) {
        if (spec.power < 2) throw MathError(ErrorKind::Unsupported, "powered ansatz needs an outer power of at least 2");
        res = sys.P() * dx(c) + sys.Q() * dy(c) - spec.alpha * sys.divergence() * c / Frac(spec.power);
    } else {
        res = iif_residual(sys, c, spec.alpha);
    }
    if (spec.shape == AnsatzShape::SingleVariable || spec.shape == AnsatzShape::Product) {
        LinearForm f = LinearForm::from_frac(res, names);
        if (!f.is_zero()) out.equations.push_back({"all", primitive(f), -1});
        return out;
    }
    // Powered equations are labelled by the power they lead in the full residual n c^(n-1) R.
    const auto exps = spec.exponents();
    const int shift = spec.shape == AnsatzShape::PoweredSum ? (spec.power - 1) * *std::max_element(exps.begin(), exps.end()) : 0;
    auto coeffs = y_coefficients(res);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        if (it->second.is_zero()) continue;
        int k = static_cast<int>(it->first) + shift;
        out.equations.push_back({"y^" + std::to_string(k), LinearForm::from_frac(it->second, names), k});
    }
    return out;
}

// ---------------------------------------------------------------- triangular substitution

TriangularResult triangular_substitute(const LinearDiffSystem& sys, const TriangularOptions& opts) {
    TriangularResult r;
    r.remaining = sys;
    if (sys.unknowns.empty()) return r;
    const std::string keep = opts.keep.value_or(sys.unknowns.back());
    auto& eqs = r.remaining.equations;
    std::stable_sort(eqs.begin(), eqs.end(),
                     [](const LabelledEquation& a, const LabelledEquation& b) { return a.power > b.power; });

    auto eliminate = [&](const std::string& u, const LinearForm& expr) {
        for (auto& e : eqs) e.form = e.form.substitute(u, expr, sys.axis);
        for (auto& [name, f] : r.solved) f = f.substitute(u, expr, sys.axis);
        r.solved.emplace_back(u, expr);
        remove_equation_if_zero(eqs, r.log);
    };

    while (true) {
        bool changed = false;
        if (opts.integrate) {
            for (auto it = eqs.begin(); it != eqs.end(); ++it) {
                auto us = it->form.unknowns();
                if (us.size() != 1 || !it->form.is_homogeneous()) continue;
                const std::string u = *us.begin();
                if (u == keep || it->form.order_of(u) != 1) continue;
                HyperexpSolution h = solve_first_order_hyperexp(it->form.operator_on(u, sys.axis));
                if (!h.exact) continue;
                auto value = h.value.as_frac();
                if (!value) continue;
                auto named = opts.constants.find(u);
                std::string k = named != opts.constants.end() ? named->second : "k" + trailing_index(u);
                LinearForm expr(Frac::variable(param(k)) * *value);
                r.log.step("integrate the " + it->label + " relation: " + u + " = " + to_string(expr.rest()));
                eqs.erase(it);
                eliminate(u, expr);
                changed = true;
                break;
            }
        }
        if (changed) continue;
        for (std::size_t i = 0; i < eqs.size() && !changed; ++i) {
            for (const std::string& u : eqs[i].form.unknowns()) {
                if (u == keep || eqs[i].form.order_of(u) != 0) continue;
                LabelledEquation eq = eqs[i];
                Frac c = eq.form.coefficient(u, 0);
                LinearForm expr = Frac(-1) / c * (eq.form - c * LinearForm::unknown(u, sys.axis));
                r.log.assume_nonzero(c);
                r.log.step("solve the " + eq.label + " relation for " + u + ": " + to_string(expr));
                eqs.erase(eqs.begin() + static_cast<std::ptrdiff_t>(i));
                eliminate(u, expr);
                changed = true;
                break;
            }
        }
        if (!changed) break;
    }
    std::vector<std::string> left;
    for (const auto& u : sys.unknowns)
        if (std::none_of(r.solved.begin(), r.solved.end(), [&](const auto& s) { return s.first == u; }))
            left.push_back(u);
    r.remaining.unknowns = left;
    return r;
}

// ---------------------------------------------------------------- conditions

MPoly condition_core(const Frac& c) {
    MPoly p = c.num();
    if (p.is_zero()) return p;
    Monomial m = p.monomial_content();
    if (!m.is_one()) {
        if (p.is_monomial()) {
            // v1^a v2^b = 0 keeps its support.
            MPoly r(1);
            for (const auto& [v, e] : m.factors()) r = r * MPoly::variable(v);
            return r;
        }
        p = divide_or_throw(p, MPoly::monomial(m));
    }
    Rat s = 1 / p.rational_content();
    std::string txt = to_string(p);
    if (!txt.empty() && txt[0] == '-') s = -s;
    return p * s;
}

std::vector<MPoly> equivalence_conditions(const LinearForm& a, const LinearForm& b, const std::string& unknown) {
    int la = a.order_of(unknown), lb = b.order_of(unknown);
    int l = std::max(la, lb);
    std::vector<MPoly> out;
    auto push = [&out](const Frac& f) {
        MPoly core = condition_core(f);
        if (core.is_zero()) return;
        if (std::find(out.begin(), out.end(), core) == out.end()) out.push_back(core);
    };
    if (l < 0) {
        push(b.rest() * a.rest() - a.rest() * b.rest());
        return out;
    }
    const LinearForm& pa = la >= lb ? a : b;
    const LinearForm& pb = la >= lb ? b : a;
    Frac al = pa.coefficient(unknown, l), bl = pb.coefficient(unknown, l);
    for (int k = l - 1; k >= 0; --k) push(pb.coefficient(unknown, k) * al - pa.coefficient(unknown, k) * bl);
    if (bl.is_zero()) push(al);
    push(pb.rest() * al - pa.rest() * bl);
    return out;
}

std::vector<MPoly> nullity_conditions(const LinearForm& f) {
    std::vector<MPoly> out;
    auto push = [&out](const Frac& c) {
        MPoly core = condition_core(c);
        if (!core.is_zero() && std::find(out.begin(), out.end(), core) == out.end()) out.push_back(core);
    };
    std::vector<std::pair<Var, Frac>> ts(f.terms().begin(), f.terms().end());
    std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) { return info(a.first).order > info(b.first).order; });
    for (const auto& [v, c] : ts) push(c);
    push(f.rest());
    return out;
}

SolvedConditions solve_conditions(std::vector<MPoly> conditions, const std::vector<std::string>& prefer, StepLog* log) {
    SolvedConditions out;
    auto tidy = [](std::vector<MPoly>& cs) {
        std::vector<MPoly> kept;
        for (auto& c : cs) {
            MPoly core = condition_core(Frac(c));
            if (!core.is_zero() && std::find(kept.begin(), kept.end(), core) == kept.end()) kept.push_back(core);
        }
        cs = std::move(kept);
    };
    tidy(conditions);
    while (!conditions.empty()) {
        std::set<std::string> present;
        for (const auto& c : conditions)
            for (const auto& n : function_names(Frac(c))) present.insert(n);
        std::vector<std::string> order;
        for (const auto& n : prefer)
            if (present.count(n)) order.push_back(n);
        for (const auto& n : present)
            if (std::find(order.begin(), order.end(), n) == order.end()) order.push_back(n);

        bool solved = false;
        for (const std::string& name : order) {
            std::vector<std::size_t> idx(conditions.size());
            for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
            std::stable_sort(idx.begin(), idx.end(),
                             [&](std::size_t a, std::size_t b) { return conditions[a].size() < conditions[b].size(); });
            for (std::size_t i : idx) {
                const MPoly& c = conditions[i];
                Frac fc(c);
                if (max_jet_order(fc, name) != 0) continue;
                Axis axis = function_axis(fc, name);
                Var v = jet(name, 0, axis);
                if (c.degree(v) != 1) continue;
                MPoly lead = c.coefficient(v, 1);
                Frac value(-c.coefficient(v, 0), lead);
                if (log) {
                    log->assume_nonzero(Frac(lead));
                    log->step("solve condition for " + name + ": " + name + " = " + to_string(value));
                }
                out.assignments.emplace_back(name, value);
                std::vector<MPoly> next;
                for (std::size_t j = 0; j < conditions.size(); ++j)
                    if (j != i) next.push_back(substitute_function(Frac(conditions[j]), name, axis, value).num());
                conditions = std::move(next);
                tidy(conditions);
                solved = true;
                break;
            }
            if (solved) break;
        }
        if (!solved) break;
    }
    out.residual = std::move(conditions);
    return out;
}

Frac apply_assignments(const Frac& f, const std::vector<std::pair<std::string, Frac>>& assignments) {
    Frac out = f;
    for (const auto& [name, value] : assignments)
        out = substitute_function(out, name, function_axis(out, name, function_axis(value, name)), value);
    return out;
}

// ---------------------------------------------------------------- compatibility

const char* to_string(ReductionOutcome::Kind k) {
    switch (k) {
        case ReductionOutcome::SingleODE: return "single-ode";
        case ReductionOutcome::ConditionSet: return "condition-set";
        case ReductionOutcome::Inconsistent: return "inconsistent";
    }
    return "?";
}

ReductionOutcome compatibility_eliminate(const LinearDiffSystem& sys, const std::string& target) {
    ReductionOutcome out;
    out.unknown = target;
    std::vector<std::pair<std::string, OrePoly>> ops;
    for (const auto& eq : sys.equations) {
        if (eq.form.is_zero()) continue;
        for (const auto& u : eq.form.unknowns())
            if (u != target) throw MathError(ErrorKind::Unsupported, "unknown " + u + " was not eliminated");
        OrePoly op = eq.form.operator_on(target, sys.axis);
        if (!eq.form.is_homogeneous()) {
            if (op.is_zero()) {
                out.kind = ReductionOutcome::Inconsistent;
                out.witness = eq.form.rest();
                out.log.step("the " + eq.label + " relation has no unknown left but a nonzero remainder");
                return out;
            }
            // L(h) + r = 0 implies D((1/r) L)(h) = 0.
            out.log.assume_nonzero(eq.form.rest());
            op = OrePoly::d(sys.axis) * (eq.form.rest().inverse() * op);
            out.log.step("divide the " + eq.label + " relation by its inhomogeneous part and differentiate");
        }
        if (op.order() == 0) {
            out.kind = ReductionOutcome::Inconsistent;
            out.witness = op.coeff(0);
            out.log.step("the " + eq.label + " relation forces " + target + " = 0");
            return out;
        }
        ops.emplace_back(eq.label, op);
    }
    if (ops.empty()) {
        out.log.step("no relation constrains " + target);
        return out;
    }
    std::stable_sort(ops.begin(), ops.end(), [](const auto& a, const auto& b) { return a.second.order() > b.second.order(); });
    OrePoly g = ops.front().second.monic();
    out.log.step("start from the " + ops.front().first + " relation, order " + std::to_string(g.order()));
    for (std::size_t i = 1; i < ops.size(); ++i) {
        OrePoly a = g, b = ops[i].second;
        out.log.step("combine with the " + ops[i].first + " relation, order " + std::to_string(b.order()));
        while (true) {
            if (b.is_zero()) {
                g = a.monic();
                break;
            }
            if (a.order() < b.order()) std::swap(a, b);
            auto [q, rem] = right_divide(a, b, &out.log);
            (void)q;
            if (rem.is_zero()) {
                out.log.step(b.order() == a.order() ? "the two relations of order " + std::to_string(b.order()) + " coincide"
                                                     : "order " + std::to_string(b.order()) + " divides order " +
                                                           std::to_string(a.order()) + " on the right");
                g = b.monic();
                break;
            }
            out.log.step("right remainder of orders " + std::to_string(a.order()) + " by " + std::to_string(b.order()) +
                         " has order " + std::to_string(rem.order()));
            if (rem.order() == 0) {
                Frac c = rem.coeff(0);
                if (has_functions(c)) {
                    MPoly core = condition_core(c);
                    out.conditions.push_back(core);
                    out.log.step("order 0 remainder becomes a condition: " + to_string(core) + " = 0");
                    g = b.monic();
                    break;
                }
                out.kind = ReductionOutcome::Inconsistent;
                out.witness = c;
                out.log.step("order 0 remainder " + to_string(c) + " forces " + target + " = 0");
                return out;
            }
            a = b;
            b = rem.monic();
        }
    }
    out.op = g;
    out.kind = out.conditions.empty() ? ReductionOutcome::SingleODE : ReductionOutcome::ConditionSet;
    out.log.step("terminal operator of order " + std::to_string(g.order()) + ": " + to_string(g));
    return out;
}

// ---------------------------------------------------------------- first-order solve

HyperexpSolution solve_first_order_hyperexp(const OrePoly& op) {
    if (op.order() != 1) throw MathError(ErrorKind::Unsupported, "expected a first-order operator");
    if (op.lead().is_zero()) throw MathError(ErrorKind::LeadingCoefficientZero, "leading coefficient vanishes");
    const Axis axis = op.axis();
    const Var t = axis_var(axis);
    HyperexpSolution out;
    Frac ell = -op.coeff(0) / op.lead();
    out.log_derivative = ell;
    if (ell.is_zero()) return out;

    std::vector<MPoly> bases = log_candidates(ell.den(), t);
    int sdeg = 0;
    if (!has_functions(ell)) {
        int dn = static_cast<int>(ell.num().degree(t)), dd = static_cast<int>(ell.den().degree(t));
        sdeg = std::max(0, dn - dd + 1);
    }
    const std::size_t n = bases.size() + static_cast<std::size_t>(sdeg);
    std::vector<Var> unknown;
    for (std::size_t i = 0; i < n; ++i) unknown.push_back(param("__u" + std::to_string(i)));

    Frac e = ell;
    for (std::size_t i = 0; i < bases.size(); ++i)
        e -= Frac::variable(unknown[i]) * derive(Frac(bases[i]), axis) / Frac(bases[i]);
    Frac s;
    MPoly tv = MPoly::variable(t);
    for (int j = 1; j <= sdeg; ++j) s += Frac::variable(unknown[bases.size() + static_cast<std::size_t>(j - 1)]) * Frac(tv.pow(static_cast<unsigned>(j)));
    e -= derive(s, axis);

    // Group the numerator by monomials in everything except parameters.
    std::map<std::vector<std::pair<Var, unsigned>>, std::vector<Frac>> groups;
    auto is_unknown = [&unknown](Var v) { return std::find(unknown.begin(), unknown.end(), v) != unknown.end(); };
    for (const auto& term : e.num().terms()) {
        std::vector<std::pair<Var, unsigned>> key;
        MPoly coef = MPoly(term.coef);
        int col = static_cast<int>(n);
        for (const auto& [v, k] : term.mono.factors()) {
            if (is_unknown(v)) col = static_cast<int>(std::find(unknown.begin(), unknown.end(), v) - unknown.begin());
            else if (is_param(v)) coef = coef * MPoly::variable(v).pow(k);
            else key.emplace_back(v, k);
        }
        auto& row = groups[key];
        if (row.empty()) row.assign(n + 1, Frac());
        if (col == static_cast<int>(n)) row[n] -= Frac(coef);
        else row[static_cast<std::size_t>(col)] += Frac(coef);
    }
    std::vector<std::vector<Frac>> rows;
    for (auto& [k, row] : groups) rows.push_back(std::move(row));
    auto sol = solve_linear(std::move(rows), n);
    if (sol) {
        for (std::size_t i = 0; i < bases.size(); ++i) out.value.times_power(bases[i], (*sol)[i]);
        Frac sv;
        for (int j = 1; j <= sdeg; ++j) sv += (*sol)[bases.size() + static_cast<std::size_t>(j - 1)] * Frac(tv.pow(static_cast<unsigned>(j)));
        if (!sv.is_zero()) out.value.times_exp(sv);
        return out;
    }
    out.exact = false;
    if (axis == Axis::X) out.value.times_exp_integral(ell, Frac());
    else out.value.times_exp_integral(Frac(), ell);
    return out;
}

DarbouxExpr back_substitute(const TriangularResult& tri, const AnsatzSpec& spec, const HyperexpSolution& h) {
    const Axis axis = spec.axis();
    if (spec.shape == AnsatzShape::SingleVariable) return h.value;
    if (spec.shape == AnsatzShape::Product) return DarbouxExpr::from_frac(spec.product_factor) * h.value;

    std::set<std::string> solved_names;
    for (const auto& [n, f] : tri.solved) solved_names.insert(n);
    std::string keep;
    for (const auto& n : spec.unknown_names())
        if (!solved_names.count(n)) {
            if (!keep.empty()) throw MathError(ErrorKind::Unsupported, "more than one unknown left unsolved");
            keep = n;
        }

    // h^(k)/h as rational functions.
    std::vector<Frac> t{Frac(1)};
    auto ratio = [&](int k) {
        while (static_cast<int>(t.size()) <= k) t.push_back(derive(t.back(), axis) + t.back() * h.log_derivative);
        return t[static_cast<std::size_t>(k)];
    };
    std::optional<Frac> hfrac = h.value.as_frac();

    MPoly y = MPoly::variable(var_y());
    Frac inner;
    const auto names = spec.unknown_names();
    const auto exps = spec.exponents();
    for (std::size_t i = 0; i < names.size(); ++i) {
        Frac r;
        if (names[i] == keep) {
            r = Frac(1);
        } else {
            auto it = std::find_if(tri.solved.begin(), tri.solved.end(), [&](const auto& s) { return s.first == names[i]; });
            const LinearForm& f = it->second;
            for (const auto& [v, c] : f.terms()) {
                if (info(v).name != keep) throw MathError(ErrorKind::Unsupported, "solved value refers to " + info(v).name);
                r += c * ratio(info(v).order);
            }
            if (!f.rest().is_zero()) {
                if (!hfrac) throw MathError(ErrorKind::Unsupported, "inhomogeneous value with a non-rational solution");
                r += f.rest() / *hfrac;
            }
        }
        inner += r * Frac(y.pow(static_cast<unsigned>(exps[i])));
    }
    DarbouxExpr v = hfrac ? DarbouxExpr::from_frac(*hfrac * inner) : h.value * DarbouxExpr::from_frac(inner);
    if (spec.shape == AnsatzShape::PoweredSum) v = v.pow(Frac(spec.power));
    return v;
}

}  // namespace iif

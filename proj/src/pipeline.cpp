#include "iif/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <future>
#include <regex>
#include <sstream>
#include <thread>

#include "iif/ansatz.hpp"
#include "iif/error.hpp"
#include "iif/numeric.hpp"
#include "iif/parse.hpp"
#include "iif/series.hpp"

namespace iif {

const char* to_string(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::ConditionalPass: return "conditional-pass";
    }
    return "?";
}

void Report::check(std::string name, bool pass, std::string detail) {
    checks.push_back({std::move(name), pass, std::move(detail)});
}

void Report::finish() {
    bool ok = error.empty() && !checks.empty() &&
              std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    status = !ok ? Status::Fail : side_conditions.empty() ? Status::Pass : Status::ConditionalPass;
}

int default_series_order() {
    if (const char* env = std::getenv("IIF_SERIES_ORDER")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 24;
}

namespace {

// ------------------------------------------------------------------ bindings

struct Binding {
    bool function = false;
    std::string name;
    Axis axis = Axis::X;
    Frac value;
};

class Bindings {
public:
    void add_all(const Section& s) {
        for (const Entry* e : s.all("let")) add(*e);
    }

    void add(const Entry& e) {
        static const std::regex fn(R"(^\s*([A-Za-z_]\w*)\s*\(\s*([xy])\s*\)\s*=(.*)$)");
        static const std::regex par(R"(^\s*([A-Za-z_]\w*)\s*=(.*)$)");
        std::smatch m;
        Binding b;
        std::string rhs;
        if (std::regex_match(e.value, m, fn)) {
            b.function = true;
            b.name = m[1];
            b.axis = m[2] == "x" ? Axis::X : Axis::Y;
            rhs = m[3];
        } else if (std::regex_match(e.value, m, par)) {
            b.name = m[1];
            rhs = m[2];
        } else {
            throw ParseError("let needs 'name = value' or 'f(x) = value'", e.line, 1);
        }
        b.value = parse_frac(rhs);
        list_.push_back(std::move(b));
    }

    Frac apply(Frac f) const {
        for (const Binding& b : list_)
            f = b.function ? substitute_function(f, b.name, b.axis, b.value) : substitute(f, param(b.name), b.value);
        return f;
    }
    PlanarSystem apply(PlanarSystem s) const {
        for (const Binding& b : list_)
            s = b.function ? s.substitute_function(b.name, b.axis, b.value) : s.substitute_param(param(b.name), b.value);
        return s;
    }
    DarbouxExpr apply(DarbouxExpr v) const {
        for (const Binding& b : list_)
            v = b.function ? v.substitute_function(b.name, b.axis, b.value) : v.substitute_param(param(b.name), b.value);
        return v;
    }

private:
    std::vector<Binding> list_;
};

// ------------------------------------------------------------------ entry helpers

/// A section may carry its own `system:`, e.g. a specialised member of the family.
std::string system_for(const Fixture& fx, const Section& s) {
    if (auto own = s.get("system")) return *own;
    return fx.system_text();
}

/// Entries of the form `key qualifier: value`.
std::vector<std::pair<std::string, const Entry*>> qualified(const Section& s, const std::string& key) {
    std::vector<std::pair<std::string, const Entry*>> out;
    for (const Entry& e : s.entries) {
        auto sp = e.key.find(' ');
        if (sp != std::string::npos && e.key.substr(0, sp) == key) {
            std::string q = e.key.substr(sp + 1);
            q.erase(0, q.find_first_not_of(' '));
            out.emplace_back(q, &e);
        }
    }
    return out;
}

int to_int(const Section& s, const std::string& key, int fallback) {
    auto v = s.get(key);
    if (!v) return fallback;
    try {
        return std::stoi(*v);
    } catch (const std::exception&) {
        throw ParseError("'" + key + "' expects an integer", s.line, 1);
    }
}

bool to_bool(const Section& s, const std::string& key, bool fallback) {
    auto v = s.get(key);
    if (!v) return fallback;
    return *v == "yes" || *v == "true" || *v == "1";
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, ',')) {
        std::istringstream w(cur);
        std::string tok;
        while (w >> tok) out.push_back(tok);
    }
    return out;
}

std::vector<double> numbers(const std::string& text) {
    std::vector<double> out;
    for (const std::string& t : split_list(text)) out.push_back(std::stod(t));
    return out;
}

// ------------------------------------------------------------------ comparisons

std::set<std::string> unknown_set(const std::vector<std::string>& names) { return {names.begin(), names.end()}; }

bool mentions_unknown(const Frac& f, const std::set<std::string>& unknowns) {
    for (const MPoly* p : {&f.num(), &f.den()})
        for (Var v : p->variables())
            if (is_jet(v) && unknowns.count(info(v).name)) return true;
    return false;
}

/// a = r * b with r free of y and of the unknowns.
bool proportional(const Frac& a, const Frac& b, const std::set<std::string>& unknowns) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    Frac r = a / b;
    return !r.contains(var_y()) && !mentions_unknown(r, unknowns);
}

bool same_up_to_constant(const DarbouxExpr& a, const DarbouxExpr& b) {
    return a.log_derivative(Axis::X) == b.log_derivative(Axis::X) &&
           a.log_derivative(Axis::Y) == b.log_derivative(Axis::Y);
}

std::string short_text(const std::string& s, std::size_t limit = 240) {
    return s.size() <= limit ? s : s.substr(0, limit) + " ...";
}

// ------------------------------------------------------------------ ansatz configuration

AnsatzSpec ansatz_from(const Section& s, const Bindings& lets) {
    AnsatzSpec spec;
    const std::string shape = s.get_or("ansatz", "plain");
    if (shape == "plain") spec.shape = AnsatzShape::PlainSum;
    else if (shape == "powered") spec.shape = AnsatzShape::PoweredSum;
    else if (shape == "single") spec.shape = AnsatzShape::SingleVariable;
    else if (shape == "product") spec.shape = AnsatzShape::Product;
    else throw ParseError("unknown ansatz '" + shape + "'", s.line, 1);
    spec.degree = to_int(s, "degree", 0);
    spec.power = to_int(s, "power", 2);
    spec.parity = s.get_or("parity", "none") == "even" ? Parity::Even : Parity::None;
    if (auto p = s.get("powers"))
        for (const std::string& t : split_list(*p)) spec.powers.push_back(std::stoi(t));
    spec.prefix = s.get_or("prefix", spec.shape == AnsatzShape::SingleVariable ? "V0" : "h");
    spec.alpha = lets.apply(parse_frac(s.get_or("alpha", "1")));
    if (auto f = s.get("factor")) spec.product_factor = lets.apply(parse_frac(*f));
    return spec;
}

TriangularOptions triangular_from(const Section& s) {
    TriangularOptions o;
    if (auto k = s.get("keep")) o.keep = *k;
    o.integrate = to_bool(s, "integrate", false);
    for (const Entry* e : s.all("constant")) {
        auto eq = e->value.find('=');
        if (eq == std::string::npos) throw ParseError("constant needs 'h = k'", e->line, 1);
        auto t = split_list(e->value.substr(0, eq));
        auto u = split_list(e->value.substr(eq + 1));
        if (t.size() != 1 || u.size() != 1) throw ParseError("constant needs 'h = k'", e->line, 1);
        o.constants[t[0]] = u[0];
    }
    return o;
}

struct Derivation {
    PlanarSystem sys;
    AnsatzSpec spec;
    LinearDiffSystem coefficients;
    TriangularResult tri;
};

Derivation derive_common(const Fixture& fx, const Section& s, const Bindings& lets, Report& rep) {
    PlanarSystem sys = lets.apply(parse_system(system_for(fx, s)));
    AnsatzSpec spec = ansatz_from(s, lets);
    LinearDiffSystem ls = build_coefficient_system(sys, spec);
    Json rel = Json::array();
    for (const auto& e : ls.equations) rel.push_back({{"label", e.label}, {"relation", to_string(e.form)}});
    rep.data["relations"] = rel;
    TriangularResult tri;
    if (to_bool(s, "triangular", true)) {
        tri = triangular_substitute(ls, triangular_from(s));
    } else {
        tri.remaining = ls;
    }
    Json solved = Json::array();
    for (const auto& [name, form] : tri.solved) solved.push_back({{"unknown", name}, {"value", to_string(form)}});
    rep.data["solved"] = solved;
    Json rem = Json::array();
    for (const auto& e : tri.remaining.equations) rem.push_back({{"label", e.label}, {"relation", to_string(e.form)}});
    rep.data["remaining"] = rem;
    for (const auto& st : tri.log.steps) rep.steps.push_back(st);
    for (const auto& c : tri.log.side_conditions) rep.side_conditions.push_back(to_string(c) + " != 0");
    return {sys, spec, ls, tri};
}

const LinearForm* solved_value(const TriangularResult& tri, const std::string& name) {
    for (const auto& [n, f] : tri.solved)
        if (n == name) return &f;
    return nullptr;
}

/// Coefficient of y^k in the full residual of V = c^n, c the inner ansatz with
/// solved unknowns substituted.
std::map<unsigned, Frac> powered_full_residual(const Derivation& d) {
    Frac c = d.spec.candidate();
    for (const auto& [name, form] : d.tri.solved) c = substitute_function(c, name, Axis::X, form.to_frac());
    Frac v = c.pow(d.spec.power);
    return y_coefficients(iif_residual(d.sys, v, d.spec.alpha));
}

// ------------------------------------------------------------------ derive

void run_derive(const Fixture& fx, const Section& s, const Bindings& lets, Report& rep) {
    Derivation d = derive_common(fx, s, lets, rep);
    std::set<std::string> unknowns = unknown_set(d.coefficients.unknowns);

    for (const auto& [label, e] : qualified(s, "relation")) {
        Frac want = lets.apply(parse_frac(e->value));
        auto it = std::find_if(d.coefficients.equations.begin(), d.coefficients.equations.end(),
                               [&](const LabelledEquation& q) { return q.label == label; });
        bool ok = it != d.coefficients.equations.end() && proportional(it->form.to_frac(), want, unknowns);
        rep.check("relation " + label, ok, ok ? "" : "got " + (it == d.coefficients.equations.end() ? std::string("nothing") : short_text(to_string(it->form))));
    }
    if (auto n = s.get("relation-count"))
        rep.check("relation count", static_cast<int>(d.coefficients.equations.size()) == std::stoi(*n),
                  std::to_string(d.coefficients.equations.size()) + " relations");
    for (const auto& [name, e] : qualified(s, "solved")) {
        Frac want = lets.apply(parse_frac(e->value));
        const LinearForm* got = solved_value(d.tri, name);
        bool ok = got && got->to_frac() == want;
        rep.check("solved " + name, ok, got ? short_text(to_string(*got)) : "not solved");
    }
    if (auto n = s.get("remaining-count"))
        rep.check("remaining count", static_cast<int>(d.tri.remaining.equations.size()) == std::stoi(*n),
                  std::to_string(d.tri.remaining.equations.size()) + " equations");
    for (const Entry* e : s.all("remaining")) {
        Frac want = lets.apply(parse_frac(e->value));
        bool ok = std::any_of(d.tri.remaining.equations.begin(), d.tri.remaining.equations.end(),
                              [&](const LabelledEquation& q) { return proportional(q.form.to_frac(), want, unknowns); });
        rep.check("remaining equation (line " + std::to_string(e->line) + ")", ok);
    }
    if (auto id = s.get("identical")) {
        // Full-residual relations y^a and y^b of the powered ansatz: after the
        // solved substitution, y^a / c_top and y^b / c_bottom coincide.
        auto labels = split_list(*id);
        if (labels.size() != 2 || d.spec.shape != AnsatzShape::PoweredSum)
            throw ParseError("identical needs two labels and a powered ansatz", s.line, 1);
        auto coeffs = powered_full_residual(d);
        auto power_of = [](const std::string& l) { return static_cast<unsigned>(std::stoi(l.substr(2))); };
        auto names = d.spec.unknown_names();
        auto inner = [&](const std::string& n) {
            Frac f = Frac::variable(jet(n, 0));
            if (const LinearForm* v = solved_value(d.tri, n)) f = v->to_frac();
            return f;
        };
        Frac a = coeffs.count(power_of(labels[0])) ? coeffs[power_of(labels[0])] : Frac();
        Frac b = coeffs.count(power_of(labels[1])) ? coeffs[power_of(labels[1])] : Frac();
        Frac lhs = a / inner(names.back());
        Frac rhs = b / inner(names.front());
        bool ok = !a.is_zero() && lhs == rhs;
        rep.check("relations " + labels[0] + " and " + labels[1] + " identical", ok);
        rep.data["identical_relation"] = to_string(lhs);
        for (const Entry* e : s.all("identical-to")) {
            Frac want = lets.apply(parse_frac(e->value));
            rep.check("identical relation matches", proportional(lhs, want, unknowns));
        }
    }
    if (auto z = s.get("zero")) {
        std::vector<MPoly> conds;
        for (const auto& q : d.tri.remaining.equations) {
            LinearForm f = q.form;
            for (const std::string& n : split_list(*z)) f = f.substitute(n, LinearForm());
            auto c = nullity_conditions(f);
            conds.insert(conds.end(), c.begin(), c.end());
        }
        Json cj = Json::array();
        for (const auto& c : conds) cj.push_back(to_string(c));
        rep.data["conditions"] = cj;
        if (auto n = s.get("conditions"))
            rep.check("condition count", static_cast<int>(conds.size()) == std::stoi(*n), std::to_string(conds.size()) + " conditions");
    }
    if (rep.checks.empty()) rep.check("derivation completed", true);
}

// ------------------------------------------------------------------ reduce

std::string target_of(const Section& s, const Derivation& d) {
    if (auto t = s.get("target")) return *t;
    if (auto k = s.get("keep")) return *k;
    std::set<std::string> names;
    for (const auto& e : d.tri.remaining.equations)
        for (const auto& n : e.form.unknowns()) names.insert(n);
    if (names.size() != 1) throw MathError(ErrorKind::Unsupported, "reduction target is ambiguous; set 'target'");
    return *names.begin();
}

void record_assignments(Report& rep, const std::vector<std::pair<std::string, Frac>>& a, const std::vector<MPoly>& residual) {
    Json aj = Json::array();
    for (const auto& [n, v] : a) aj.push_back({{"function", n}, {"value", to_string(v)}});
    rep.data["assignments"] = aj;
    Json rj = Json::array();
    for (const auto& c : residual) rj.push_back(to_string(c));
    rep.data["residual_conditions"] = rj;
}

void run_equivalence(const Section& s, const Bindings& lets, Derivation& d, Report& rep) {
    const std::string target = target_of(s, d);
    std::vector<std::string> prefer;
    if (auto p = s.get("prefer")) prefer = split_list(*p);
    int top = -1;
    for (const auto& e : d.tri.remaining.equations) top = std::max(top, e.form.order_of(target));
    std::vector<LinearForm> main;
    std::vector<MPoly> nullity;
    for (const auto& e : d.tri.remaining.equations) {
        if (e.form.order_of(target) == top) {
            main.push_back(e.form);
        } else {
            auto c = nullity_conditions(e.form);
            nullity.insert(nullity.end(), c.begin(), c.end());
        }
    }
    StepLog log;
    log.step("equivalence on " + std::to_string(main.size()) + " equations of order " + std::to_string(top) + "; " +
             std::to_string(d.tri.remaining.equations.size() - main.size()) + " lower-order equations must vanish");
    SolvedConditions first = solve_conditions(nullity, prefer, &log);
    auto substituted = [&](const LinearForm& f, const std::vector<std::pair<std::string, Frac>>& a) {
        return f.map_coefficients([&](const Frac& c) { return apply_assignments(c, a); });
    };
    std::vector<MPoly> equiv = first.residual;
    for (std::size_t i = 1; i < main.size(); ++i) {
        auto c = equivalence_conditions(substituted(main[0], first.assignments), substituted(main[i], first.assignments), target);
        equiv.insert(equiv.end(), c.begin(), c.end());
    }
    SolvedConditions second = solve_conditions(equiv, prefer, &log);
    std::vector<std::pair<std::string, Frac>> all = first.assignments;
    all.insert(all.end(), second.assignments.begin(), second.assignments.end());
    record_assignments(rep, all, second.residual);
    for (const auto& st : log.steps) rep.steps.push_back(st);
    for (const auto& c : log.side_conditions) rep.side_conditions.push_back(to_string(c) + " != 0");

    auto apply_all = [&](const LinearForm& f) { return substituted(substituted(f, first.assignments), second.assignments); };
    std::set<std::string> unknowns{target};
    bool coincide = true;
    LinearForm final_form = main.empty() ? LinearForm() : apply_all(main[0]);
    for (std::size_t i = 1; i < main.size(); ++i)
        coincide = coincide && proportional(apply_all(main[i]).to_frac(), final_form.to_frac(), unknowns);
    rep.check("equations coincide after the conditions", coincide && second.residual.empty(),
              std::to_string(second.residual.size()) + " unsolved conditions");
    rep.data["final"] = to_string(final_form);
    for (const Entry* e : s.all("final")) {
        Frac want = lets.apply(parse_frac(e->value));
        rep.check("final equation", proportional(final_form.to_frac(), want, unknowns), short_text(to_string(final_form)));
    }
    for (const auto& [name, e] : qualified(s, "assign")) {
        Frac want = lets.apply(parse_frac(e->value));
        auto it = std::find_if(all.begin(), all.end(), [&](const auto& p) { return p.first == name; });
        bool ok = it != all.end() && it->second == want;
        rep.check("condition on " + name, ok, it == all.end() ? "not solved" : short_text(to_string(it->second)));
    }
    if (auto n = s.get("assign-count"))
        rep.check("condition count", static_cast<int>(all.size()) == std::stoi(*n), std::to_string(all.size()) + " conditions");
}

void run_compatibility(const Section& s, const Bindings& lets, Derivation& d, Report& rep) {
    const std::string target = target_of(s, d);
    ReductionOutcome out = compatibility_eliminate(d.tri.remaining, target);
    for (const auto& st : out.log.steps) rep.steps.push_back(st);
    for (const auto& c : out.log.side_conditions) rep.side_conditions.push_back(to_string(c) + " != 0");
    rep.data["outcome"] = to_string(out.kind);
    if (auto k = s.get("kind")) rep.check("outcome " + *k, *k == to_string(out.kind), to_string(out.kind));
    if (out.kind == ReductionOutcome::ConditionSet) {
        Json cj = Json::array();
        for (const auto& c : out.conditions) cj.push_back(to_string(c));
        rep.data["conditions"] = cj;
        return;
    }
    if (out.kind == ReductionOutcome::Inconsistent) {
        rep.data["witness"] = to_string(out.witness);
        return;
    }
    rep.data["operator"] = to_string(out.op);
    if (auto o = s.get("order")) rep.check("order " + *o, out.op.order() == std::stoi(*o), std::to_string(out.op.order()));
    if (out.op.order() != 1) return;
    HyperexpSolution h = solve_first_order_hyperexp(out.op);
    rep.data["solution"] = to_string(h.value);
    rep.data["closed_form"] = h.exact;
    if (auto sol = s.get("solution"))
        rep.check("solution up to a constant", same_up_to_constant(h.value, lets.apply(parse_darboux(*sol))), to_string(h.value));
    DarbouxExpr v = back_substitute(d.tri, d.spec, h);
    rep.data["V"] = to_string(v);
    if (auto want = s.get("V"))
        rep.check("V up to a constant", same_up_to_constant(v, lets.apply(parse_darboux(*want))), short_text(to_string(v)));
    Frac res = darboux_log_residual(d.sys, v, d.spec.alpha);
    rep.check("residual of V", res.is_zero(), short_text(to_string(res)));
}

void run_modulo(const Section& s, const Bindings& lets, Report& rep) {
    auto need = [&](const char* k) {
        auto v = s.get(k);
        if (!v) throw ParseError(std::string("modulo reduction needs '") + k + "'", s.line, 1);
        return *v;
    };
    Frac relation = lets.apply(parse_frac(need("relation")));
    const std::string unknown = need("unknown");
    Frac replacement = lets.apply(parse_frac(need("replace")));
    const std::string w = need("modulo-unknown");
    LinearForm mod = LinearForm::from_frac(lets.apply(parse_frac(need("modulo"))), {w});
    Frac expr = substitute_function(relation, unknown, Axis::X, replacement);
    Frac red = reduce_mod_relation(expr, w, mod.operator_on(w, Axis::X));
    rep.steps.push_back("substitute " + unknown + " = " + to_string(replacement) + " and reduce modulo a relation of order " +
                        std::to_string(mod.order_of(w)));
    rep.data["remainder"] = to_string(red);
    rep.check("reduces to zero", red.is_zero(), short_text(to_string(red)));
}

void run_reduce(const Fixture& fx, const Section& s, const Bindings& lets, Report& rep) {
    const std::string mode = s.get_or("mode", "compatibility");
    rep.data["reduce_mode"] = mode;
    if (mode == "modulo") return run_modulo(s, lets, rep);
    Derivation d = derive_common(fx, s, lets, rep);
    if (mode == "equivalence") return run_equivalence(s, lets, d, rep);
    if (mode == "compatibility") return run_compatibility(s, lets, d, rep);
    throw ParseError("unknown reduce mode '" + mode + "'", s.line, 1);
}

// ------------------------------------------------------------------ verify

void run_verify(const Fixture& fx, const Section& s, const Bindings& lets, Report& rep) {
    PlanarSystem sys = lets.apply(parse_system(system_for(fx, s)));
    auto vt = s.get("V");
    if (!vt && !s.get("invariant")) throw ParseError("verify needs 'V' or 'invariant'", s.line, 1);
    if (vt) {
        DarbouxExpr v = lets.apply(parse_darboux(*vt));
        Frac alpha = lets.apply(parse_frac(s.get_or("alpha", "1")));
        Frac res = darboux_log_residual(sys, v, alpha);
        rep.data["residual"] = to_string(res);
        rep.check("logarithmic residual", res.is_zero(), short_text(to_string(res)));
        if (auto f = v.as_frac()) {
            Frac full = iif_residual(sys, *f, alpha);
            rep.check("polynomial residual", full.is_zero(), short_text(to_string(full)));
        }
    }
    if (auto inv = s.get("invariant")) {
        Frac k = invariant_curve_check(sys, lets.apply(parse_frac(*inv)));
        rep.data["cofactor"] = to_string(k);
        if (auto want = s.get("cofactor"))
            rep.check("cofactor of " + *inv, k == lets.apply(parse_frac(*want)), to_string(k));
    }
}

// ------------------------------------------------------------------ series

void run_series(const Fixture& fx, const Section& s, const Bindings& lets, Report& rep, const RunOptions& opts) {
    PlanarSystem sys = lets.apply(parse_system(system_for(fx, s)));
    const int order = opts.series_order.value_or(to_int(s, "order", default_series_order()));
    SeriesAnsatz a;
    a.q = lets.apply(parse_darboux(s.get_or("q", "1")));
    a.family = poly_family_from_string(s.get_or("family", "hermite"));
    a.alpha = lets.apply(parse_frac(s.get_or("alpha", "1")));
    const std::string phi = s.get_or("phi", "one");
    if (phi == "factorial") {
        a.phi = phi_scaled_factorial(lets.apply(parse_frac(s.get_or("phi-scale", "1"))),
                                     lets.apply(parse_frac(s.get_or("phi-ratio", "1"))));
    } else if (phi == "mehler") {
        Frac pt = lets.apply(parse_frac(s.get_or("phi-point", "0")));
        if (!pt.is_rational()) throw ParseError("phi-point must be a rational number", s.line, 1);
        a.phi = phi_mehler(pt.rational_value());
    } else if (phi != "one") {
        throw ParseError("unknown phi rule '" + phi + "'", s.line, 1);
    }
    rep.data["order"] = order;
    rep.data["family"] = to_string(a.family);

    auto res = series_residual(sys, a, order);
    int bad = first_nonzero(res);
    rep.data["first_nonzero_order"] = bad;
    rep.check("residuals vanish to order " + std::to_string(order), bad < 0,
              bad < 0 ? "" : "first nonzero at y^" + std::to_string(bad) + ": " + short_text(to_string(res[static_cast<std::size_t>(bad)])));

    if (to_bool(s, "recurrence", false)) {
        QuadSys qs = QuadSys::from_system(sys);
        auto w = recurrence_series(qs, a.alpha, a.term(0), order, a.q.log_derivative(Axis::X));
        int first_bad = -1;
        for (int n = 0; n <= order && first_bad < 0; ++n)
            if (w[static_cast<std::size_t>(n)] != a.term(n)) first_bad = n;
        rep.check("recurrence reproduces the family", first_bad < 0, first_bad < 0 ? "" : "differs at n = " + std::to_string(first_bad));
    }
    if (auto closed = s.get("closed")) {
        const int n_max = to_int(s, "closed-order", order);
        YSeries ys = genfunc_expand(lets.apply(parse_darboux(*closed)), n_max);
        auto ratio = (ys.prefactor * a.q.pow(Frac(-1))).as_frac();
        int first_bad = ratio ? -1 : 0;
        for (int n = 0; ratio && n <= n_max && first_bad < 0; ++n)
            if (*ratio * ys.coeffs[static_cast<std::size_t>(n)] != a.term(n)) first_bad = n;
        rep.check("closed form matches the series to order " + std::to_string(n_max), first_bad < 0,
                  first_bad < 0 ? "" : "differs at y^" + std::to_string(first_bad));
    }
    if (auto gen = s.get("generating")) {
        const bool factorial_scale = s.get_or("normalise", "none") == "factorial";
        YSeries ys = genfunc_expand(lets.apply(parse_darboux(*gen)), order);
        auto pre = ys.prefactor.as_frac();
        auto table = orthopoly_table(a.family, order);
        int first_bad = pre ? -1 : 0;
        for (int n = 0; pre && n <= order && first_bad < 0; ++n) {
            Frac want(table[static_cast<std::size_t>(n)].to_mpoly());
            if (factorial_scale) want /= Frac(factorial(static_cast<unsigned>(n)));
            if (*pre * ys.coeffs[static_cast<std::size_t>(n)] != want) first_bad = n;
        }
        rep.check(std::string("generating function gives ") + to_string(a.family) + (factorial_scale ? "/n!" : "") +
                      " to order " + std::to_string(order),
                  first_bad < 0, first_bad < 0 ? "" : "differs at y^" + std::to_string(first_bad));
    }
}

// ------------------------------------------------------------------ numeric

void run_numeric(const Fixture& fx, const Section& s, const Bindings& lets, Report& rep) {
    PlanarSystem sys = lets.apply(parse_system(system_for(fx, s)));
    auto vt = s.get("V");
    if (!vt) throw ParseError("numeric needs 'V'", s.line, 1);
    Frac alpha = lets.apply(parse_frac(s.get_or("alpha", "1")));
    if (alpha.is_zero()) throw ParseError("alpha must be nonzero", s.line, 1);
    DarbouxExpr v = lets.apply(parse_darboux(*vt)).pow(alpha.inverse());
    auto dom = numbers(s.get_or("domain", "0.1 0.1 0.9 0.9"));
    if (dom.size() != 4) throw ParseError("domain needs x0 y0 x1 y1", s.line, 1);
    Rect r{dom[0], dom[1], dom[2], dom[3]};
    NumPoint base{r.x0, r.y0};
    if (auto b = s.get("base")) {
        auto bb = numbers(*b);
        if (bb.size() != 2) throw ParseError("base needs x y", s.line, 1);
        base = {bb[0], bb[1]};
    }
    const int count = to_int(s, "points", 100);
    NumSystem ns(sys);
    NumDarboux nv(v, base);
    auto pts = halton_points(r, count);
    using T = NumericTolerances;

    ClosednessReport cl = closedness_check(ns, nv, pts, T::fd_step);
    double gap = path_independence_H(ns, nv, {r.x0, r.y0}, {r.x1, r.y1});
    rep.data["domain"] = {r.x0, r.y0, r.x1, r.y1};
    rep.data["fd_step"] = T::fd_step;
    rep.data["quadrature_nodes"] = T::quadrature_nodes;
    rep.data["points"] = cl.points;
    rep.data["max_defect"] = cl.max_defect;
    rep.data["worst_point"] = {cl.worst.x, cl.worst.y};
    rep.data["path_gap"] = gap;
    auto sci = [](double d) {
        std::ostringstream o;
        o.precision(3);
        o << std::scientific << d;
        return o.str();
    };
    rep.check("closedness defect below " + sci(T::closedness) + " at " + std::to_string(cl.points) + " points",
              cl.max_defect < T::closedness, sci(cl.max_defect));
    rep.check("path independence below " + sci(T::path_gap), gap < T::path_gap, sci(gap));

    DarbouxExpr bad;
    if (auto n = s.get("negative")) {
        bad = lets.apply(parse_darboux(*n));
    } else {
        bad = v;
        bad.times_exp(Frac::variable(var_x()));
    }
    NumDarboux nb(bad, base);
    ClosednessReport ncl = closedness_check(ns, nb, pts, T::fd_step);
    double ngap = path_independence_H(ns, nb, {r.x0, r.y0}, {r.x1, r.y1});
    rep.data["negative_defect"] = ncl.max_defect;
    rep.data["negative_path_gap"] = ngap;
    rep.check("negative control defect above " + sci(T::negative_floor), ncl.max_defect > T::negative_floor, sci(ncl.max_defect));
    rep.check("negative control path gap above " + sci(T::negative_floor), ngap > T::negative_floor, sci(ngap));

    if (auto tr = s.get("trajectory")) {
        auto t = numbers(*tr);
        if (t.size() != 4) throw ParseError("trajectory needs x y h steps", s.line, 1);
        Trajectory path = rk4_trajectory(ns, {t[0], t[1]}, t[2], static_cast<int>(t[3]), false);
        rep.check("trajectory stays bounded", !path.blew_up, std::to_string(path.points.size() - 1) + " steps");
        double drift = first_integral_drift(ns, nv, path);
        rep.data["first_integral_drift"] = drift;
        rep.check("first integral drift below " + sci(T::drift), drift < T::drift, sci(drift));
    }
}

}  // namespace

Report run_section(const Fixture& fx, const Section& s, const RunOptions& opts) {
    Report rep;
    rep.fixture = fx.id;
    rep.section = s.label;
    rep.mode = s.kind;
    auto t0 = std::chrono::steady_clock::now();
    try {
        Bindings lets;
        lets.add_all(fx.header);
        lets.add_all(s);
        if (s.kind == "derive") run_derive(fx, s, lets, rep);
        else if (s.kind == "reduce") run_reduce(fx, s, lets, rep);
        else if (s.kind == "verify") run_verify(fx, s, lets, rep);
        else if (s.kind == "series") run_series(fx, s, lets, rep, opts);
        else if (s.kind == "numeric") run_numeric(fx, s, lets, rep);
    } catch (const ParseError& e) {
        rep.error = e.what();
        rep.parse_error = true;
    } catch (const MathError& e) {
        rep.error = e.what();
        // A system whose P and Q share a factor is rejected input, like a parse failure.
        rep.parse_error = e.kind() == ErrorKind::NonCoprime;
    } catch (const std::exception& e) {
        rep.error = e.what();
    }
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    rep.finish();
    return rep;
}

std::vector<Report> run_pipeline(const Fixture& fx, const std::string& mode, const RunOptions& opts) {
    std::vector<Report> out;
    for (const Section& s : fx.sections) {
        if (s.kind != mode) continue;
        if (opts.section && s.label != *opts.section) continue;
        if (mode == "reduce" && opts.reduce_mode && s.get_or("mode", "compatibility") != *opts.reduce_mode) continue;
        out.push_back(run_section(fx, s, opts));
    }
    return out;
}

std::vector<Report> run_fixture(const Fixture& fx, const RunOptions& opts) {
    std::vector<Report> out;
    for (const Section& s : fx.sections)
        if (!opts.section || s.label == *opts.section) out.push_back(run_section(fx, s, opts));
    return out;
}

CorpusSummary run_corpus(const std::filesystem::path& dir, int jobs, const RunOptions& opts) {
    CorpusSummary sum;
    auto files = list_fixtures(dir);
    sum.fixtures = static_cast<int>(files.size());
    if (files.empty()) {
        sum.warnings.push_back("no fixtures found in " + dir.string());
        return sum;
    }
    if (jobs <= 0) jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::vector<Report>> results(files.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < files.size(); i = next++) {
            try {
                results[i] = run_fixture(load_fixture(files[i]), opts);
            } catch (const MathError& e) {
                Report r;
                r.fixture = files[i].stem().string();
                r.section = "load";
                r.mode = "load";
                r.error = e.what();
                r.parse_error = e.kind() == ErrorKind::ParseError;
                r.finish();
                results[i] = {r};
            }
        }
    };
    std::vector<std::future<void>> pool;
    for (int j = 0; j < std::min<int>(jobs, static_cast<int>(files.size())); ++j) pool.push_back(std::async(std::launch::async, worker));
    for (auto& f : pool) f.get();
    for (auto& r : results) sum.reports.insert(sum.reports.end(), r.begin(), r.end());
    return sum;
}

bool all_pass(const std::vector<Report>& reports) {
    return std::all_of(reports.begin(), reports.end(), [](const Report& r) { return r.status != Status::Fail; });
}

Json to_json(const Report& r, bool with_timing) {
    Json j;
    j["fixture"] = r.fixture;
    j["section"] = r.section;
    j["mode"] = r.mode;
    j["status"] = to_string(r.status);
    Json checks = Json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["checks"] = checks;
    j["side_conditions"] = r.side_conditions;
    j["steps"] = r.steps;
    if (!r.error.empty()) j["error"] = r.error;
    j["data"] = r.data;
    if (with_timing) j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

std::string to_text(const Report& r, bool verbose) {
    std::ostringstream o;
    o << to_string(r.status) << "  " << r.fixture << " [" << r.mode << " " << r.section << "]";
    o.precision(1);
    o << std::fixed << "  " << r.elapsed_ms << " ms\n";
    if (!r.error.empty()) o << "    error: " << r.error << "\n";
    for (const auto& c : r.checks)
        if (verbose || !c.pass) o << "    " << (c.pass ? "ok   " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
    if (verbose) {
        for (const auto& st : r.steps) o << "    . " << st << "\n";
        for (const auto& sc : r.side_conditions) o << "    assuming " << sc << "\n";
    }
    return o.str();
}

}  // namespace iif

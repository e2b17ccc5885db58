#include "iif/system.hpp"

#include "iif/error.hpp"

namespace iif {

namespace {

bool depends_on_y(Var v) {
    const SymbolInfo& s = info(v);
    return s.kind == SymKind::Y || (s.kind == SymKind::Jet && s.axis == Axis::Y);
}

bool depends_on_y(const MPoly& p) {
    for (Var v : p.variables())
        if (depends_on_y(v)) return true;
    return false;
}

std::optional<long> integer_value(const Frac& f) {
    if (!f.is_rational()) return std::nullopt;
    Rat r = f.rational_value();
    if (!is_integer(r) || !r.get_num().fits_slong_p()) return std::nullopt;
    return r.get_num().get_si();
}

}  // namespace

// ---------------------------------------------------------------- PlanarSystem

PlanarSystem::PlanarSystem(Frac p, Frac q) : p_(std::move(p)), q_(std::move(q)) {
    if (!coprime_in_y(p_, q_)) throw MathError(ErrorKind::NonCoprime, "P and Q share a factor in y");
}

unsigned PlanarSystem::degree_y() const {
    Var y = var_y();
    return std::max(p_.num().degree(y), q_.num().degree(y));
}

Frac PlanarSystem::divergence() const { return dx(p_) + dy(q_); }

PlanarSystem PlanarSystem::substitute_function(std::string_view name, Axis axis, const Frac& expr) const {
    return PlanarSystem(iif::substitute_function(p_, name, axis, expr), iif::substitute_function(q_, name, axis, expr));
}

PlanarSystem PlanarSystem::substitute_param(Var p, const Frac& value) const {
    return PlanarSystem(substitute(p_, p, value), substitute(q_, p, value));
}

bool coprime_in_y(const Frac& p, const Frac& q) {
    if (p.is_zero()) return !depends_on_y(q.num()) || q.num().is_constant();
    if (q.is_zero()) return !depends_on_y(p.num()) || p.num().is_constant();
    return !depends_on_y(gcd(p.num(), q.num()));
}

std::map<unsigned, Frac> y_coefficients(const Frac& f) {
    Var y = var_y();
    if (f.den().contains(y)) throw MathError(ErrorKind::Unsupported, "denominator depends on y");
    std::map<unsigned, Frac> out;
    for (auto& [k, c] : f.num().coefficients_in(y)) out.emplace(k, Frac(c, f.den()));
    return out;
}

Frac iif_residual(const PlanarSystem& sys, const Frac& v, const Frac& alpha) {
    return sys.P() * dx(v) + sys.Q() * dy(v) - alpha * sys.divergence() * v;
}

Frac invariant_curve_check(const PlanarSystem& sys, const Frac& f) {
    if (dx(f).is_zero() && dy(f).is_zero()) throw MathError(ErrorKind::NotInvariant, "f is constant");
    Frac k = (sys.P() * dx(f) + sys.Q() * dy(f)) / f;
    if (depends_on_y(k.den())) throw MathError(ErrorKind::NotInvariant, "f does not divide P f_x + Q f_y");
    unsigned d = sys.degree_y();
    if (k.num().degree(var_y()) + 1 > std::max(d, 1U))
        throw MathError(ErrorKind::NotInvariant, "cofactor degree in y exceeds d - 1");
    return k;
}

// ---------------------------------------------------------------- DarbouxExpr

DarbouxExpr DarbouxExpr::from_frac(const Frac& f) {
    DarbouxExpr out;
    if (f.num().is_constant()) out.constant_ = Frac(f.num());
    else out.times_power(f.num(), Frac(1));
    if (!f.den().is_constant()) out.times_power(f.den(), Frac(-1));
    else out.constant_ /= Frac(f.den());
    return out;
}

DarbouxExpr& DarbouxExpr::scale(const Frac& c) {
    constant_ *= c;
    return *this;
}

DarbouxExpr& DarbouxExpr::times_power(const MPoly& base, const Frac& exponent) {
    if (exponent.is_zero() || base == MPoly(1)) return *this;
    if (base.is_constant()) {
        if (auto n = integer_value(exponent)) {
            constant_ *= Frac(base).pow(static_cast<int>(*n));
            return *this;
        }
    }
    for (auto it = factors_.begin(); it != factors_.end(); ++it) {
        if (it->base == base) {
            it->exponent += exponent;
            if (it->exponent.is_zero()) factors_.erase(it);
            return *this;
        }
    }
    factors_.push_back({base, exponent});
    return *this;
}

DarbouxExpr& DarbouxExpr::times_exp(const Frac& e) {
    exp_ += e;
    return *this;
}

DarbouxExpr& DarbouxExpr::times_exp_integral(const Frac& rx, const Frac& ry) {
    if (dy(rx) != dx(ry)) throw MathError(ErrorKind::Unsupported, "exponential integrand is not a closed form");
    integrals_.push_back({rx, ry});
    return *this;
}

Frac DarbouxExpr::log_derivative(Axis axis) const {
    Frac acc;
    if (!constant_.is_rational()) {
        if (constant_.is_zero()) throw MathError(ErrorKind::ZeroBase, "zero constant factor");
        acc += derive(constant_, axis) / constant_;
    }
    for (const auto& f : factors_) {
        if (f.base.is_zero()) throw MathError(ErrorKind::ZeroBase, "zero base in Darboux factor");
        Frac d = derive(Frac(f.base), axis);
        if (!d.is_zero()) acc += f.exponent * d / Frac(f.base);
    }
    acc += derive(exp_, axis);
    for (const auto& g : integrals_) acc += axis == Axis::X ? g.rx : g.ry;
    return acc;
}

DarbouxExpr DarbouxExpr::pow(const Frac& r) const {
    DarbouxExpr out;
    if (auto n = integer_value(r)) {
        out.constant_ = constant_.pow(static_cast<int>(*n));
    } else if (!constant_.is_rational() || constant_.rational_value() != 1) {
        out.times_power(constant_.num(), r);
        out.times_power(constant_.den(), -r);
    }
    for (const auto& f : factors_) out.times_power(f.base, f.exponent * r);
    out.exp_ = exp_ * r;
    for (const auto& g : integrals_) out.integrals_.push_back({g.rx * r, g.ry * r});
    return out;
}

DarbouxExpr operator*(const DarbouxExpr& a, const DarbouxExpr& b) {
    DarbouxExpr out = a;
    out.constant_ *= b.constant_;
    for (const auto& f : b.factors_) out.times_power(f.base, f.exponent);
    out.exp_ += b.exp_;
    out.integrals_.insert(out.integrals_.end(), b.integrals_.begin(), b.integrals_.end());
    return out;
}

std::optional<Frac> DarbouxExpr::as_frac() const {
    if (!exp_.is_zero() || !integrals_.empty()) return std::nullopt;
    Frac acc = constant_;
    for (const auto& f : factors_) {
        auto n = integer_value(f.exponent);
        if (!n) return std::nullopt;
        acc *= Frac(f.base).pow(static_cast<int>(*n));
    }
    return acc;
}

DarbouxExpr DarbouxExpr::substitute_function(std::string_view name, Axis axis, const Frac& expr) const {
    auto sub = [&](const Frac& f) { return iif::substitute_function(f, name, axis, expr); };
    DarbouxExpr out;
    out.constant_ = sub(constant_);
    for (const auto& f : factors_) {
        Frac b = sub(Frac(f.base));
        Frac e = sub(f.exponent);
        out.times_power(b.num(), e);
        if (b.den() != MPoly(1)) out.times_power(b.den(), -e);
    }
    out.exp_ = sub(exp_);
    for (const auto& g : integrals_) out.integrals_.push_back({sub(g.rx), sub(g.ry)});
    return out;
}

DarbouxExpr DarbouxExpr::substitute_param(Var p, const Frac& value) const {
    DarbouxExpr out;
    out.constant_ = substitute(constant_, p, value);
    for (const auto& f : factors_) {
        Frac b = substitute(Frac(f.base), p, value);
        Frac e = substitute(f.exponent, p, value);
        out.times_power(b.num(), e);
        if (b.den() != MPoly(1)) out.times_power(b.den(), -e);
    }
    out.exp_ = substitute(exp_, p, value);
    for (const auto& g : integrals_) out.integrals_.push_back({substitute(g.rx, p, value), substitute(g.ry, p, value)});
    return out;
}

std::string to_string(const DarbouxExpr& v) {
    std::vector<std::string> parts;
    if (!(v.constant().is_rational() && v.constant().rational_value() == 1) || v.factors().empty())
        parts.push_back(v.constant().is_polynomial() && v.constant().num().size() <= 1 ? to_string(v.constant())
                                                                                    : "(" + to_string(v.constant()) + ")");
    for (const auto& f : v.factors()) {
        std::string s = "(" + to_string(f.base) + ")";
        if (!(f.exponent.is_rational() && f.exponent.rational_value() == 1)) s += "^(" + to_string(f.exponent) + ")";
        parts.push_back(s);
    }
    if (!v.exp_part().is_zero()) parts.push_back("exp(" + to_string(v.exp_part()) + ")");
    for (const auto& g : v.integrals())
        parts.push_back("expint(dx = " + to_string(g.rx) + ", dy = " + to_string(g.ry) + ")");
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : " * ") + p;
    return out;
}

Frac darboux_log_residual(const PlanarSystem& sys, const DarbouxExpr& v, const Frac& alpha) {
    return sys.P() * v.log_derivative(Axis::X) + sys.Q() * v.log_derivative(Axis::Y) - alpha * sys.divergence();
}

}  // namespace iif

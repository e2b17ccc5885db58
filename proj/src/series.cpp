#include "iif/series.hpp"

#include "iif/derivation.hpp"
#include "iif/error.hpp"

namespace iif {

namespace {

Frac X() { return Frac::variable(var_x()); }

bool mentions_y(const Frac& f) {
    for (const MPoly* p : {&f.num(), &f.den()})
        for (Var v : p->variables()) {
            const SymbolInfo& s = info(v);
            if (s.kind == SymKind::Y || (s.kind == SymKind::Jet && s.axis == Axis::Y)) return true;
        }
    return false;
}

// Coefficient of x^i y^j, required to be free of x and y.
Frac quad_coeff(const Frac& f, unsigned i, unsigned j) {
    MPoly c = f.num().coefficient(var_x(), i).coefficient(var_y(), j);
    return Frac(c, f.den());
}

TruncSeries poly_series(const MPoly& p, int order) {
    std::vector<Frac> c(static_cast<std::size_t>(order + 1));
    for (auto& [k, coef] : p.coefficients_in(var_y()))
        if (static_cast<int>(k) <= order) c[k] = Frac(coef);
    return TruncSeries(std::move(c), order);
}

}  // namespace

// ---------------------------------------------------------------- QuadSys

PlanarSystem QuadSys::system() const {
    Frac x = X(), y = Frac::variable(var_y());
    Frac p = a00 + a10 * x + a01 * y + a20 * x * x + a11 * x * y + a02 * y * y;
    Frac q = b00 + b10 * x + b01 * y + b20 * x * x + b11 * x * y + b02 * y * y;
    return PlanarSystem(p, q);
}

QuadSys QuadSys::from_system(const PlanarSystem& sys) {
    for (const Frac* f : {&sys.P(), &sys.Q()}) {
        if (f->den().contains(var_x()) || f->den().contains(var_y()) || !function_names(*f).empty())
            throw MathError(ErrorKind::Unsupported, "not a quadratic system with constant coefficients");
        for (const auto& t : f->num().terms())
            if (t.mono.degree(var_x()) + t.mono.degree(var_y()) > 2)
                throw MathError(ErrorKind::Unsupported, "system has degree above 2");
    }
    QuadSys q;
    const Frac& P = sys.P();
    const Frac& Q = sys.Q();
    q.a00 = quad_coeff(P, 0, 0), q.a10 = quad_coeff(P, 1, 0), q.a01 = quad_coeff(P, 0, 1);
    q.a20 = quad_coeff(P, 2, 0), q.a11 = quad_coeff(P, 1, 1), q.a02 = quad_coeff(P, 0, 2);
    q.b00 = quad_coeff(Q, 0, 0), q.b10 = quad_coeff(Q, 1, 0), q.b01 = quad_coeff(Q, 0, 1);
    q.b20 = quad_coeff(Q, 2, 0), q.b11 = quad_coeff(Q, 1, 1), q.b02 = quad_coeff(Q, 0, 2);
    return q;
}

// ---------------------------------------------------------------- recurrence

Frac recurrence_next(const QuadSys& qs, const Frac& alpha, const std::vector<Frac>& w, const Frac& ell) {
    if (w.empty()) throw MathError(ErrorKind::Unsupported, "recurrence needs w_0");
    if (qs.b00.is_zero() && qs.b10.is_zero() && qs.b20.is_zero())
        throw MathError(ErrorKind::ZeroBDivisor, "b00 = b10 = b20 = 0; check the ansatz through its residual");
    const int n = static_cast<int>(w.size()) - 1;
    const Frac x = X();
    auto at = [&w](int k) { return k >= 0 ? w[static_cast<std::size_t>(k)] : Frac(); };
    // (q w)' / q
    auto dq = [&](int k) { return k >= 0 ? dx(at(k)) + ell * at(k) : Frac(); };
    const Frac a0 = qs.a00 + qs.a10 * x + qs.a20 * x * x;
    const Frac a1 = qs.a01 + qs.a11 * x;
    const Frac b0 = qs.b00 + qs.b10 * x + qs.b20 * x * x;
    const Frac b1 = qs.b01 + qs.b11 * x;
    const Frac nn(n);
    Frac s = a0 * dq(n) + a1 * dq(n - 1) + qs.a02 * dq(n - 2) +
             ((nn - alpha) * b1 - alpha * (qs.a10 + Frac(2) * qs.a20 * x)) * at(n) +
             ((nn - Frac(2) * alpha - Frac(1)) * qs.b02 - alpha * qs.a11) * at(n - 1);
    return -s / (Frac(n + 1) * b0);
}

std::vector<Frac> recurrence_series(const QuadSys& qs, const Frac& alpha, const Frac& w0, int order, const Frac& ell) {
    std::vector<Frac> w{w0};
    while (static_cast<int>(w.size()) <= order) w.push_back(recurrence_next(qs, alpha, w, ell));
    return w;
}

// ---------------------------------------------------------------- orthogonal polynomials

const char* to_string(PolyFamily f) {
    switch (f) {
        case PolyFamily::Hermite: return "hermite";
        case PolyFamily::ChebyshevT: return "chebyshev";
        case PolyFamily::Legendre: return "legendre";
    }
    return "?";
}

PolyFamily poly_family_from_string(const std::string& s) {
    if (s == "hermite") return PolyFamily::Hermite;
    if (s == "chebyshev" || s == "chebyshev-t") return PolyFamily::ChebyshevT;
    if (s == "legendre") return PolyFamily::Legendre;
    throw MathError(ErrorKind::Unsupported, "unknown polynomial family '" + s + "'");
}

std::vector<UPoly> orthopoly_table(PolyFamily family, int n_max, Var v) {
    if (v == 0) v = var_x();
    std::vector<UPoly> out;
    if (n_max < 0) return out;
    const UPoly x = UPoly::monomial(v, 1);
    out.push_back(UPoly(v, {Rat(1)}));
    if (n_max >= 1) out.push_back(family == PolyFamily::Hermite ? Rat(2) * x : x);
    for (int n = 1; n < n_max; ++n) {
        const UPoly& pn = out[static_cast<std::size_t>(n)];
        const UPoly& pm = out[static_cast<std::size_t>(n - 1)];
        switch (family) {
            case PolyFamily::Hermite: out.push_back(Rat(2) * x * pn - Rat(2 * n) * pm); break;
            case PolyFamily::ChebyshevT: out.push_back(Rat(2) * x * pn - pm); break;
            case PolyFamily::Legendre:
                out.push_back(make_rat(1, n + 1) * (Rat(2 * n + 1) * x * pn - Rat(n) * pm));
                break;
        }
    }
    return out;
}

UPoly orthopoly(PolyFamily family, int n, Var v) {
    if (n < 0) throw MathError(ErrorKind::Unsupported, "negative polynomial degree");
    return orthopoly_table(family, n, v).back();
}

// ---------------------------------------------------------------- ansatz residual

Frac SeriesAnsatz::term(int n) const {
    if (explicit_terms) return explicit_terms(n);
    return phi(n) * Frac(orthopoly(family, n).to_mpoly());
}

std::function<Frac(int)> phi_scaled_factorial(const Frac& c, const Frac& r) {
    return [c, r](int n) { return c * r.pow(n) / Frac(factorial(static_cast<unsigned>(n))); };
}

std::function<Frac(int)> phi_mehler(const Rat& a) {
    return [a](int n) {
        Rat h = orthopoly(PolyFamily::Hermite, n).eval(a);
        Rat den = factorial(static_cast<unsigned>(n));
        mpz_mul_2exp(den.get_num_mpz_t(), den.get_num_mpz_t(), static_cast<unsigned>(n));
        return Frac(Rat(h / den));
    };
}

std::vector<Frac> series_residual(const PlanarSystem& sys, const SeriesAnsatz& ansatz, int order) {
    const Frac ell = ansatz.q.log_derivative(Axis::X);
    if (mentions_y(ell) || !ansatz.q.log_derivative(Axis::Y).is_zero())
        throw MathError(ErrorKind::Unsupported, "q must depend on x only");
    std::vector<Frac> w;
    if (ansatz.explicit_terms) {
        for (int n = 0; n <= order + 1; ++n) w.push_back(ansatz.explicit_terms(n));
    } else {
        auto table = orthopoly_table(ansatz.family, order + 1);
        for (int n = 0; n <= order + 1; ++n)
            w.push_back(ansatz.phi(n) * Frac(table[static_cast<std::size_t>(n)].to_mpoly()));
    }
    std::vector<Frac> dw;
    for (const Frac& t : w) dw.push_back(dx(t) + ell * t);
    auto pc = y_coefficients(sys.P());
    auto qc = y_coefficients(sys.Q());
    auto dc = y_coefficients(sys.divergence());
    auto get = [](const std::vector<Frac>& v, int k) { return k >= 0 && k < static_cast<int>(v.size()) ? v[static_cast<std::size_t>(k)] : Frac(); };
    std::vector<Frac> out;
    for (int k = 0; k <= order; ++k) {
        Frac r;
        for (auto& [i, p] : pc) r += p * get(dw, k - static_cast<int>(i));
        for (auto& [i, q] : qc) {
            int j = k - static_cast<int>(i) + 1;
            if (j >= 1) r += q * Frac(j) * get(w, j);
        }
        for (auto& [i, d] : dc) r -= ansatz.alpha * d * get(w, k - static_cast<int>(i));
        out.push_back(r);
    }
    return out;
}

int first_nonzero(const std::vector<Frac>& residuals) {
    for (std::size_t i = 0; i < residuals.size(); ++i)
        if (!residuals[i].is_zero()) return static_cast<int>(i);
    return -1;
}

// ---------------------------------------------------------------- truncated series

TruncSeries::TruncSeries(std::vector<Frac> c, int order) : c_(std::move(c)), order_(order) {
    c_.resize(static_cast<std::size_t>(order + 1));
}

TruncSeries TruncSeries::from_frac(const Frac& f, int order) {
    TruncSeries num = poly_series(f.num(), order);
    if (f.den().is_constant()) return Frac(MPoly(1), f.den()) * num;
    TruncSeries den = poly_series(f.den(), order);
    if (den[0].is_zero()) throw MathError(ErrorKind::SingularAtOrigin, "denominator vanishes at y = 0");
    return num * den.inverse();
}

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    int n = std::min(a.order_, b.order_);
    std::vector<Frac> c(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k) c[static_cast<std::size_t>(k)] = a[k] + b[k];
    return TruncSeries(std::move(c), n);
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) { return a + Frac(-1) * b; }

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    int n = std::min(a.order_, b.order_);
    std::vector<Frac> c(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; i + j <= n; ++j)
            if (!b[j].is_zero()) c[static_cast<std::size_t>(i + j)] += a[i] * b[j];
    }
    return TruncSeries(std::move(c), n);
}

TruncSeries operator*(const Frac& c, const TruncSeries& a) {
    std::vector<Frac> out = a.c_;
    for (auto& t : out) t *= c;
    return TruncSeries(std::move(out), a.order_);
}

TruncSeries TruncSeries::inverse() const {
    if ((*this)[0].is_zero()) throw MathError(ErrorKind::SingularAtOrigin, "series has no constant term");
    const Frac inv0 = (*this)[0].inverse();
    std::vector<Frac> b(static_cast<std::size_t>(order_ + 1));
    b[0] = inv0;
    for (int k = 1; k <= order_; ++k) {
        Frac acc;
        for (int j = 1; j <= k; ++j) acc += (*this)[j] * b[static_cast<std::size_t>(k - j)];
        b[static_cast<std::size_t>(k)] = -inv0 * acc;
    }
    return TruncSeries(std::move(b), order_);
}

TruncSeries TruncSeries::exp() const {
    if (!(*this)[0].is_zero()) throw MathError(ErrorKind::Unsupported, "exp needs a series without constant term");
    std::vector<Frac> e(static_cast<std::size_t>(order_ + 1));
    e[0] = Frac(1);
    for (int k = 1; k <= order_; ++k) {
        Frac acc;
        for (int j = 1; j <= k; ++j)
            if (!(*this)[j].is_zero()) acc += Frac(j) * (*this)[j] * e[static_cast<std::size_t>(k - j)];
        e[static_cast<std::size_t>(k)] = acc / Frac(k);
    }
    return TruncSeries(std::move(e), order_);
}

TruncSeries TruncSeries::pow(const Frac& r) const {
    if ((*this)[0] != Frac(1)) throw MathError(ErrorKind::Unsupported, "pow needs a series with constant term 1");
    std::vector<Frac> p(static_cast<std::size_t>(order_ + 1));
    p[0] = Frac(1);
    for (int k = 1; k <= order_; ++k) {
        Frac acc;
        for (int j = 1; j <= k; ++j)
            if (!(*this)[j].is_zero())
                acc += ((r + Frac(1)) * Frac(j) - Frac(k)) * (*this)[j] * p[static_cast<std::size_t>(k - j)];
        p[static_cast<std::size_t>(k)] = acc / Frac(k);
    }
    return TruncSeries(std::move(p), order_);
}

// ---------------------------------------------------------------- generating functions

YSeries genfunc_expand(const DarbouxExpr& closed, int order) {
    YSeries out;
    TruncSeries s(std::vector<Frac>{Frac(1)}, order);
    if (mentions_y(closed.constant())) s = s * TruncSeries::from_frac(closed.constant(), order);
    else out.prefactor.scale(closed.constant());
    for (const auto& f : closed.factors()) {
        if (!f.base.contains(var_y())) {
            out.prefactor.times_power(f.base, f.exponent);
            continue;
        }
        TruncSeries b = poly_series(f.base, order);
        const bool integral = f.exponent.is_rational() && is_integer(f.exponent.rational_value());
        if (integral) {
            long n = f.exponent.rational_value().get_num().get_si();
            TruncSeries base = n < 0 ? b.inverse() : b;
            TruncSeries acc(std::vector<Frac>{Frac(1)}, order);
            for (long i = 0; i < std::labs(n); ++i) acc = acc * base;
            s = s * acc;
            continue;
        }
        if (b[0].is_zero()) throw MathError(ErrorKind::SingularAtOrigin, "factor with a fractional power vanishes at y = 0");
        out.prefactor.times_power(b[0].num(), f.exponent);
        s = s * (b[0].inverse() * b).pow(f.exponent);
    }
    if (!closed.exp_part().is_zero()) {
        TruncSeries u = TruncSeries::from_frac(closed.exp_part(), order);
        if (!u[0].is_zero()) out.prefactor.times_exp(u[0]);
        std::vector<Frac> tail = u.coeffs();
        tail[0] = Frac();
        s = s * TruncSeries(std::move(tail), order).exp();
    }
    for (const auto& g : closed.integrals()) {
        if (mentions_y(g.rx) || !g.ry.is_zero())
            throw MathError(ErrorKind::Unsupported, "exponential integral depending on y");
        out.prefactor.times_exp_integral(g.rx, g.ry);
    }
    out.coeffs = s.coeffs();
    return out;
}

}  // namespace iif

#include "iif/numeric.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>

#include "iif/error.hpp"

namespace iif {

namespace {

using Gauss = boost::math::quadrature::gauss<double, 64>;

double rat_to_double(const Rat& r) { return r.get_d(); }

double constant_exponent(const Frac& e) {
    if (!e.is_rational()) throw MathError(ErrorKind::Unsupported, "exponent " + to_string(e) + " is not numeric");
    return rat_to_double(e.rational_value());
}

}  // namespace

NumPoly::NumPoly(const MPoly& p) {
    for (const Term& t : p.terms()) {
        Mono m{rat_to_double(t.coef), 0, 0};
        for (auto [v, e] : t.mono.factors()) {
            if (v == var_x()) m.ex = e;
            else if (v == var_y()) m.ey = e;
            else throw MathError(ErrorKind::Unsupported, "symbol " + display_name(v) + " has no numeric value");
        }
        terms_.push_back(m);
    }
}

double NumPoly::operator()(NumPoint p) const {
    double s = 0;
    for (const Mono& m : terms_) s += m.c * std::pow(p.x, m.ex) * std::pow(p.y, m.ey);
    return s;
}

double NumFrac::operator()(NumPoint p) const {
    double d = den_(p);
    if (d == 0 || !std::isfinite(d)) throw MathError(ErrorKind::DomainViolation, "denominator vanishes");
    return num_(p) / d;
}

NumDarboux::NumDarboux(const DarbouxExpr& v, NumPoint base) : constant_(v.constant()), exp_(v.exp_part()), base_(base) {
    for (const auto& f : v.factors()) {
        double e = constant_exponent(f.exponent);
        factors_.push_back({NumPoly(f.base), e, f.exponent.is_rational() && is_integer(f.exponent.rational_value())});
    }
    for (const auto& g : v.integrals()) integrals_.push_back({NumFrac(g.rx), NumFrac(g.ry)});
}

double NumDarboux::operator()(NumPoint p) const {
    double val = constant_(p);
    for (const Factor& f : factors_) {
        double b = f.base(p);
        if (b == 0 && f.exponent < 0) throw MathError(ErrorKind::DomainViolation, "zero base under a negative power");
        if (b < 0 && !f.integral) throw MathError(ErrorKind::DomainViolation, "negative base under a fractional power");
        val *= std::pow(b, f.exponent);
    }
    double arg = exp_(p);
    for (const Integral& g : integrals_) {
        const double y0 = base_.y, x1 = p.x;
        arg += Gauss::integrate([&](double s) { return g.rx({s, y0}); }, base_.x, p.x);
        arg += Gauss::integrate([&](double s) { return g.ry({x1, s}); }, base_.y, p.y);
    }
    val *= std::exp(arg);
    if (!std::isfinite(val)) throw MathError(ErrorKind::DomainViolation, "value is not finite");
    return val;
}

double eval_frac(const Frac& f, NumPoint p) { return NumFrac(f)(p); }

double eval_darboux(const DarbouxExpr& v, NumPoint p, NumPoint base) { return NumDarboux(v, base)(p); }

Trajectory rk4_trajectory(const NumSystem& sys, NumPoint p0, double h, int steps, bool throw_on_blowup) {
    Trajectory t;
    t.h = h;
    t.points.reserve(static_cast<std::size_t>(steps) + 1);
    t.points.push_back(p0);
    auto f = [&sys](NumPoint p) { return NumPoint{sys.P(p), sys.Q(p)}; };
    NumPoint p = p0;
    for (int i = 0; i < steps; ++i) {
        NumPoint k1 = f(p);
        NumPoint k2 = f({p.x + h / 2 * k1.x, p.y + h / 2 * k1.y});
        NumPoint k3 = f({p.x + h / 2 * k2.x, p.y + h / 2 * k2.y});
        NumPoint k4 = f({p.x + h * k3.x, p.y + h * k3.y});
        p.x += h / 6 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x);
        p.y += h / 6 * (k1.y + 2 * k2.y + 2 * k3.y + k4.y);
        if (!std::isfinite(p.x) || !std::isfinite(p.y) || std::hypot(p.x, p.y) > kBlowUpThreshold) {
            if (throw_on_blowup) throw MathError(ErrorKind::BlowUp, "trajectory left every bounded region at step " + std::to_string(i + 1));
            t.blew_up = true;
            break;
        }
        t.points.push_back(p);
    }
    return t;
}

std::vector<NumPoint> halton_points(const Rect& r, int count) {
    auto radical_inverse = [](int i, int base) {
        double f = 1, v = 0;
        while (i > 0) {
            f /= base;
            v += f * (i % base);
            i /= base;
        }
        return v;
    };
    std::vector<NumPoint> out;
    for (int i = 1; i <= count; ++i)
        out.push_back({r.x0 + (r.x1 - r.x0) * radical_inverse(i, 2), r.y0 + (r.y1 - r.y0) * radical_inverse(i, 3)});
    return out;
}

ClosednessReport closedness_check(const NumSystem& sys, const NumDarboux& v, const std::vector<NumPoint>& points,
                                  double eps_fd) {
    ClosednessReport rep;
    rep.eps = eps_fd;
    auto p_over = [&](NumPoint p) {
        double vv = v(p);
        if (vv == 0) throw MathError(ErrorKind::DomainViolation, "V vanishes");
        return sys.P(p) / vv;
    };
    auto q_over = [&](NumPoint p) {
        double vv = v(p);
        if (vv == 0) throw MathError(ErrorKind::DomainViolation, "V vanishes");
        return sys.Q(p) / vv;
    };
    for (NumPoint p : points) {
        double a = (p_over({p.x + eps_fd, p.y}) - p_over({p.x - eps_fd, p.y})) / (2 * eps_fd);
        double b = (q_over({p.x, p.y + eps_fd}) - q_over({p.x, p.y - eps_fd})) / (2 * eps_fd);
        double scale = std::max(std::abs(a) + std::abs(b), std::abs(p_over(p)) + std::abs(q_over(p)));
        double d = scale > 0 ? std::abs(a + b) / scale : 0.0;
        if (!(d <= rep.max_defect)) {
            rep.max_defect = d;
            rep.worst = p;
        }
        ++rep.points;
    }
    return rep;
}

double line_integral_H(const NumSystem& sys, const NumDarboux& v, NumPoint from, NumPoint to) {
    double h = 0;
    if (from.x != to.x)
        h += Gauss::integrate([&](double s) { NumPoint p{s, from.y}; return sys.Q(p) / v(p); }, from.x, to.x);
    if (from.y != to.y)
        h -= Gauss::integrate([&](double s) { NumPoint p{to.x, s}; return sys.P(p) / v(p); }, from.y, to.y);
    return h;
}

double path_independence_H(const NumSystem& sys, const NumDarboux& v, NumPoint p0, NumPoint p1) {
    // Horizontal first versus vertical first.
    double a = line_integral_H(sys, v, p0, p1);
    NumPoint corner{p0.x, p1.y};
    double b = line_integral_H(sys, v, p0, corner) + line_integral_H(sys, v, corner, p1);
    return std::abs(a - b);
}

double first_integral_drift(const NumSystem& sys, const NumDarboux& v, const Trajectory& t) {
    double worst = 0;
    for (const NumPoint& p : t.points) worst = std::max(worst, std::abs(line_integral_H(sys, v, t.points.front(), p)));
    return worst;
}

}  // namespace iif

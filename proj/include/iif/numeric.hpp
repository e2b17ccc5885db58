#pragma once

#include <vector>

#include "iif/system.hpp"

namespace iif {

struct NumPoint {
    double x = 0;
    double y = 0;
};

/// A polynomial in x and y compiled to double coefficients. Any other variable
/// left in the source polynomial raises Unsupported at construction.
class NumPoly {
public:
    NumPoly() = default;
    explicit NumPoly(const MPoly& p);
    double operator()(NumPoint p) const;

private:
    struct Mono {
        double c;
        unsigned ex;
        unsigned ey;
    };
    std::vector<Mono> terms_;
};

class NumFrac {
public:
    NumFrac() = default;
    explicit NumFrac(const Frac& f) : num_(f.num()), den_(f.den()) {}
    /// Throws DomainViolation where the denominator vanishes.
    double operator()(NumPoint p) const;

private:
    NumPoly num_;
    NumPoly den_{MPoly(1)};
};

/// Numeric form of a DarbouxExpr. Exponential integrals are evaluated by
/// quadrature along the L-path from `base` (horizontal first, then vertical).
class NumDarboux {
public:
    NumDarboux() = default;
    explicit NumDarboux(const DarbouxExpr& v, NumPoint base = {});
    /// Throws DomainViolation on a nonpositive base under a fractional power or
    /// a zero base under a negative one.
    double operator()(NumPoint p) const;

private:
    struct Factor {
        NumPoly base;
        double exponent;
        bool integral;
    };
    struct Integral {
        NumFrac rx, ry;
    };
    NumFrac constant_;
    std::vector<Factor> factors_;
    NumFrac exp_;
    std::vector<Integral> integrals_;
    NumPoint base_;
};

double eval_frac(const Frac& f, NumPoint p);
double eval_darboux(const DarbouxExpr& v, NumPoint p, NumPoint base = {});

struct NumSystem {
    NumFrac P, Q;
    explicit NumSystem(const PlanarSystem& sys) : P(sys.P()), Q(sys.Q()) {}
};

struct Trajectory {
    std::vector<NumPoint> points;
    double h = 0;
    bool blew_up = false;
};

inline constexpr double kBlowUpThreshold = 1e12;

/// Classical RK4. With throw_on_blowup unset the path stops early and the flag
/// is raised instead of throwing BlowUp.
Trajectory rk4_trajectory(const NumSystem& sys, NumPoint p0, double h, int steps, bool throw_on_blowup = true);

struct Rect {
    double x0, y0, x1, y1;
};

/// Points of the 2-D Halton sequence (bases 2 and 3) mapped into r.
std::vector<NumPoint> halton_points(const Rect& r, int count);

struct ClosednessReport {
    double max_defect = 0;
    NumPoint worst;
    int points = 0;
    double eps = 0;
};

/// Relative defect |d/dx(P/V) + d/dy(Q/V)| of the 1-form (Q dx - P dy)/V by
/// central differences. The scale is the larger of the two partials' magnitudes
/// and |P/V| + |Q/V|.
ClosednessReport closedness_check(const NumSystem& sys, const NumDarboux& v, const std::vector<NumPoint>& points,
                                  double eps_fd = 1e-5);

/// Integral of (Q dx - P dy)/V along the horizontal-then-vertical L-path.
double line_integral_H(const NumSystem& sys, const NumDarboux& v, NumPoint from, NumPoint to);

/// |H| difference between the two L-paths around the rectangle spanned by p0, p1.
double path_independence_H(const NumSystem& sys, const NumDarboux& v, NumPoint p0, NumPoint p1);

/// max_k |H(p_k) - H(p_0)| with H measured from p_0.
double first_integral_drift(const NumSystem& sys, const NumDarboux& v, const Trajectory& t);

}  // namespace iif

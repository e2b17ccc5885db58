#pragma once

#include <functional>
#include <string>
#include <vector>

#include "iif/system.hpp"
#include "iif/upoly.hpp"

namespace iif {

/// Quadratic system with constant coefficients (rationals or parameters).
struct QuadSys {
    Frac a00, a10, a01, a20, a11, a02;
    Frac b00, b10, b01, b20, b11, b02;

    PlanarSystem system() const;
    /// Reads the coefficients back from a quadratic system; throws Unsupported otherwise.
    static QuadSys from_system(const PlanarSystem& sys);
};

/// Given w_0..w_n with v_k = q(x) w_k and ell = q'/q, returns w_{n+1} from the
/// coefficient of y^n in P V_x + Q V_y = alpha div V. Throws ZeroBDivisor when
/// b00 = b10 = b20 = 0.
Frac recurrence_next(const QuadSys& qs, const Frac& alpha, const std::vector<Frac>& w, const Frac& ell = Frac());

/// w_0..w_order generated from w_0.
std::vector<Frac> recurrence_series(const QuadSys& qs, const Frac& alpha, const Frac& w0, int order, const Frac& ell = Frac());

enum class PolyFamily { Hermite, ChebyshevT, Legendre };

const char* to_string(PolyFamily f);
PolyFamily poly_family_from_string(const std::string& s);

/// Three-term recurrence with the standard seeds, in the variable v (x by default).
UPoly orthopoly(PolyFamily family, int n, Var v = 0);

/// The sequence family(0..n_max) in one pass.
std::vector<UPoly> orthopoly_table(PolyFamily family, int n_max, Var v = 0);

/// v_n(x) = q(x) * phi(n) * p_n(x), with p_n from the family or given directly.
struct SeriesAnsatz {
    DarbouxExpr q;
    std::function<Frac(int)> phi = [](int) { return Frac(1); };
    PolyFamily family = PolyFamily::Hermite;
    /// When set, w_n = explicit_terms(n) and phi/family are ignored.
    std::function<Frac(int)> explicit_terms;
    Frac alpha = Frac(1);

    /// w_n = v_n / q.
    Frac term(int n) const;
};

/// phi(n) = c * r^n / n!.
std::function<Frac(int)> phi_scaled_factorial(const Frac& c, const Frac& r);
/// phi(n) = H_n(a) / (n! 2^n), Mehler's kernel at a rational point a.
std::function<Frac(int)> phi_mehler(const Rat& a);

/// Coefficients of y^0..y^order of (P V_x + Q V_y - alpha div V) / q for the
/// ansatz truncated at order + 1. All zero iff the ansatz satisfies the equation
/// to that order.
std::vector<Frac> series_residual(const PlanarSystem& sys, const SeriesAnsatz& ansatz, int order);

/// Index of the first nonzero entry, -1 if none.
int first_nonzero(const std::vector<Frac>& residuals);

/// Truncated power series in y with coefficients in the fraction field.
class TruncSeries {
public:
    TruncSeries() = default;
    TruncSeries(std::vector<Frac> c, int order);
    static TruncSeries from_frac(const Frac& f, int order);

    int order() const { return order_; }
    Frac operator[](int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(k)] : Frac(); }
    const std::vector<Frac>& coeffs() const { return c_; }

    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator*(const Frac& c, const TruncSeries& a);

    /// 1/s; needs s[0] != 0.
    TruncSeries inverse() const;
    /// exp(s); needs s[0] = 0.
    TruncSeries exp() const;
    /// s^r for a constant exponent r; needs s[0] = 1.
    TruncSeries pow(const Frac& r) const;

private:
    std::vector<Frac> c_;
    int order_ = 0;
};

/// Expansion of a closed form in y: prefactor(x) * sum c_n y^n.
struct YSeries {
    DarbouxExpr prefactor;
    std::vector<Frac> coeffs;
};

/// Throws SingularAtOrigin when a factor vanishes at y = 0 with a non-natural
/// exponent or an exponential argument has a pole there.
YSeries genfunc_expand(const DarbouxExpr& closed, int order);

}  // namespace iif

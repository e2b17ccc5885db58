#include "iif/resultant.hpp"

#include "iif/error.hpp"

namespace iif {

std::vector<std::vector<MPoly>> sylvester_matrix(const MPoly& a, const MPoly& b, Var v) {
    const unsigned m = a.degree(v), n = b.degree(v);
    const unsigned size = m + n;
    std::vector<std::vector<MPoly>> s(size, std::vector<MPoly>(size));
    auto fill = [&](const MPoly& p, unsigned deg, unsigned rows, unsigned offset) {
        auto cs = p.coefficients_in(v);
        for (unsigned r = 0; r < rows; ++r)
            for (auto& [k, c] : cs) s[offset + r][r + deg - k] = c;
    };
    fill(a, m, n, 0);
    fill(b, n, m, n);
    return s;
}

MPoly bareiss_determinant(std::vector<std::vector<MPoly>> m) {
    const std::size_t n = m.size();
    if (n == 0) return MPoly(1);
    MPoly prev(1);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t p = k + 1;
            while (p < n && m[p][k].is_zero()) ++p;
            if (p == n) return MPoly();
            std::swap(m[p], m[k]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = divide_or_throw(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
            m[i][k] = MPoly();
        }
        prev = m[k][k];
    }
    MPoly d = m[n - 1][n - 1];
    return negate ? -d : d;
}

MPoly resultant(const MPoly& a, const MPoly& b, Var v) {
    if (a.is_zero() || b.is_zero()) throw MathError(ErrorKind::Unsupported, "resultant of a zero polynomial");
    if (a.degree(v) == 0 && b.degree(v) == 0) return MPoly(1);
    return bareiss_determinant(sylvester_matrix(a, b, v));
}

MPoly resultant_y(const MPoly& a, const MPoly& b) { return resultant(a, b, var_y()); }

}  // namespace iif

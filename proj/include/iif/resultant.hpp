#pragma once

#include <vector>

#include "iif/mpoly.hpp"

namespace iif {

/// Sylvester matrix of a and b with respect to v, coefficients in
/// descending powers: deg_v(b) rows of a followed by deg_v(a) rows of b.
std::vector<std::vector<MPoly>> sylvester_matrix(const MPoly& a, const MPoly& b, Var v);

/// Determinant by fraction-free (Bareiss) elimination; every division is exact.
MPoly bareiss_determinant(std::vector<std::vector<MPoly>> m);

/// Res_v(a, b) = det of the Sylvester matrix. Zero iff a and b share a factor
/// of positive degree in v. Both inputs must be nonzero.
MPoly resultant(const MPoly& a, const MPoly& b, Var v);

/// Resultant in y.
MPoly resultant_y(const MPoly& a, const MPoly& b);

}  // namespace iif

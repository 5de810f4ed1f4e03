#pragma once

#include "cbws/matrix.hpp"
#include "cbws/monomial.hpp"
#include "cbws/points.hpp"

namespace cbws {

// Restriction map H^0(O(d)) -> H^0(O_Z(d)) in the monomial basis:
// |Z| rows, C(n+d, n) columns, row i = monomial values at point i.
Matrix evaluation_matrix(const PointSet& Z, uint32_t d);

// 2-jet conditions: (n+1)|Z| rows. Per point, normalized at its first
// nonzero coordinate i0: one value row, then the n rows of d/dx_j (j != i0,
// ascending). With the value row present this spans the same conditions as
// all n+1 homogeneous partials in every characteristic (Euler relation).
Matrix jet_matrix(const PointSet& Z, uint32_t d);

// h^1(P^n, I_Z(d)) = |Z| - rank(evaluation_matrix)
size_t h1_ideal(const PointSet& Z, uint32_t d);

// h^1(P^n, I^2_Z(d)) = (n+1)|Z| - rank(jet_matrix)
size_t h1_ideal_sq(const PointSet& Z, uint32_t d);

// Codimension of the jet stratum vs the general-position lower bound
// (m+1)(n+1)+n-1, m = hull dimension. Requires d >= 3 and |Z| >= m+2.
struct JetCodim {
    size_t measured_codim; // rank of the jet matrix
    size_t bound;
};
JetCodim jet_codim_check(const PointSet& Z, uint32_t d);

// h^0 of O(d) on the first infinitesimal neighbourhood of a degree-e plane
// curve: C(d+2,2) - C(d-2e+2,2), the subtrahend 0 when d < 2e.
size_t h0_neighborhood_plane_curve(uint32_t e, uint32_t d);

} // namespace cbws

#pragma once

#include "cbws/monomial.hpp"
#include "cbws/points.hpp"

namespace cbws {

// Linear projection of Z away from the center P onto the hyperplane {H = 0},
// re-coordinatized to P^{n-1} by dropping H's leading coordinate (the first
// variable with nonzero coefficient). Each image point is
//   z' = z - (H(z)/H(P)) * P.
// Requirements: H linear, P not on H (invalid-center), P not in Z
// (invalid-center), and P on no secant line of Z - an image collision means
// the scheme-theoretic image is non-reduced (projection-not-reduced).
PointSet linear_project(const PointSet& Z, const ProjPoint& P, const HomForm& H);

// Convenience alias for the hull dimension of a point set.
inline int projective_hull_dim(const PointSet& Z) { return Z.hull_dim(); }

// Cone over a degree-e curve {base_form = 0} inside the hyperplane
// {hyperplane = 0}, with the given apex. The base form is written in the
// hyperplane's own coordinates: the ambient variables except the
// hyperplane's leading one, in ascending order (matching linear_project).
// pulled_back_form is the degree-e form on P^n vanishing exactly on the
// cone: base_form composed with the projection from the apex.
struct Cone {
    ProjPoint apex;
    HomForm hyperplane;
    HomForm base_form;
    HomForm pulled_back_form;

    uint32_t degree() const { return base_form.d(); }
};

// Builds the cone; throws invalid-cone if the apex lies on the hyperplane.
Cone cone_build(const ProjPoint& apex, const HomForm& hyperplane,
                const HomForm& base_form);

// Bezout bound deg(C) + |Gamma| <= e1*e2 for the intersection of two cones
// with distinct apexes, each apex off the other cone's hyperplane.
uint32_t cone_intersect_degree(const Cone& c1, const Cone& c2);

} // namespace cbws

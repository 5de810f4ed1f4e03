#include "cbws/projection.hpp"

namespace cbws {

namespace {

// Index of the first variable with nonzero coefficient in a linear form.
// For d = 1 the monomial basis lists x_0, ..., x_n in order, so coefficient
// i belongs to x_i.
uint32_t linear_pivot(const HomForm& H) {
    for (uint32_t i = 0; i <= H.n(); ++i)
        if (!H.coeff(i).is_zero()) return i;
    fail(Error::Code::Precondition, "hyperplane form is zero");
}

void require_linear(const HomForm& H, uint32_t n, const FieldCtxPtr& ctx) {
    if (!H.ctx()->same(*ctx))
        fail(Error::Code::ContextMismatch, "hyperplane over a different field");
    if (H.d() != 1 || H.n() != n)
        fail(Error::Code::Precondition, "hyperplane must be a linear form in the ambient variables");
}

} // namespace

PointSet linear_project(const PointSet& Z, const ProjPoint& P, const HomForm& H) {
    const uint32_t n = Z.n();
    if (n < 1) fail(Error::Code::Precondition, "projection needs ambient dimension >= 1");
    if (!P.ctx()->same(*Z.ctx()))
        fail(Error::Code::ContextMismatch, "center over a different field");
    if (P.n() != n) fail(Error::Code::Precondition, "center has the wrong ambient dimension");
    require_linear(H, n, Z.ctx());

    const FieldScalar hp = H.evaluate(P.coords());
    if (hp.is_zero())
        fail(Error::Code::InvalidCenter, "projection center lies on the target hyperplane");
    if (Z.contains(P))
        fail(Error::Code::InvalidCenter, "projection center lies in the point set");
    const FieldScalar hp_inv = hp.inv();
    const uint32_t j0 = linear_pivot(H);

    std::vector<ProjPoint> images;
    images.reserve(Z.size());
    for (size_t zi = 0; zi < Z.size(); ++zi) {
        const ProjPoint& z = Z[zi];
        const FieldScalar c = H.evaluate(z.coords()) * hp_inv;
        std::vector<FieldScalar> out;
        out.reserve(n);
        for (uint32_t i = 0; i <= n; ++i) {
            if (i == j0) continue;
            out.push_back(z.coord(i) - c * P.coord(i));
        }
        ProjPoint img(std::move(out));
        for (const ProjPoint& prev : images)
            if (prev == img)
                fail(Error::Code::NotReduced,
                     "projection center lies on a secant line of the point set");
        images.push_back(std::move(img));
    }
    return PointSet::of(std::move(images));
}

Cone cone_build(const ProjPoint& apex, const HomForm& hyperplane,
                const HomForm& base_form) {
    const uint32_t n = apex.n();
    if (n < 2) fail(Error::Code::Precondition, "cones need ambient dimension >= 2");
    require_linear(hyperplane, n, apex.ctx());
    if (!base_form.ctx()->same(*apex.ctx()))
        fail(Error::Code::ContextMismatch, "base form over a different field");
    if (base_form.n() + 1 != n)
        fail(Error::Code::Precondition,
             "base form must live in the hyperplane's coordinates (one variable fewer)");
    if (base_form.is_zero())
        fail(Error::Code::Precondition, "base form is zero");

    const FieldScalar ha = hyperplane.evaluate(apex.coords());
    if (ha.is_zero())
        fail(Error::Code::InvalidCone, "cone apex lies on its hyperplane");
    const FieldScalar ha_inv = ha.inv();
    const uint32_t j0 = linear_pivot(hyperplane);
    const auto& ctx = apex.ctx();

    // Row for base variable y_t: L_t(x) = x_{s(t)} - (H(x)/H(A)) * A_{s(t)}
    // with s enumerating the non-pivot coordinates in ascending order.
    std::vector<std::vector<FieldScalar>> lines;
    lines.reserve(n);
    for (uint32_t i = 0; i <= n; ++i) {
        if (i == j0) continue;
        std::vector<FieldScalar> row;
        row.reserve(n + 1);
        const FieldScalar scale = apex.coord(i) * ha_inv;
        for (uint32_t m = 0; m <= n; ++m) {
            FieldScalar v = ctx->zero() - hyperplane.coeff(m) * scale;
            if (m == i) v = v + ctx->one();
            row.push_back(std::move(v));
        }
        lines.push_back(std::move(row));
    }
    HomForm pulled = base_form.substitute_linear(lines);
    return Cone{apex, hyperplane, base_form, std::move(pulled)};
}

uint32_t cone_intersect_degree(const Cone& c1, const Cone& c2) {
    if (!c1.apex.ctx()->same(*c2.apex.ctx()))
        fail(Error::Code::ContextMismatch, "cones over different fields");
    if (c1.apex == c2.apex)
        fail(Error::Code::Precondition, "intersection bound needs distinct apexes");
    if (c2.hyperplane.evaluate(c1.apex.coords()).is_zero() ||
        c1.hyperplane.evaluate(c2.apex.coords()).is_zero())
        fail(Error::Code::Precondition,
             "intersection bound needs each apex off the other cone's hyperplane");
    return c1.degree() * c2.degree();
}

} // namespace cbws

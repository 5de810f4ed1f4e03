#include "cbws/jets.hpp"

namespace cbws {

namespace {

// power tables coord^e for one point
std::vector<std::vector<FieldScalar>> power_table(const ProjPoint& p, uint32_t d) {
    const auto& ctx = p.ctx();
    std::vector<std::vector<FieldScalar>> pw(p.n() + 1);
    for (uint32_t i = 0; i <= p.n(); ++i) {
        pw[i].reserve(d + 1);
        pw[i].push_back(ctx->one());
        for (uint32_t e = 1; e <= d; ++e) pw[i].push_back(pw[i].back() * p.coord(i));
    }
    return pw;
}

FieldScalar monomial_value(const Exponents& e, uint32_t n,
                           const std::vector<std::vector<FieldScalar>>& pw,
                           const FieldCtxPtr& ctx) {
    FieldScalar v = ctx->one();
    for (uint32_t i = 0; i <= n; ++i)
        if (e[i] != 0) v = v * pw[i][e[i]];
    return v;
}

} // namespace

Matrix evaluation_matrix(const PointSet& Z, uint32_t d) {
    const auto basis = MonomialBasis::get(Z.n(), d);
    Matrix m(Z.ctx(), Z.size(), basis->size());
    for (size_t r = 0; r < Z.size(); ++r) {
        auto pw = power_table(Z[r], d);
        for (size_t c = 0; c < basis->size(); ++c)
            m.set(r, c, monomial_value(basis->exponents(c), Z.n(), pw, Z.ctx()));
    }
    return m;
}

Matrix jet_matrix(const PointSet& Z, uint32_t d) {
    if (d < 1) fail(Error::Code::Precondition, "jet matrix needs d >= 1");
    const uint32_t n = Z.n();
    const auto basis = MonomialBasis::get(n, d);
    const auto& ctx = Z.ctx();
    Matrix m(ctx, (n + 1) * Z.size(), basis->size());
    for (size_t zi = 0; zi < Z.size(); ++zi) {
        const ProjPoint& p = Z[zi];
        auto pw = power_table(p, d);
        size_t row = (n + 1) * zi;
        // value row
        for (size_t c = 0; c < basis->size(); ++c)
            m.set(row, c, monomial_value(basis->exponents(c), n, pw, ctx));
        ++row;
        // chart partials: every variable except the pivot
        for (uint32_t j = 0; j <= n; ++j) {
            if (j == p.pivot()) continue;
            for (size_t c = 0; c < basis->size(); ++c) {
                const Exponents& e = basis->exponents(c);
                if (e[j] == 0) continue;
                // d/dx_j (x^e) at p = e_j * p^(e - delta_j)
                Exponents f = e;
                f[j] -= 1;
                FieldScalar v = ctx->from_int(e[j]) * monomial_value(f, n, pw, ctx);
                m.set(row, c, v);
            }
            ++row;
        }
    }
    return m;
}

size_t h1_ideal(const PointSet& Z, uint32_t d) {
    if (d < 1) fail(Error::Code::Precondition, "h1_ideal needs d >= 1");
    return Z.size() - evaluation_matrix(Z, d).rank();
}

size_t h1_ideal_sq(const PointSet& Z, uint32_t d) {
    if (d < 1) fail(Error::Code::Precondition, "h1_ideal_sq needs d >= 1");
    return (Z.n() + 1) * Z.size() - jet_matrix(Z, d).rank();
}

JetCodim jet_codim_check(const PointSet& Z, uint32_t d) {
    if (d < 3)
        fail(Error::Code::Precondition, "jet codimension hypothesis requires d >= 3");
    const int m = Z.hull_dim();
    if (Z.size() < static_cast<size_t>(m) + 2)
        fail(Error::Code::Precondition,
             "jet codimension hypothesis requires |Z| >= hull_dim + 2");
    JetCodim out;
    out.measured_codim = jet_matrix(Z, d).rank();
    out.bound = static_cast<size_t>(m + 1) * (Z.n() + 1) + Z.n() - 1;
    return out;
}

size_t h0_neighborhood_plane_curve(uint32_t e, uint32_t d) {
    if (e < 1) fail(Error::Code::Precondition, "curve degree must be >= 1");
    auto tri = [](uint32_t t) { return static_cast<size_t>(t + 2) * (t + 1) / 2; };
    size_t total = tri(d);
    if (d >= 2 * e) total -= tri(d - 2 * e);
    return total;
}

} // namespace cbws

#include "cbws/closedpoints.hpp"

#include "cbws/error.hpp"
#include "cbws/monomial.hpp"

#include <algorithm>

namespace cbws {

namespace {

constexpr uint64_t kMaxTableOrder = 1u << 16;
constexpr uint64_t kPointBudget = 1u << 26;

} // namespace

const ClosedPointStratum& ClosedPointSet::stratum(uint32_t j) const {
    if (j < 1 || j > jmax)
        fail(Error::Code::Precondition, "closed-point stratum degree out of range");
    return strata[j - 1];
}

ClosedPointSet enumerate_closed_points(const FieldCtxPtr& base, uint32_t n, uint32_t jmax) {
    if (!base || !base->is_finite())
        fail(Error::Code::Precondition, "closed-point enumeration needs a finite base field");
    if (n > kMaxAmbientDim)
        fail(Error::Code::Precondition, "ambient dimension out of range");
    if (jmax < 1) fail(Error::Code::Precondition, "jmax must be at least 1");
    const uint32_t p = base->p();
    const uint32_t kb = base->k();
    if (kb * jmax > kMaxExtensionDegree)
        fail(Error::Code::Capacity, "degree tower exceeds the extension cap");

    const BigInt q = base->order();
    BigInt top = big_pow(q, jmax);
    if (top > kMaxTableOrder)
        fail(Error::Code::Capacity, "top extension exceeds the table-arithmetic range");
    BigInt budget = 0;
    for (uint32_t j = 1; j <= jmax; ++j) {
        const BigInt qj = big_pow(q, j);
        BigInt pts = 0, t = 1;
        for (uint32_t i = 0; i <= n; ++i) {
            pts += t;
            t *= qj;
        }
        budget += pts;
    }
    if (budget > kPointBudget)
        fail(Error::Code::Capacity, "closed-point scan exceeds the point budget");

    ClosedPointSet out;
    out.base = base;
    out.n = n;
    out.jmax = jmax;
    out.strata.reserve(jmax);

    for (uint32_t j = 1; j <= jmax; ++j) {
        ClosedPointStratum st;
        st.degree = j;
        const uint32_t kbig = kb * j;
        if (j == 1)
            st.field = base;
        else
            st.field = FieldCtx::extension(p, kbig);
        st.fq = std::make_shared<SmallFq>(st.field);
        const SmallFq& F = *st.fq;
        const uint32_t qb = F.q();

        auto frob_q = [&](std::vector<uint32_t>& w) {
            for (auto& c : w)
                for (uint32_t a = 0; a < kb; ++a) c = F.frobenius(c);
        };

        std::vector<uint32_t> v(n + 1, 0);
        for (uint32_t piv = 0; piv <= n; ++piv) {
            std::fill(v.begin(), v.end(), 0u);
            v[piv] = 1;
            for (;;) {
                // orbit scan: keep v only if its orbit has length exactly j
                // and v is the least vector in it
                std::vector<uint32_t> w = v;
                uint32_t len = 0;
                bool self_min = true;
                for (uint32_t s = 1; s <= j; ++s) {
                    frob_q(w);
                    if (w == v) {
                        len = s;
                        break;
                    }
                    if (w < v) {
                        self_min = false;
                        break;
                    }
                }
                if (self_min) {
                    if (len == 0)
                        fail(Error::Code::InternalInvariant,
                             "frobenius orbit failed to close over its own field");
                    if (len == j) st.reps.push_back(v);
                }
                // advance the free coordinates (positions piv+1..n)
                size_t i = n;
                while (i > piv && v[i] == qb - 1) v[i--] = 0;
                if (i == piv) break;
                ++v[i];
            }
        }
        out.strata.push_back(std::move(st));
    }
    return out;
}

} // namespace cbws

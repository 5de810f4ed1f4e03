#include "doctest.h"

#include "cbws/classes.hpp"
#include "cbws/closedpoints.hpp"
#include "cbws/error.hpp"

#include <functional>
#include <set>
#include <vector>

using namespace cbws;

namespace {

Error::Code thrown_code(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return Error::Code::InternalInvariant; // sentinel: nothing thrown
}

} // namespace

TEST_CASE("closed points of the projective line over F_2") {
    const auto cps = enumerate_closed_points(FieldCtx::prime(2), 1, 3);
    REQUIRE(cps.strata.size() == 3);

    const auto& deg1 = cps.stratum(1);
    REQUIRE(deg1.reps.size() == 3);
    CHECK(deg1.reps[0] == std::vector<uint32_t>{1, 0});
    CHECK(deg1.reps[1] == std::vector<uint32_t>{1, 1});
    CHECK(deg1.reps[2] == std::vector<uint32_t>{0, 1});
    CHECK(deg1.field->order() == 2);

    const auto& deg2 = cps.stratum(2);
    REQUIRE(deg2.reps.size() == 1);
    CHECK(deg2.reps[0] == std::vector<uint32_t>{1, 2});
    CHECK(deg2.field->order() == 4);

    const auto& deg3 = cps.stratum(3);
    REQUIRE(deg3.reps.size() == 2);
    CHECK(deg3.reps[0] == std::vector<uint32_t>{1, 2});
    CHECK(deg3.reps[1] == std::vector<uint32_t>{1, 3});
    CHECK(deg3.field->order() == 8);
}

TEST_CASE("closed points of the projective plane over F_2, degree 1") {
    const auto cps = enumerate_closed_points(FieldCtx::prime(2), 2, 1);
    const auto& st = cps.stratum(1);
    const std::vector<std::vector<uint32_t>> expect = {
        {1, 0, 0}, {1, 0, 1}, {1, 1, 0}, {1, 1, 1}, {0, 1, 0}, {0, 1, 1}, {0, 0, 1}};
    CHECK(st.reps == expect);
}

TEST_CASE("stratum sizes match the census across a grid") {
    struct Case {
        uint32_t p, k, n, jmax;
    };
    const std::vector<Case> grid = {{2, 1, 1, 6}, {3, 1, 1, 4}, {2, 2, 1, 5},
                                    {5, 1, 1, 4}, {2, 1, 2, 5}, {3, 1, 2, 3},
                                    {2, 1, 3, 3}, {3, 2, 1, 2}};
    for (const auto& c : grid) {
        const auto base = c.k == 1 ? FieldCtx::prime(c.p) : FieldCtx::extension(c.p, c.k);
        const auto cps = enumerate_closed_points(base, c.n, c.jmax);
        const long q = static_cast<long>(base->order().get_ui());
        const auto census = closed_point_census(Space::proj(c.n), q, c.jmax);
        for (uint32_t j = 1; j <= c.jmax; ++j)
            CHECK(BigInt(static_cast<long>(cps.stratum(j).reps.size())) ==
                  census.degree_count(j));
    }
}

TEST_CASE("representatives are normalized, canonical, distinct, of exact degree") {
    for (const auto& base :
         {FieldCtx::prime(2), FieldCtx::prime(3), FieldCtx::extension(2, 2)}) {
        const uint32_t n = 2;
        const uint32_t jmax = base->k() == 1 ? 3 : 2;
        const auto cps = enumerate_closed_points(base, n, jmax);
        for (uint32_t j = 1; j <= jmax; ++j) {
            const auto& st = cps.stratum(j);
            const SmallFq& F = *st.fq;
            std::set<std::vector<uint32_t>> seen;
            for (const auto& rep : st.reps) {
                // normalization: zeros then a literal 1 at the pivot
                size_t piv = 0;
                while (piv < rep.size() && rep[piv] == 0) ++piv;
                REQUIRE(piv < rep.size());
                CHECK(rep[piv] == 1);
                // orbit under x -> x^q closes after exactly j steps and
                // never passes below the representative
                auto frob_q = [&](std::vector<uint32_t> w) {
                    for (auto& c : w)
                        for (uint32_t a = 0; a < base->k(); ++a) c = F.frobenius(c);
                    return w;
                };
                std::vector<uint32_t> w = rep;
                for (uint32_t s = 1; s <= j; ++s) {
                    w = frob_q(w);
                    if (s < j) {
                        CHECK(w != rep);
                        CHECK(!(w < rep));
                    }
                }
                CHECK(w == rep);
                CHECK(seen.insert(rep).second);
            }
        }
    }
}

TEST_CASE("closed point enumeration limits") {
    CHECK(thrown_code([] { enumerate_closed_points(FieldCtx::rationals(), 1, 1); }) ==
          Error::Code::Precondition);
    CHECK(thrown_code([] { enumerate_closed_points(FieldCtx::prime(2), 1, 0); }) ==
          Error::Code::Precondition);
    CHECK(thrown_code([] { enumerate_closed_points(FieldCtx::prime(2), 8, 1); }) ==
          Error::Code::Precondition);
    // tower cap: k * jmax must stay within the extension range
    CHECK(thrown_code([] { enumerate_closed_points(FieldCtx::extension(2, 4), 1, 4); }) ==
          Error::Code::Capacity);
    // table cap: 5^7 > 2^16
    CHECK(thrown_code([] { enumerate_closed_points(FieldCtx::prime(5), 1, 7); }) ==
          Error::Code::Capacity);

    // P^0 has exactly one closed point, of degree 1
    const auto pt = enumerate_closed_points(FieldCtx::prime(3), 0, 2);
    CHECK(pt.stratum(1).reps.size() == 1);
    CHECK(pt.stratum(2).reps.empty());
}

#include "doctest.h"

#include "cbws/points.hpp"
#include "cbws/projection.hpp"

#include <string>
#include <vector>

using namespace cbws;

namespace {

ProjPoint pt(const FieldCtxPtr& ctx, std::initializer_list<long> vals) {
    std::vector<FieldScalar> c;
    for (long v : vals) c.push_back(ctx->from_int(v));
    return ProjPoint(std::move(c));
}

bool is_code(const Error& e, Error::Code c) { return e.code() == c; }

} // namespace

TEST_CASE("projective points normalize at the first nonzero coordinate") {
    auto F7 = FieldCtx::prime(7);
    ProjPoint a = pt(F7, {2, 4, 6});
    CHECK(a.pivot() == 0);
    CHECK(a.coord(0) == F7->from_int(1));
    CHECK(a.coord(1) == F7->from_int(2));
    CHECK(a.coord(2) == F7->from_int(3));

    ProjPoint b = pt(F7, {0, 3, 6});
    CHECK(b.pivot() == 1);
    CHECK(b.coord(0).is_zero());
    CHECK(b.coord(1).is_one());
    CHECK(b.coord(2) == F7->from_int(2));

    auto Q = FieldCtx::rationals();
    ProjPoint c = pt(Q, {0, -2, 4});
    CHECK(c.pivot() == 1);
    CHECK(c.coord(1).is_one());
    CHECK(c.coord(2) == Q->from_int(-2));

    // normalization is idempotent: re-normalizing the coords changes nothing
    ProjPoint a2(std::vector<FieldScalar>(a.coords()));
    CHECK(a2 == a);
}

TEST_CASE("projective equality is equality of normalized coordinates") {
    auto F7 = FieldCtx::prime(7);
    CHECK(pt(F7, {1, 2, 3}) == pt(F7, {2, 4, 6}));
    CHECK(pt(F7, {1, 2, 3}) == pt(F7, {5, 3, 1})); // 5*(1,2,3) = (5,10,15) = (5,3,1)
    CHECK(pt(F7, {1, 2, 3}) != pt(F7, {1, 2, 4}));
    CHECK(pt(F7, {1, 0, 0}) != pt(F7, {0, 1, 0}));
}

TEST_CASE("degenerate point inputs are rejected") {
    auto F7 = FieldCtx::prime(7);
    CHECK_THROWS_WITH_AS(pt(F7, {0, 0, 0}), doctest::Contains("all-zero"), Error);
    CHECK_THROWS_AS(pt(F7, {3}), Error);
    bool ok = false;
    try {
        pt(F7, {0, 0, 0});
    } catch (const Error& e) {
        ok = is_code(e, Error::Code::InvalidPoint);
    }
    CHECK(ok);

    auto F5 = FieldCtx::prime(5);
    std::vector<FieldScalar> mixed{F7->one(), F5->one()};
    CHECK_THROWS_AS(ProjPoint(std::move(mixed)), Error);
}

TEST_CASE("point sets enforce distinctness and shape") {
    auto F7 = FieldCtx::prime(7);
    PointSet z = PointSet::of({pt(F7, {1, 0, 0}), pt(F7, {0, 1, 0})});
    CHECK(z.size() == 2);
    CHECK(z.n() == 2);
    CHECK(z.contains(pt(F7, {1, 0, 0})));
    CHECK(z.contains(pt(F7, {0, 3, 0}))); // same projective point
    CHECK(!z.contains(pt(F7, {0, 0, 1})));

    CHECK_THROWS_AS(z.add(pt(F7, {2, 0, 0})), Error); // duplicate up to scalar
    CHECK_THROWS_AS(z.add(pt(F7, {1, 1})), Error);    // wrong dimension
    CHECK_THROWS_AS(PointSet::of({pt(F7, {1, 2, 3}), pt(F7, {2, 4, 6})}), Error);

    PointSet z3 = z.with(pt(F7, {0, 0, 1}));
    CHECK(z3.size() == 3);
    CHECK(z.size() == 2); // with() copies
    PointSet z2 = z3.without(1);
    CHECK(z2.size() == 2);
    CHECK(z2.contains(pt(F7, {1, 0, 0})));
    CHECK(!z2.contains(pt(F7, {0, 1, 0})));
    CHECK(z2.contains(pt(F7, {0, 0, 1})));
}

TEST_CASE("hull dimension equals coordinate-matrix rank minus one") {
    auto F7 = FieldCtx::prime(7);
    PointSet frame = PointSet::of({pt(F7, {1, 0, 0}), pt(F7, {0, 1, 0}), pt(F7, {0, 0, 1})});
    CHECK(frame.hull_dim() == 2);
    CHECK(projective_hull_dim(frame) == 2);

    PointSet line = PointSet::of({pt(F7, {1, 0, 0}), pt(F7, {0, 1, 0}), pt(F7, {1, 1, 0})});
    CHECK(line.hull_dim() == 1);

    PointSet single = PointSet::of({pt(F7, {1, 2, 3})});
    CHECK(single.hull_dim() == 0);

    // e_0..e_m plus a combination of them spans exactly an m-plane
    for (uint32_t m = 1; m <= 3; ++m) {
        std::vector<ProjPoint> pts;
        for (uint32_t i = 0; i <= m; ++i) {
            std::vector<FieldScalar> c(5, F7->zero());
            c[i] = F7->one();
            pts.emplace_back(std::move(c));
        }
        std::vector<FieldScalar> combo(5, F7->zero());
        for (uint32_t i = 0; i <= m; ++i) combo[i] = F7->from_int(i + 1);
        pts.emplace_back(std::move(combo));
        CHECK(PointSet::of(std::move(pts)).hull_dim() == static_cast<int>(m));
    }
}

TEST_CASE("lifting a point set maps coordinates through the canonical embedding") {
    auto F2 = FieldCtx::prime(2);
    auto F4 = FieldCtx::extension(2, 2);
    PointSet z = PointSet::of({pt(F2, {1, 0, 1}), pt(F2, {0, 1, 1})});
    PointSet lz = z.lifted(F4);
    CHECK(lz.size() == 2);
    CHECK(lz.ctx()->same(*F4));
    Embedding emb(F2, F4);
    for (size_t i = 0; i < z.size(); ++i)
        for (uint32_t j = 0; j <= 2; ++j)
            CHECK(lz[i].coord(j) == emb.apply(z[i].coord(j)));
    CHECK(z.lifted(F2) == z);
}

TEST_CASE("merge_lifted lands in the compositum and merges duplicates") {
    auto F2 = FieldCtx::prime(2);
    auto F4 = FieldCtx::extension(2, 2);
    auto F8 = FieldCtx::extension(2, 3);

    PointSet a = PointSet::of({pt(F2, {1, 0, 1}), pt(F2, {0, 1, 0})});
    PointSet b = PointSet::of({pt(F4, {1, 0, 1}), ProjPoint({F4->one(), F4->generator(), F4->zero()})});
    PointSet m = merge_lifted(a, b);
    CHECK(m.ctx()->same(*F4));
    CHECK(m.size() == 3); // [1:0:1] appears in both

    PointSet c = PointSet::of({ProjPoint({F8->one(), F8->generator(), F8->zero()})});
    PointSet m2 = merge_lifted(b, c);
    CHECK(m2.ctx()->p() == 2);
    CHECK(m2.ctx()->k() == 6); // lcm(2, 3)
    CHECK(m2.size() == 3);     // generators of F4 and F8 embed to different elements
}

TEST_CASE("point-set files parse and serialize round-trip") {
    std::string text =
        "# three points over GF(7)\n"
        "field 7 1\n"
        "1,2,3\n"
        "\n"
        "0,1,2\n"
        "1,0,0\n";
    PointSet z = PointSet::parse(text);
    CHECK(z.size() == 3);
    CHECK(z.n() == 2);
    CHECK(z.ctx()->p() == 7);
    CHECK(z[0] == pt(z.ctx(), {1, 2, 3}));

    PointSet again = PointSet::parse(z.serialize());
    CHECK(again == z);
}

TEST_CASE("point-set files support extension codes and exact rationals") {
    auto F4 = FieldCtx::extension(2, 2);
    PointSet z = PointSet::parse("field 2 2\n1,2,3\n0,1,2\n");
    CHECK(z.ctx()->same(*F4));
    CHECK(z[0].coord(1) == F4->from_code(2));
    CHECK(z[0].coord(2) == F4->from_code(3));
    CHECK(PointSet::parse(z.serialize()) == z);

    PointSet q = PointSet::parse("field rational\n2,-4,6\n0,3,9\n");
    CHECK(q.ctx()->kind() == FieldKind::Rational);
    CHECK(q[0] == pt(q.ctx(), {1, -2, 3}));
    CHECK(q[1] == pt(q.ctx(), {0, 1, 3}));
    CHECK(PointSet::parse(q.serialize()) == q);

    // non-integral normalized coordinates serialize by clearing denominators
    auto Q = FieldCtx::rationals();
    PointSet frac = PointSet::of(
        {ProjPoint({Q->from_int(1), Q->from_rational(BigRat(1, 2)), Q->from_rational(BigRat(-2, 3))})});
    PointSet back = PointSet::parse(frac.serialize());
    CHECK(back == frac);
    CHECK(frac.serialize().find('/') == std::string::npos);
}

TEST_CASE("malformed point files are rejected with parse errors") {
    auto expect_parse_error = [](const std::string& text) {
        try {
            PointSet::parse(text);
            return false;
        } catch (const Error& e) {
            return e.code() == Error::Code::Parse;
        }
    };
    CHECK(expect_parse_error("1,2,3\n"));                      // missing header
    CHECK(expect_parse_error("field 7 1\n"));                  // no points
    CHECK(expect_parse_error("field 7 1\n1,2,3\n2,4,6\n"));    // duplicate point
    CHECK(expect_parse_error("field 7 1\n1,2,3\n1,2\n"));      // ragged widths
    CHECK(expect_parse_error("field 7 1\n1,x,3\n"));           // bad integer
    CHECK(expect_parse_error("field rational\n1,1/2,3\n"));    // fractions not allowed
    CHECK(expect_parse_error("lattice 7 1\n1,2,3\n"));         // wrong keyword
    CHECK(expect_parse_error("field 7 1\n7,1,2\n"));           // code out of range
}

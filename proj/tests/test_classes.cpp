#include "doctest.h"

#include "cbws/classes.hpp"
#include "cbws/error.hpp"
#include "cbws/field.hpp"
#include "cbws/smallfq.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
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

// Literal geometric model of P^1 over F_p inside F_{p^kbig}: every point of
// degree <= jcap listed explicitly, with the Frobenius permutation on the
// list. Independent of the census / dynamic-program machinery under test.
struct LiteralP1 {
    std::vector<uint32_t> degree; // orbit length per point
    std::vector<size_t> frob;     // index of the Frobenius image

    LiteralP1(uint32_t p, uint32_t kbig, uint32_t jcap) {
        auto F = FieldCtx::extension(p, kbig);
        SmallFq fq(F);
        std::vector<std::pair<uint32_t, uint32_t>> pts; // (c0, c1) normalized
        pts.emplace_back(0, 1);
        for (uint32_t x = 0; x < fq.q(); ++x) pts.emplace_back(1, x);
        auto apply = [&](std::pair<uint32_t, uint32_t> pt) {
            if (pt.first == 0) return pt;
            return std::make_pair(1u, fq.frobenius(pt.second));
        };
        std::vector<size_t> keep;
        std::vector<size_t> image_raw(pts.size());
        std::vector<uint32_t> deg_raw(pts.size());
        for (size_t i = 0; i < pts.size(); ++i) {
            // orbit length under x -> x^p
            auto cur = apply(pts[i]);
            uint32_t len = 1;
            while (cur != pts[i]) {
                cur = apply(cur);
                ++len;
            }
            deg_raw[i] = len;
            const auto img = apply(pts[i]);
            image_raw[i] = static_cast<size_t>(
                std::find(pts.begin(), pts.end(), img) - pts.begin());
            if (len <= jcap) keep.push_back(i);
        }
        std::vector<size_t> newindex(pts.size(), SIZE_MAX);
        for (size_t t = 0; t < keep.size(); ++t) newindex[keep[t]] = t;
        for (size_t old : keep) {
            degree.push_back(deg_raw[old]);
            frob.push_back(newindex[image_raw[old]]); // orbits stay within keep
        }
    }

    bool stable(uint64_t mask) const {
        for (size_t i = 0; i < frob.size(); ++i)
            if ((mask >> i & 1) && !(mask >> frob[i] & 1)) return false;
        return true;
    }

    // Stable subsets of each geometric size.
    std::vector<std::vector<uint64_t>> stable_by_size() const {
        std::vector<std::vector<uint64_t>> by(frob.size() + 1);
        for (uint64_t mask = 0; mask < (uint64_t(1) << frob.size()); ++mask) {
            if (!stable(mask)) continue;
            by[static_cast<size_t>(__builtin_popcountll(mask))].push_back(mask);
        }
        return by;
    }

    // Ordered tuples of pairwise disjoint stable subsets with these sizes.
    BigInt tuple_count(const std::vector<uint32_t>& sizes) const {
        const auto by = stable_by_size();
        BigInt total = 0;
        std::function<void(size_t, uint64_t)> rec = [&](size_t idx, uint64_t used) {
            if (idx == sizes.size()) {
                total += 1;
                return;
            }
            if (sizes[idx] >= by.size()) return;
            for (uint64_t m : by[sizes[idx]])
                if ((m & used) == 0) rec(idx + 1, used | m);
        };
        rec(0, 0);
        return total;
    }
};

} // namespace

TEST_CASE("compositions and fubini numbers") {
    const auto c3 = compositions(3);
    REQUIRE(c3.size() == 4);
    CHECK(c3[0].sizes == std::vector<uint32_t>{1, 1, 1});
    CHECK(c3[1].sizes == std::vector<uint32_t>{1, 2});
    CHECK(c3[2].sizes == std::vector<uint32_t>{2, 1});
    CHECK(c3[3].sizes == std::vector<uint32_t>{3});
    CHECK(c3[0].multiplicity() == 6);
    CHECK(c3[1].multiplicity() == 3);
    CHECK(c3[2].multiplicity() == 3);
    CHECK(c3[3].multiplicity() == 1);
    CHECK(c3[1].to_string() == "(1,2)");
    CHECK(fubini(3) == 13);

    const auto c0 = compositions(0);
    REQUIRE(c0.size() == 1);
    CHECK(c0[0].sizes.empty());
    CHECK(c0[0].multiplicity() == 1);
    CHECK(c0[0].to_string() == "()");
    CHECK(fubini(0) == 1);
    CHECK(fubini(1) == 1);

    for (uint32_t k = 1; k <= 10; ++k)
        CHECK(compositions(k).size() == (size_t(1) << (k - 1)));

    // independent recurrence: F(k) = sum_j C(k,j) F(k-j)
    std::vector<BigInt> f = {1};
    for (uint32_t k = 1; k <= 9; ++k) {
        BigInt acc = 0;
        for (uint32_t j = 1; j <= k; ++j) acc += big_binomial(k, j) * f[k - j];
        f.push_back(acc);
        CHECK(fubini(k) == acc);
    }
    CHECK(f[9] == 7087261);

    CHECK(thrown_code([] { compositions(15); }) == Error::Code::Capacity);
    CHECK(thrown_code([] { fubini(15); }) == Error::Code::Capacity);
}

TEST_CASE("closed point censuses") {
    const auto p2q2 = closed_point_census(Space::proj(2), 2, 3);
    CHECK(p2q2.points(1) == 7);
    CHECK(p2q2.points(2) == 21);
    CHECK(p2q2.points(3) == 73);
    CHECK(p2q2.degree_count(1) == 7);
    CHECK(p2q2.degree_count(2) == 7);
    CHECK(p2q2.degree_count(3) == 22);

    const auto p1q2 = closed_point_census(Space::proj(1), 2, 3);
    CHECK(p1q2.degree_count(1) == 3);
    CHECK(p1q2.degree_count(2) == 1);
    CHECK(p1q2.degree_count(3) == 2);

    for (long q : {2L, 3L, 4L, 5L, 9L})
        CHECK(closed_point_census(Space::affine(1), q, 2).degree_count(1) == q);

    const auto pt = closed_point_census(Space::point(), 5, 4);
    CHECK(pt.degree_count(1) == 1);
    for (uint32_t j = 2; j <= 4; ++j) CHECK(pt.degree_count(j) == 0);

    CHECK(Space::proj(2).describe() == "P2");
    CHECK(Space::affine(1).describe() == "A1");
    CHECK(Space::diff(Space::proj(1), Space::point()).describe() == "(P1 - P0)");
    CHECK(Space::diff(Space::proj(2), Space::proj(1)).dim() == 2);

    CHECK(thrown_code([] { closed_point_census(Space::proj(1), 1, 2); }) ==
          Error::Code::Precondition);
    CHECK(thrown_code([] { closed_point_census(Space::proj(1), 4, 0); }) ==
          Error::Code::Precondition);
    CHECK(thrown_code([&] { p1q2.degree_count(4); }) == Error::Code::Precondition);
    // a genuinely negative "complement" must be caught loudly
    CHECK(thrown_code([] {
              closed_point_census(Space::diff(Space::point(), Space::proj(1)), 3, 1);
          }) == Error::Code::InternalInvariant);
}

TEST_CASE("census invariants: moebius roundtrip, positivity, degree bound") {
    const std::vector<Space> spaces = {
        Space::proj(1),  Space::proj(2),
        Space::proj(3),  Space::affine(1),
        Space::affine(2), Space::diff(Space::proj(1), Space::point()),
        Space::diff(Space::proj(2), Space::proj(1))};
    // q = 6 is not a prime power, but the counting formulas are polynomial
    // in q and the necklace-style positivity still holds.
    for (long q : {2L, 3L, 4L, 5L, 6L}) {
        for (const Space& X : spaces) {
            const auto c = closed_point_census(X, q, 8);
            for (uint32_t j = 1; j <= 8; ++j) {
                CHECK(c.degree_count(j) >= 0);
                CHECK(BigInt(j) * c.degree_count(j) <= c.points(j));
            }
            // inversion roundtrip: N_m = sum_{j | m} j * a_j
            for (uint32_t m = 1; m <= 8; ++m) {
                BigInt acc = 0;
                for (uint32_t j = 1; j <= m; ++j)
                    if (m % j == 0) acc += BigInt(j) * c.degree_count(j);
                CHECK(acc == c.points(m));
            }
        }
    }
    // P^1 minus a rational point is A^1, closed point for closed point
    for (long q : {2L, 3L, 4L, 5L}) {
        const auto lhs =
            closed_point_census(Space::diff(Space::proj(1), Space::point()), q, 8);
        const auto rhs = closed_point_census(Space::affine(1), q, 8);
        for (uint32_t j = 1; j <= 8; ++j)
            CHECK(lhs.degree_count(j) == rhs.degree_count(j));
    }
}

TEST_CASE("stable subset counts w_k") {
    // P^1 over F_2: 1, 3, 4, 6, 12
    const std::vector<long> expect = {1, 3, 4, 6, 12};
    for (uint32_t k = 0; k <= 4; ++k)
        CHECK(w_k_count(Space::proj(1), k, 2) == expect[k]);

    // A^1: pairs = rational pairs + quadratic points = q^2 - q
    for (long q : {2L, 3L, 4L, 5L, 7L})
        CHECK(w_k_count(Space::affine(1), 2, q) == q * (q - 1));

    // P^2 over F_2: 21 rational pairs + 7 quadratic points
    CHECK(w_k_count(Space::proj(2), 2, 2) == 28);

    CHECK(w_k_count(Space::proj(2), 0, 3) == 1);
}

TEST_CASE("literal frobenius-orbit oracle for stable subsets and tuples") {
    // P^1 over F_2, every point of degree <= 3 listed inside F_64.
    const LiteralP1 m2(2, 6, 3);
    REQUIRE(m2.degree.size() == 11); // 3 rational + 2 quadratic + 6 cubic
    const auto by2 = m2.stable_by_size();
    for (uint32_t k = 0; k <= 3; ++k)
        CHECK(BigInt(static_cast<long>(by2[k].size())) ==
              w_k_count(Space::proj(1), k, 2));

    const std::vector<std::vector<uint32_t>> shapes = {
        {1}, {2}, {3}, {1, 1}, {2, 1}, {1, 2}, {1, 1, 1}, {2, 2}, {3, 2}};
    for (const auto& sizes : shapes)
        CHECK(m2.tuple_count(sizes) == w_lambda_count(Space::proj(1), sizes, 2));

    // P^1 over F_3, degree <= 2 inside F_9.
    const LiteralP1 m3(3, 2, 2);
    REQUIRE(m3.degree.size() == 10); // 4 rational + 6 quadratic
    for (uint32_t k = 0; k <= 2; ++k)
        CHECK(BigInt(static_cast<long>(m3.stable_by_size()[k].size())) ==
              w_k_count(Space::proj(1), k, 3));
    for (const auto& sizes :
         {std::vector<uint32_t>{1, 1}, {2, 1}, {2, 2}, {1, 1, 1}, {2, 2, 1}})
        CHECK(m3.tuple_count(sizes) == w_lambda_count(Space::proj(1), sizes, 3));
}

TEST_CASE("configuration tuple counts w_lambda") {
    CHECK(w_lambda_count(Space::proj(1), {1, 1}, 2) == 6);

    const std::vector<long> qs = {2, 3, 4, 5};
    const std::vector<long> frozen22 = {6, 48, 180, 480};
    for (size_t i = 0; i < qs.size(); ++i)
        CHECK(w_lambda_count(Space::proj(1), {2, 2}, qs[i]) == frozen22[i]);

    // single block agrees with w_k
    for (const Space& X : {Space::proj(1), Space::proj(2), Space::affine(1)})
        for (long q : {2L, 3L})
            for (uint32_t k = 1; k <= 5; ++k)
                CHECK(w_lambda_count(X, {k}, q) == w_k_count(X, k, q));

    // blocks are interchangeable
    for (long q : {2L, 3L}) {
        const BigInt a = w_lambda_count(Space::proj(2), {3, 1, 2}, q);
        CHECK(a == w_lambda_count(Space::proj(2), {1, 2, 3}, q));
        CHECK(a == w_lambda_count(Space::proj(2), {2, 3, 1}, q));
    }

    // zero-size blocks are inert; the empty shape counts one (empty) tuple
    CHECK(w_lambda_count(Space::proj(1), {2, 0, 1}, 3) ==
          w_lambda_count(Space::proj(1), {2, 1}, 3));
    CHECK(w_lambda_count(Space::proj(1), {}, 2) == 1);
    CHECK(w_lambda_count(Space::proj(1), {0, 0}, 2) == 1);

    CHECK(thrown_code([] { w_lambda_count(Space::proj(1), {8, 7}, 2); }) ==
          Error::Code::Capacity);

    // the (2,2) counts fit (L^2 - L)(L^2 - 1) = L^4 - L^3 - L^2 + L
    std::vector<std::pair<BigInt, BigInt>> vals;
    for (long q : {2L, 3L, 4L, 5L, 7L, 8L})
        vals.emplace_back(q, w_lambda_count(Space::proj(1), {2, 2}, q));
    CHECK(interpolate_class(vals, 4) ==
          LPoly::from_coeffs({BigInt(0), BigInt(1), BigInt(-1), BigInt(-1), BigInt(1)}));
}

TEST_CASE("decomposition identity for tuple counts") {
    // X decomposed as U ⊔ Z: every block splits between the pieces, so
    // w_lambda(X) = sum over componentwise splits b <= lambda of
    // w_b(U) * w_{lambda-b}(Z).
    auto decomposed = [](const Space& U, const Space& Z,
                         const std::vector<uint32_t>& sizes, long q) -> BigInt {
        std::vector<uint32_t> b(sizes.size(), 0);
        BigInt total = 0;
        for (;;) {
            std::vector<uint32_t> rest(sizes.size());
            for (size_t i = 0; i < sizes.size(); ++i) rest[i] = sizes[i] - b[i];
            total += w_lambda_count(U, b, q) * w_lambda_count(Z, rest, q);
            size_t i = 0;
            while (i < sizes.size() && b[i] == sizes[i]) b[i++] = 0;
            if (i == sizes.size()) break;
            ++b[i];
        }
        return total;
    };
    const std::vector<std::vector<uint32_t>> shapes = {
        {1}, {2}, {1, 1}, {2, 1}, {3}, {2, 2}, {1, 1, 1}};
    for (long q : {2L, 3L}) {
        for (const auto& sizes : shapes) {
            // P^1 = A^1 ⊔ {point}
            CHECK(w_lambda_count(Space::proj(1), sizes, q) ==
                  decomposed(Space::affine(1), Space::point(), sizes, q));
            // P^2 = A^2 ⊔ P^1
            CHECK(w_lambda_count(Space::proj(2), sizes, q) ==
                  decomposed(Space::affine(2), Space::proj(1), sizes, q));
        }
    }
}

TEST_CASE("class interpolation") {
    // w_2(P^1) = L^2
    CHECK(interpolate_class({{2, 4}, {3, 9}, {5, 25}, {7, 49}}, 2) ==
          LPoly::monomial(2));
    // w_3(P^1) = L^3 - L
    CHECK(interpolate_class({{2, 6}, {3, 24}, {4, 60}, {5, 120}, {7, 336}}, 3) ==
          LPoly::from_coeffs({BigInt(0), BigInt(-1), BigInt(0), BigInt(1)}));
    // constant class
    CHECK(interpolate_class({{2, 5}, {3, 5}, {4, 5}}, 0) == LPoly(BigInt(5)));
    // extra held-out points all verified
    CHECK(interpolate_class({{2, 4}, {3, 9}, {4, 16}, {5, 25}, {7, 49}, {8, 64}},
                            2) == LPoly::monomial(2));

    CHECK(thrown_code([] {
              interpolate_class({{2, 4}, {3, 9}, {5, 25}, {7, 50}}, 2);
          }) == Error::Code::NonPolynomial);
    CHECK(thrown_code([] {
              interpolate_class({{2, 1}, {4, 2}, {8, 4}, {16, 8}}, 2);
          }) == Error::Code::NonPolynomial); // the data fit q/2, not a class
    CHECK(thrown_code([] { interpolate_class({{2, 4}, {3, 9}, {5, 25}}, 2); }) ==
          Error::Code::Precondition);
    CHECK(thrown_code([] {
              interpolate_class({{2, 4}, {3, 9}, {3, 9}, {5, 25}}, 2);
          }) == Error::Code::Precondition);
    CHECK(thrown_code([] {
              interpolate_class({{2, 4}, {3, 9}, {6, 36}, {7, 49}}, 2);
          }) == Error::Code::Precondition); // 6 is not a prime power
}

TEST_CASE("alternating composition sums") {
    CHECK(alternating_lambda_sum(Space::proj(1), 0, 2) == 1);
    CHECK(alternating_lambda_sum(Space::proj(1), 1, 2) == -3);
    CHECK(alternating_lambda_sum(Space::proj(1), 2, 2) == 8);

    // A^1: -(q^2 - q) + 2 q(q-1) = q^2 - q
    for (long q : {2L, 3L, 4L, 5L})
        CHECK(alternating_lambda_sum(Space::affine(1), 2, q) == q * (q - 1));

    CHECK(alternating_lambda_class(Space::proj(1), 1) ==
          LPoly::from_coeffs({BigInt(-1), BigInt(-1)}));
    CHECK(alternating_lambda_class(Space::proj(1), 2) ==
          LPoly::from_coeffs({BigInt(0), BigInt(2), BigInt(1)}));
    CHECK(alternating_lambda_class(Space::affine(1), 2) ==
          LPoly::from_coeffs({BigInt(0), BigInt(-1), BigInt(1)}));

    CHECK(thrown_code([] { alternating_lambda_sum(Space::proj(1), 11, 2); }) ==
          Error::Code::Capacity);
    CHECK(thrown_code([] { alternating_lambda_class(Space::proj(1), 11); }) ==
          Error::Code::Capacity);
}

TEST_CASE("counting zeta identity") {
    const auto r = config_zeta_identity_check(Space::proj(1), 4, 2);
    CHECK(r.ok);
    const std::vector<long> expect = {1, 3, 4, 6, 12};
    for (uint32_t k = 0; k <= 4; ++k) {
        CHECK(r.w_counts[k] == expect[k]);
        CHECK(r.ratio_coeffs[k] == expect[k]);
    }

    // A^1 at k = 2: both pipelines give q^2 - q
    for (long q : {2L, 3L, 4L}) {
        const auto ra = config_zeta_identity_check(Space::affine(1), 2, q);
        CHECK(ra.ok);
        CHECK(ra.w_counts[2] == q * (q - 1));
        CHECK(ra.ratio_coeffs[2] == q * (q - 1));
    }

    for (const Space& X :
         {Space::proj(1), Space::proj(2), Space::affine(1), Space::affine(2),
          Space::diff(Space::proj(1), Space::point()),
          Space::diff(Space::proj(2), Space::proj(1))})
        for (long q : {2L, 3L, 4L})
            CHECK(config_zeta_identity_check(X, 6, q).ok);

    CHECK(config_zeta_identity_check(Space::proj(2), 0, 2).ok); // 1 = 1

    CHECK(thrown_code([] { config_zeta_identity_check(Space::proj(1), 13, 2); }) ==
          Error::Code::Capacity);
}

TEST_CASE("psi thresholds") {
    CHECK(psi(2, 1, 10, 1) == 6); // smallest m with 2m - 10 >= 1
    CHECK(psi(2, 1, 10, 0) == 0); // m = 0 satisfies 0 >= 0
    CHECK(psi(1, 1, 4, 3) == 4);  // n = 1 drops the second max term

    // psi depends on e and d only through e*d
    for (int64_t l = 0; l <= 20; ++l) CHECK(psi(2, 2, 5, l) == psi(2, 1, 10, l));

    // shifting kconst shifts the threshold argument
    for (int64_t kc : {1L, 5L})
        for (int64_t l = 0; l <= 20; ++l)
            CHECK(psi(3, 1, 7, l, kc) == psi(3, 1, 7, l + kc, 0));

    // nondecreasing in l across a parameter grid
    for (uint32_t n : {1u, 2u, 3u})
        for (uint32_t e : {1u, 2u})
            for (uint32_t d : {4u, 10u}) {
                const auto t = psi_table(n, e, d, 40);
                CHECK(t.values.size() == 41);
                for (size_t l = 0; l + 1 < t.values.size(); ++l)
                    CHECK(t.values[l] <= t.values[l + 1]);
                CHECK(t.value(0) == psi(n, e, d, 0));
                CHECK(t.value(40) == psi(n, e, d, 40));
            }

    CHECK(thrown_code([] { psi(0, 1, 1, 0); }) == Error::Code::Precondition);
    CHECK(thrown_code([] { psi(2, 0, 1, 0); }) == Error::Code::Precondition);
    CHECK(thrown_code([] { psi(2, 1, 1, -1); }) == Error::Code::Precondition);
    CHECK(thrown_code([] { psi_table(2, 1, 4, -1); }) == Error::Code::Precondition);
    CHECK(thrown_code([] { psi_table(2, 1, 4, 3).value(4); }) ==
          Error::Code::Precondition);
}

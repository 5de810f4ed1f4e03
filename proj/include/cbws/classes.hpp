#pragma once

// Ordered-partition combinatorics and configuration-space point counts:
// compositions with their set-partition multiplicities, closed-point
// censuses of simple spaces over F_q, the counts w_lambda of tuples of
// disjoint Galois-stable subsets, polynomial classes recovered by
// interpolation, signed composition sums, a counting-zeta consistency
// check, and the threshold function psi used by the rate bounds.

#include "cbws/bigint.hpp"
#include "cbws/lseries.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace cbws {

// Ordered tuple of positive part sizes (a_1, ..., a_m).
struct Composition {
    std::vector<uint32_t> sizes;

    uint32_t total() const; // |lambda| = sum of sizes
    uint32_t parts() const { return static_cast<uint32_t>(sizes.size()); }
    // Number of ordered partitions of a total()-element set with these
    // block sizes in this order: total()! / prod(sizes_i!).
    BigInt multiplicity() const;

    bool operator==(const Composition&) const = default;
    std::string to_string() const; // "(2,1,1)"
};

// All 2^(k-1) compositions of k (k = 0 gives the empty composition),
// ordered lexicographically by the size vector. k <= 14.
std::vector<Composition> compositions(uint32_t k);

// Number of ordered set partitions of a k-set (sum of all multiplicities).
BigInt fubini(uint32_t k);

// A space with known point counts over every F_{q^m}: projective space,
// affine space, or a difference of two such (complement with both counts
// known). Counts are polynomial formulas in q, so q is any integer >= 2.
class Space {
public:
    static Space proj(uint32_t n);
    static Space affine(uint32_t n);
    static Space point() { return proj(0); }
    static Space diff(const Space& a, const Space& b);

    // N_m = #X(F_{q^m}), exact.
    BigInt points(const BigInt& q, uint32_t m) const;
    // Dimension (for Diff: of the ambient minuend — an upper bound, which
    // is what degree bounds need).
    uint32_t dim() const;
    std::string describe() const; // "P2", "A1", "(P1 - P0)"

private:
    enum class Kind { Proj, Affine, Diff };
    Kind kind_ = Kind::Proj;
    uint32_t n_ = 0;
    std::shared_ptr<const Space> a_, b_;
};

// Closed points of X over F_q counted by degree via Moebius inversion:
// a_j = (1/j) * sum_{m | j} mu(j/m) N_m.
struct ClosedPointCensus {
    Space space;
    BigInt q;
    uint32_t jmax = 0;
    std::vector<BigInt> point_counts;  // N_1 .. N_jmax
    std::vector<BigInt> degree_counts; // a_1 .. a_jmax

    const BigInt& points(uint32_t m) const;       // N_m, 1 <= m <= jmax
    const BigInt& degree_count(uint32_t j) const; // a_j, 1 <= j <= jmax
};
ClosedPointCensus closed_point_census(const Space& space, const BigInt& q,
                                      uint32_t jmax);

// Number of Galois-stable k-element reduced subschemes of X: the
// coefficient of t^k in prod_j (1 + t^j)^(a_j).
BigInt w_k_count(const Space& space, uint32_t k, const BigInt& q);

// Number of tuples (A_1, ..., A_m) of pairwise disjoint Galois-stable
// subsets of X(F_qbar) with |A_i| = sizes[i]: a dynamic program placing
// distinct degree-j closed points into blocks with falling-factorial
// multinomial weights. Zero sizes are allowed and act as empty blocks.
BigInt w_lambda_count(const Space& space, const std::vector<uint32_t>& sizes,
                      const BigInt& q);

// The dynamic-program core behind w_lambda_count: the number of ways to
// fill blocks of the given sizes exactly, drawing from avail[j-1] distinct
// points of degree j (a point contributes its degree to its block's size).
BigInt count_block_fillings(const std::vector<BigInt>& avail,
                            const std::vector<uint32_t>& sizes);

// The unique integer polynomial in L of degree <= degree_bound through the
// (q, count) values. Needs degree_bound + 2 values at distinct prime powers
// (one interpolates, the rest are held out and re-checked); any held-out
// mismatch or fractional coefficient raises NonPolynomial.
LPoly interpolate_class(std::vector<std::pair<BigInt, BigInt>> values,
                        uint32_t degree_bound);

// sum over compositions c of k of (-1)^parts(c) * multiplicity(c) *
// w_lambda_count(space, c, q). k <= 10; k = 0 gives 1.
BigInt alternating_lambda_sum(const Space& space, uint32_t k, const BigInt& q);
// The same sum as an interpolated polynomial class in L.
LPoly alternating_lambda_class(const Space& space, uint32_t k);

// Both sides of the counting identity sum_k w_k(X)(F_q) t^k =
// Z_X(t) / Z_X(t^2) through degree kmax, computed by independent pipelines
// (left: census product; right: zeta coefficients from raw point counts).
struct ZetaIdentityReport {
    Space space;
    BigInt q;
    uint32_t kmax = 0;
    std::vector<BigInt> w_counts;     // left side, k = 0..kmax
    std::vector<BigInt> ratio_coeffs; // right side, k = 0..kmax
    bool ok = false;
    uint32_t first_mismatch = 0; // meaningful only when !ok
};
ZetaIdentityReport config_zeta_identity_check(const Space& space, uint32_t kmax,
                                              const BigInt& q); // kmax <= 12

// Minimal m >= 0 with max(2m - ed, 0) + (n-1) * max(m - ed, 0) - kconst >= l.
// The displayed bound grows without limit, so the scan terminates.
uint64_t psi(uint32_t n, uint32_t e, uint32_t d, int64_t l, int64_t kconst = 0);

struct PsiTable {
    uint32_t n = 0, e = 0, d = 0;
    int64_t kconst = 0;
    std::vector<uint64_t> values; // psi(n, e, d, l) for l = 0..lmax
    uint64_t value(int64_t l) const;
};
PsiTable psi_table(uint32_t n, uint32_t e, uint32_t d, int64_t lmax,
                   int64_t kconst = 0);

} // namespace cbws

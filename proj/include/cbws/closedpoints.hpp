#pragma once

#include "cbws/field.hpp"
#include "cbws/smallfq.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace cbws {

// One degree stratum of the closed points of P^n over F_q: the points whose
// residue field is exactly F_{q^degree}, one representative per Frobenius
// orbit. Coordinates are element codes of `field` (= F_{q^degree}),
// normalized so that the first nonzero coordinate is 1 and everything before
// it is 0. The stored representative is the lexicographically least
// coordinate-code vector in its orbit under x -> x^q.
struct ClosedPointStratum {
    uint32_t degree = 1;
    FieldCtxPtr field;                       // F_{q^degree}
    std::shared_ptr<const SmallFq> fq;       // table arithmetic for `field`
    std::vector<std::vector<uint32_t>> reps; // n+1 codes per point
};

// All closed points of P^n over F_q of degree <= jmax, stratified by degree.
// Within a stratum, representatives appear in the scan order: pivot position
// ascending, then free coordinates in ascending code-lexicographic order, so
// every run of every binary lists the same points in the same order.
struct ClosedPointSet {
    FieldCtxPtr base; // F_q
    uint32_t n = 0;
    uint32_t jmax = 0;
    std::vector<ClosedPointStratum> strata; // strata[j-1] holds degree j

    const ClosedPointStratum& stratum(uint32_t j) const; // 1 <= j <= jmax
};

// Enumerate the closed points of P^n over the (finite) base field, degree by
// degree up to jmax. Capacity limits: the top extension F_{q^jmax} must stay
// within the table-arithmetic range (order <= 2^16) and the tower cap
// (base.k * jmax <= kMaxExtensionDegree), and the total number of projective
// points scanned across all strata must fit a desk-scale budget (2^26).
ClosedPointSet enumerate_closed_points(const FieldCtxPtr& base, uint32_t n, uint32_t jmax);

} // namespace cbws

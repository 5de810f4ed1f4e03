#pragma once

#include "cbws/jets.hpp"
#include "cbws/matrix.hpp"
#include "cbws/monomial.hpp"
#include "cbws/points.hpp"
#include "cbws/projection.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cbws {

// Verdict of the Cayley-Bacharach test for O(d): Z is CB when every degree-d
// form vanishing on all but one point of Z vanishes on all of Z. A negative
// verdict carries a witness (p, f) with f zero on Z minus p and f(p) != 0;
// the factory re-checks the witness, so a constructed verdict is trustworthy.
struct CBVerdict {
    bool is_cb;
    std::optional<ProjPoint> witness_point;
    std::optional<HomForm> witness_form;

    static CBVerdict yes();
    // Validates the witness against Z; throws internal-invariant on mismatch.
    static CBVerdict no(const PointSet& Z, const ProjPoint& p, const HomForm& f);
};

// Evidence that a point set lies on a low-degree curve. Three shapes:
//   - plane-form: one plane curve {f = 0} in P^2;
//   - cone-pair: two cones with distinct apexes over curves in a common
//     hyperplane; the curve is inside their intersection, whose total degree
//     is bounded by the product of the cone degrees (claimed_degree);
//   - union: a list of component certificates; a point belongs when some
//     component contains it, and claimed_degree adds up over components.
// Factories verify that every point of contained_subset satisfies the
// certificate exactly and throw internal-invariant otherwise.
class CurveCertificate {
public:
    enum class Kind { PlaneForm, ConePair, Union };

    static CurveCertificate plane_form(HomForm f, PointSet contained);
    static CurveCertificate cone_pair(Cone a, Cone b, PointSet contained);
    static CurveCertificate union_of(std::vector<CurveCertificate> parts,
                                     PointSet contained);

    Kind kind() const { return kind_; }
    uint32_t claimed_degree() const { return claimed_degree_; }
    const PointSet& contained_subset() const { return contained_; }
    const std::vector<HomForm>& forms() const { return forms_; }
    const std::vector<Cone>& cones() const { return cones_; }
    const std::vector<CurveCertificate>& parts() const { return parts_; }

    // Exact membership test for the locus this certificate describes.
    bool contains(const ProjPoint& p) const;

    std::string describe() const;

private:
    CurveCertificate(Kind kind, uint32_t claimed, PointSet contained);
    void verify_contained() const;

    Kind kind_;
    uint32_t claimed_degree_;
    PointSet contained_;
    std::vector<HomForm> forms_;
    std::vector<Cone> cones_;
    std::vector<CurveCertificate> parts_;
};

// Rank criterion: Z is CB for O(d) iff removing any single point leaves the
// rank of the evaluation matrix unchanged. Requires |Z| >= 2 and d >= 1.
CBVerdict is_cayley_bacharach(const PointSet& Z, uint32_t d);

// Descent to a minimal CB subset: none when degree-d forms already separate
// the points (full rank); otherwise repeatedly drop any point whose removal
// keeps the restriction map non-surjective. The surviving set is CB for O(d).
std::optional<PointSet> minimal_cb_subset(const PointSet& Z, uint32_t d);

// Double-point defect to half-degree CB core: none when h1_ideal_sq(Z,d) = 0;
// otherwise asserts h1_ideal(Z, ceil(d/2)) != 0 and descends to a minimal CB
// subset for O(ceil(d/2)). The assertion is a published implication that is
// sharp: on boundary instances (a collinear set of exactly ceil(d/2)+1
// points) it fails, and this function then throws theorem-violation with the
// full instance in the message rather than returning a wrong core.
std::optional<PointSet> half_degree_cb(const PointSet& Z, uint32_t d);

// Kernel of the degree-e evaluation map for plane sets (ambient n = 2):
// all degree-e curves through Z, as a canonical basis.
std::vector<HomForm> plane_curves_through(const PointSet& Z, uint32_t e);

// Smallest e >= 1 with a nonzero degree-e curve through Z (ambient n = 2).
uint32_t min_plane_curve_degree(const PointSet& Z);

// Curve search by projection, for ambient n >= 3 and |Z| >= 2: draw two
// centers off every secant line of Z (seeded, at most 64 draws each, else
// insufficient-field), pick a hyperplane avoiding both, project, recurse
// (plane sets use the kernel search), and return the pair of cones over the
// projected curves. None when no curve of degree <= e_max is found. Every
// returned certificate has been membership-checked against Z.
std::optional<CurveCertificate> find_curve_cone_projection(const PointSet& Z,
                                                           uint32_t e_max,
                                                           uint64_t seed = 0);

// Result of the decomposition loop: a curve certificate, the subset Z' of Z
// on the curve, and the common double-point defect l = h1_ideal_sq(Z, d)
// = h1_ideal_sq(Z', d).
struct CurveDecomposition {
    CurveCertificate certificate;
    PointSet z_prime;
    size_t defect;
};

// Decomposes a double-point defect along a low-degree curve: none when
// h1_ideal_sq(Z, d) = 0; otherwise extract a half-degree CB core, find a
// curve of degree <= e_max through it, intersect, and augment the curve from
// the residual set (whose neighborhood defect reappears at degree d minus
// twice the accumulated degree) until the defect of Z' matches the defect of
// Z. Requires d >= ratio * e_max (default ratio 10); the loop is bounded by
// |Z| iterations (internal-invariant beyond that, since each augmentation
// strictly grows Z').
std::optional<CurveDecomposition> contcurve_decompose(const PointSet& Z,
                                                      uint32_t d,
                                                      uint32_t e_max,
                                                      uint64_t seed = 0,
                                                      uint32_t ratio = 10);

// Size-bound test: hypothesis = (Z is CB for O(d) and |Z| < e(d-e+3)-1);
// conclusion = Z lies on a curve of degree < e. Plane sets are decided
// exactly (definitive); higher ambient dimension reports partial evidence
// from the cone search, since membership in a cone intersection does not by
// itself isolate the curve component. conclusion and found_degree are only
// meaningful when the hypothesis holds (except n = 2, where the exact search
// always runs).
struct PicocoVerdict {
    bool hypothesis = false;
    bool conclusion = false;
    bool vacuous = true;
    bool definitive = false;
    uint32_t size_bound = 0; // e(d-e+3)-1
    std::optional<uint32_t> found_degree;
};
PicocoVerdict picoco_check(const PointSet& Z, uint32_t d, uint32_t e,
                           uint64_t seed = 0);

// Union-of-linear-subspaces test: hypothesis = (Z is CB for O(d) and
// |Z| <= (e+1)d+1); conclusion = Z is covered by groups whose spans have
// total dimension <= e, where each group costs max(1, hull dimension) --
// single points still need a positive-dimensional subspace through them.
// The minimum is found by exact branch-and-bound over set partitions;
// requires |Z| <= 14 (search-budget error beyond). min_cost is filled only
// when the hypothesis holds.
struct LuVerdict {
    bool hypothesis = false;
    bool conclusion = false;
    bool vacuous = true;
    uint32_t size_bound = 0; // (e+1)d+1
    uint32_t min_cost = 0;
};
LuVerdict lu_check(const PointSet& Z, uint32_t d, uint32_t e);

// The partition minimum used by lu_check: min over set partitions of Z of
// the sum of max(1, span dimension) per block. Exact; |Z| <= 14.
uint32_t min_partition_cost(const PointSet& Z);

// Randomized probe of the two conjectural implications in regimes where the
// degree is NOT large relative to e. Three instance generators:
//   - on_curves: random points on unions of low-degree plane curves
//     (lines in higher ambient dimension);
//   - intersections: complete intersections of two plane curves with every
//     intersection point rational, found by pencil search (n = 2 only);
//   - random_closure: random point sets descended to a minimal CB core.
// Every CB instance runs through picoco_check and lu_check. Deterministic
// under (config, seed): trial t draws everything from its own derived
// stream, so reports are identical regardless of worker count.
struct HuntConfig {
    uint32_t n = 2;
    uint64_t p = 11; // field: prime p, extension degree k
    uint32_t k = 1;
    uint32_t d_min = 3, d_max = 8;
    uint32_t e_min = 1, e_max = 3;
    uint64_t trials = 100;
    bool on_curves = true;
    bool intersections = true;
    bool random_closure = true;
    uint32_t max_points = 12; // clamped to 14 (partition-search budget)
};

// A conclusion failure, dumped with enough context to re-verify offline:
// parse the instance, re-run the named check at (d, e), compare.
struct HuntCandidate {
    uint64_t trial = 0;
    std::string check;    // "picoco" or "lu"
    uint32_t d = 0, e = 0;
    bool definitive = false; // exact search vs partial cone evidence
    std::string instance; // serialized point set
};

struct HuntReport {
    uint64_t seed = 0;
    uint64_t trials = 0;
    uint64_t vacuous = 0;              // no instance, or both hypotheses false
    uint64_t hypothesis_satisfied = 0; // some check had a true hypothesis
    uint64_t conclusion_verified = 0;  // ... and every such conclusion held
    std::vector<HuntCandidate> candidates;

    // vacuous + hypothesis_satisfied == trials,
    // conclusion_verified + candidate trials == hypothesis_satisfied.
    void check_invariants() const;
    std::string to_string() const; // deterministic byte-for-byte
};

HuntReport conjecture_hunt(const HuntConfig& config, uint64_t seed);

} // namespace cbws

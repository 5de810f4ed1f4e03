#include "cbws/cb.hpp"

#include "cbws/error.hpp"
#include "cbws/parallel.hpp"
#include "cbws/rng.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <unordered_map>
#include <utility>

namespace cbws {

namespace {

bool vanishes_at(const HomForm& f, const ProjPoint& p) {
    return f.evaluate(p.coords()).is_zero();
}

HomForm linear_form(const FieldCtxPtr& ctx, uint32_t n,
                    std::vector<FieldScalar> coeffs) {
    return HomForm::from_coeffs(ctx, n, 1, std::move(coeffs));
}

} // namespace

// ------------------------------------------------------------- CBVerdict

CBVerdict CBVerdict::yes() { return CBVerdict{true, std::nullopt, std::nullopt}; }

CBVerdict CBVerdict::no(const PointSet& Z, const ProjPoint& p, const HomForm& f) {
    bool seen = false;
    for (size_t i = 0; i < Z.size(); ++i) {
        const bool is_p = (Z[i] == p);
        seen = seen || is_p;
        const bool zero = vanishes_at(f, Z[i]);
        if (is_p && zero)
            fail(Error::Code::InternalInvariant,
                 "witness form vanishes at the point it should separate");
        if (!is_p && !zero)
            fail(Error::Code::InternalInvariant,
                 "witness form fails to vanish away from the separated point");
    }
    if (!seen)
        fail(Error::Code::InternalInvariant, "witness point is not in the set");
    return CBVerdict{false, p, f};
}

// ---------------------------------------------------- CurveCertificate

CurveCertificate::CurveCertificate(Kind kind, uint32_t claimed, PointSet contained)
    : kind_(kind), claimed_degree_(claimed), contained_(std::move(contained)) {}

CurveCertificate CurveCertificate::plane_form(HomForm f, PointSet contained) {
    if (f.is_zero())
        fail(Error::Code::Precondition, "certificate form must be nonzero");
    if (contained.n() != 2 || f.n() != 2)
        fail(Error::Code::Precondition,
             "plane-form certificates live in ambient dimension 2");
    if (f.ctx() != contained.ctx())
        fail(Error::Code::ContextMismatch,
             "certificate form and points use different fields");
    CurveCertificate c(Kind::PlaneForm, f.d(), std::move(contained));
    c.forms_.push_back(std::move(f));
    c.verify_contained();
    return c;
}

CurveCertificate CurveCertificate::cone_pair(Cone a, Cone b, PointSet contained) {
    const uint32_t claimed = cone_intersect_degree(a, b);
    if (a.pulled_back_form.ctx() != contained.ctx())
        fail(Error::Code::ContextMismatch,
             "certificate cones and points use different fields");
    if (a.pulled_back_form.n() != contained.n())
        fail(Error::Code::Precondition,
             "certificate cones and points have different ambient dimension");
    CurveCertificate c(Kind::ConePair, claimed, std::move(contained));
    c.forms_.push_back(a.pulled_back_form);
    c.forms_.push_back(b.pulled_back_form);
    c.cones_.push_back(std::move(a));
    c.cones_.push_back(std::move(b));
    c.verify_contained();
    return c;
}

CurveCertificate CurveCertificate::union_of(std::vector<CurveCertificate> parts,
                                            PointSet contained) {
    if (parts.empty())
        fail(Error::Code::Precondition, "union certificate needs at least one part");
    uint32_t claimed = 0;
    for (const auto& part : parts) {
        if (part.contained_subset().ctx() != contained.ctx())
            fail(Error::Code::ContextMismatch,
                 "union parts and points use different fields");
        if (part.contained_subset().n() != contained.n())
            fail(Error::Code::Precondition,
                 "union parts and points have different ambient dimension");
        claimed += part.claimed_degree();
    }
    CurveCertificate c(Kind::Union, claimed, std::move(contained));
    c.parts_ = std::move(parts);
    c.verify_contained();
    return c;
}

bool CurveCertificate::contains(const ProjPoint& p) const {
    switch (kind_) {
    case Kind::PlaneForm:
        return vanishes_at(forms_[0], p);
    case Kind::ConePair:
        return vanishes_at(forms_[0], p) && vanishes_at(forms_[1], p);
    case Kind::Union:
        for (const auto& part : parts_)
            if (part.contains(p)) return true;
        return false;
    }
    return false;
}

void CurveCertificate::verify_contained() const {
    for (size_t i = 0; i < contained_.size(); ++i) {
        if (!contains(contained_[i]))
            fail(Error::Code::InternalInvariant,
                 "certificate fails membership at point " + contained_[i].to_string());
    }
}

std::string CurveCertificate::describe() const {
    std::ostringstream os;
    switch (kind_) {
    case Kind::PlaneForm:
        os << "plane-form degree=" << claimed_degree_
           << " points=" << contained_.size()
           << " form=" << forms_[0].to_string();
        break;
    case Kind::ConePair:
        os << "cone-pair degree=" << claimed_degree_
           << " points=" << contained_.size()
           << " apex1=" << cones_[0].apex.to_string()
           << " base1-degree=" << cones_[0].degree()
           << " apex2=" << cones_[1].apex.to_string()
           << " base2-degree=" << cones_[1].degree();
        break;
    case Kind::Union:
        os << "union degree=" << claimed_degree_
           << " points=" << contained_.size()
           << " parts=" << parts_.size();
        for (const auto& part : parts_)
            os << "\n  " << part.describe();
        break;
    }
    return os.str();
}

// ------------------------------------------------------- CB decision

CBVerdict is_cayley_bacharach(const PointSet& Z, uint32_t d) {
    if (Z.size() < 2)
        fail(Error::Code::Precondition,
             "the Cayley-Bacharach test needs at least two points");
    if (d < 1)
        fail(Error::Code::Precondition,
             "the Cayley-Bacharach test needs degree >= 1");
    const size_t full_rank = evaluation_matrix(Z, d).rank();
    for (size_t i = 0; i < Z.size(); ++i) {
        const PointSet rest = Z.without(i);
        const Matrix m = evaluation_matrix(rest, d);
        if (m.rank() == full_rank) continue;
        // Rank dropped: some degree-d form vanishes on the rest but not at
        // Z[i]; one of the kernel basis vectors must expose it.
        for (auto& v : m.kernel_basis()) {
            HomForm f = HomForm::from_coeffs(Z.ctx(), Z.n(), d, std::move(v));
            if (!vanishes_at(f, Z[i]))
                return CBVerdict::no(Z, Z[i], std::move(f));
        }
        fail(Error::Code::InternalInvariant,
             "evaluation rank dropped on removal but no kernel form separates");
    }
    return CBVerdict::yes();
}

std::optional<PointSet> minimal_cb_subset(const PointSet& Z, uint32_t d) {
    if (Z.empty()) return std::nullopt;
    PointSet W = Z;
    if (evaluation_matrix(W, d).rank() == W.size()) return std::nullopt;
    // Descent: drop the first point whose removal keeps the restriction map
    // non-surjective; restart the scan after every removal. At the fixed
    // point every single removal restores surjectivity, which forces the
    // evaluation rank to be exactly |W| - 1 with or without any one point:
    // the Cayley-Bacharach condition.
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < W.size(); ++i) {
            PointSet cand = W.without(i);
            if (cand.empty()) continue;
            if (evaluation_matrix(cand, d).rank() < cand.size()) {
                W = std::move(cand);
                changed = true;
                break;
            }
        }
    }
    return W;
}

std::optional<PointSet> half_degree_cb(const PointSet& Z, uint32_t d) {
    if (d < 2)
        fail(Error::Code::Precondition,
             "half-degree core extraction needs degree >= 2");
    if (h1_ideal_sq(Z, d) == 0) return std::nullopt;
    const uint32_t half = (d + 1) / 2;
    if (h1_ideal(Z, half) == 0)
        fail(Error::Code::TheoremViolation,
             "double-point defect at degree " + std::to_string(d) +
                 " with no ideal defect at degree " + std::to_string(half) +
                 "; offending instance:\n" + Z.serialize());
    return minimal_cb_subset(Z, half);
}

// ------------------------------------------------------ plane curves

std::vector<HomForm> plane_curves_through(const PointSet& Z, uint32_t e) {
    if (Z.n() != 2)
        fail(Error::Code::Precondition,
             "plane curve search needs ambient dimension 2");
    if (e < 1)
        fail(Error::Code::Precondition, "plane curve search needs degree >= 1");
    const Matrix m = evaluation_matrix(Z, e);
    std::vector<HomForm> out;
    for (auto& v : m.kernel_basis())
        out.push_back(HomForm::from_coeffs(Z.ctx(), 2, e, std::move(v)));
    return out;
}

uint32_t min_plane_curve_degree(const PointSet& Z) {
    if (Z.n() != 2)
        fail(Error::Code::Precondition,
             "plane curve search needs ambient dimension 2");
    if (Z.empty())
        fail(Error::Code::Precondition, "plane curve search needs points");
    for (uint32_t e = 1; e <= kMaxFormDegree; ++e) {
        const size_t monomials = static_cast<size_t>(e + 1) * (e + 2) / 2;
        if (evaluation_matrix(Z, e).rank() < monomials) return e;
    }
    fail(Error::Code::Capacity, "plane curve degree exceeds the form-degree cap");
}

// -------------------------------------------------- cone curve search

namespace {

FieldScalar random_scalar(const FieldCtxPtr& ctx, Rng& rng) {
    if (ctx->is_finite()) {
        uint64_t q = 0;
        if (ctx->order_fits_u64(q) && q >= 2) return ctx->from_code(rng.below(q));
        // Field order beyond 64 bits: prime-subfield samples are generic
        // enough for center/hyperplane avoidance.
        return ctx->from_int(static_cast<long>(rng.below(1u << 30)));
    }
    return ctx->from_int(static_cast<long>(rng.range(0, 18)) - 9);
}

ProjPoint random_proj_point(const FieldCtxPtr& ctx, uint32_t n, Rng& rng) {
    for (;;) {
        std::vector<FieldScalar> coords;
        coords.reserve(n + 1);
        bool all_zero = true;
        for (uint32_t i = 0; i <= n; ++i) {
            coords.push_back(random_scalar(ctx, rng));
            all_zero = all_zero && coords.back().is_zero();
        }
        if (!all_zero) return ProjPoint(std::move(coords));
    }
}

bool on_some_secant(const ProjPoint& P, const PointSet& Z) {
    for (size_t i = 0; i < Z.size(); ++i) {
        for (size_t j = i + 1; j < Z.size(); ++j) {
            const Matrix m = Matrix::from_rows(
                {Z[i].coords(), Z[j].coords(), P.coords()});
            if (m.rank() <= 2) return true;
        }
    }
    return false;
}

ProjPoint draw_center(const PointSet& Z, Rng& rng,
                      const std::vector<ProjPoint>& avoid) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        ProjPoint P = random_proj_point(Z.ctx(), Z.n(), rng);
        if (Z.contains(P)) continue;
        bool clashes = false;
        for (const auto& a : avoid) clashes = clashes || (P == a);
        if (clashes) continue;
        if (on_some_secant(P, Z)) continue;
        return P;
    }
    fail(Error::Code::InsufficientField,
         "no projection center off every secant line after 64 draws; "
         "extend the base field and lift the points");
}

HomForm pick_hyperplane(const FieldCtxPtr& ctx, uint32_t n, const ProjPoint& P1,
                        const ProjPoint& P2, Rng& rng) {
    // Coordinate hyperplanes first: x_m with both centers off it.
    for (uint32_t m = 0; m <= n; ++m) {
        if (!P1.coord(m).is_zero() && !P2.coord(m).is_zero()) {
            std::vector<FieldScalar> coeffs(n + 1, ctx->zero());
            coeffs[m] = ctx->one();
            return linear_form(ctx, n, std::move(coeffs));
        }
    }
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<FieldScalar> coeffs;
        coeffs.reserve(n + 1);
        bool all_zero = true;
        for (uint32_t i = 0; i <= n; ++i) {
            coeffs.push_back(random_scalar(ctx, rng));
            all_zero = all_zero && coeffs.back().is_zero();
        }
        if (all_zero) continue;
        HomForm H = linear_form(ctx, n, std::move(coeffs));
        if (!vanishes_at(H, P1) && !vanishes_at(H, P2)) return H;
    }
    fail(Error::Code::InsufficientField,
         "no hyperplane avoiding both projection centers after 64 draws; "
         "extend the base field and lift the points");
}

// The form cutting the cone base out of the recursive certificate: the plane
// form itself at the bottom, otherwise the lower-degree of the pair of
// pulled-back cone forms (either one contains the recursive curve).
const HomForm& base_form_of(const CurveCertificate& c) {
    if (c.kind() == CurveCertificate::Kind::PlaneForm) return c.forms()[0];
    if (c.kind() != CurveCertificate::Kind::ConePair)
        fail(Error::Code::InternalInvariant,
             "cone recursion produced an unexpected certificate shape");
    const auto& fs = c.forms();
    return fs[0].d() <= fs[1].d() ? fs[0] : fs[1];
}

std::optional<CurveCertificate> find_curve_rec(const PointSet& Z, uint32_t e_max,
                                               Rng& rng) {
    if (Z.n() == 2) {
        const uint32_t e0 = min_plane_curve_degree(Z);
        if (e0 > e_max) return std::nullopt;
        return CurveCertificate::plane_form(plane_curves_through(Z, e0)[0], Z);
    }
    const ProjPoint P1 = draw_center(Z, rng, {});
    const ProjPoint P2 = draw_center(Z, rng, {P1});
    const HomForm H = pick_hyperplane(Z.ctx(), Z.n(), P1, P2, rng);
    const PointSet Z1 = linear_project(Z, P1, H);
    const PointSet Z2 = linear_project(Z, P2, H);
    auto c1 = find_curve_rec(Z1, e_max, rng);
    if (!c1) return std::nullopt;
    auto c2 = find_curve_rec(Z2, e_max, rng);
    if (!c2) return std::nullopt;
    Cone a = cone_build(P1, H, base_form_of(*c1));
    Cone b = cone_build(P2, H, base_form_of(*c2));
    return CurveCertificate::cone_pair(std::move(a), std::move(b), Z);
}

} // namespace

std::optional<CurveCertificate> find_curve_cone_projection(const PointSet& Z,
                                                           uint32_t e_max,
                                                           uint64_t seed) {
    if (Z.n() < 3)
        fail(Error::Code::Precondition,
             "cone curve search needs ambient dimension >= 3");
    if (Z.size() < 2)
        fail(Error::Code::Precondition, "cone curve search needs at least two points");
    if (e_max < 1)
        fail(Error::Code::Precondition, "cone curve search needs e_max >= 1");
    Rng rng = derive_stream(seed, "curve-search");
    return find_curve_rec(Z, e_max, rng);
}

// -------------------------------------------------- curve decomposition

namespace {

// A curve of degree <= e_max through the core, as a certificate whose
// contained subset is the core itself.
CurveCertificate curve_through_core(const PointSet& core, uint32_t e_max,
                                    uint64_t seed, uint64_t salt) {
    if (core.n() == 2) {
        const uint32_t e0 = min_plane_curve_degree(core);
        if (e0 > e_max)
            fail(Error::Code::SearchBudget,
                 "no plane curve within the degree cap through the extracted core; "
                 "raise the cap");
        return CurveCertificate::plane_form(plane_curves_through(core, e0)[0], core);
    }
    auto cert = find_curve_cone_projection(core, e_max,
                                           derive_stream(seed, "decompose", salt).next());
    if (!cert)
        fail(Error::Code::SearchBudget,
             "no cone-pair curve within the degree cap through the extracted core; "
             "raise the cap");
    return *cert;
}

CurveCertificate with_contained(const CurveCertificate& c, PointSet contained) {
    switch (c.kind()) {
    case CurveCertificate::Kind::PlaneForm:
        return CurveCertificate::plane_form(c.forms()[0], std::move(contained));
    case CurveCertificate::Kind::ConePair:
        return CurveCertificate::cone_pair(c.cones()[0], c.cones()[1],
                                           std::move(contained));
    case CurveCertificate::Kind::Union:
        return CurveCertificate::union_of(c.parts(), std::move(contained));
    }
    fail(Error::Code::InternalInvariant, "unknown certificate kind");
}

} // namespace

std::optional<CurveDecomposition> contcurve_decompose(const PointSet& Z, uint32_t d,
                                                      uint32_t e_max, uint64_t seed,
                                                      uint32_t ratio) {
    if (e_max < 1)
        fail(Error::Code::Precondition, "curve decomposition needs e_max >= 1");
    if (ratio < 1)
        fail(Error::Code::Precondition, "curve decomposition needs ratio >= 1");
    if (d < ratio * e_max)
        fail(Error::Code::Precondition,
             "degree too small for the curve cap: need d >= " +
                 std::to_string(ratio * e_max));
    if (Z.n() < 2)
        fail(Error::Code::Precondition,
             "curve decomposition needs ambient dimension >= 2");
    const size_t defect = h1_ideal_sq(Z, d);
    if (defect == 0) return std::nullopt;

    std::vector<CurveCertificate> parts;
    auto core0 = half_degree_cb(Z, d);
    parts.push_back(curve_through_core(*core0, e_max, seed, 0));
    uint32_t e_acc = parts.back().claimed_degree();

    for (size_t iter = 0;; ++iter) {
        if (iter > Z.size())
            fail(Error::Code::InternalInvariant,
                 "curve decomposition failed to converge within the point count");
        PointSet on_curve(Z.ctx(), Z.n());
        PointSet residual(Z.ctx(), Z.n());
        for (size_t i = 0; i < Z.size(); ++i) {
            bool member = false;
            for (const auto& part : parts) member = member || part.contains(Z[i]);
            (member ? on_curve : residual).add(Z[i]);
        }
        if (!on_curve.empty() && h1_ideal_sq(on_curve, d) == defect) {
            CurveCertificate cert =
                parts.size() == 1
                    ? with_contained(parts[0], on_curve)
                    : CurveCertificate::union_of(std::move(parts), on_curve);
            return CurveDecomposition{std::move(cert), std::move(on_curve), defect};
        }
        if (residual.empty())
            fail(Error::Code::InternalInvariant,
                 "defect mismatch with no residual points left");
        if (2 * e_acc + 2 > d)
            fail(Error::Code::SearchBudget,
                 "degree budget exhausted while augmenting the curve; "
                 "the degree is too small for this decomposition");
        const uint32_t d_res = d - 2 * e_acc;
        if (h1_ideal_sq(residual, d_res) == 0)
            fail(Error::Code::TheoremViolation,
                 "residual set lost its neighborhood defect at degree " +
                     std::to_string(d_res) + "; offending instance:\n" +
                     residual.serialize());
        auto core = half_degree_cb(residual, d_res);
        parts.push_back(curve_through_core(*core, e_max, seed, iter + 1));
        e_acc += parts.back().claimed_degree();
    }
}

// ------------------------------------------------------ verdict checks

PicocoVerdict picoco_check(const PointSet& Z, uint32_t d, uint32_t e,
                           uint64_t seed) {
    if (Z.size() < 2)
        fail(Error::Code::Precondition, "size-bound check needs at least two points");
    if (d < 1 || e < 1)
        fail(Error::Code::Precondition, "size-bound check needs d >= 1 and e >= 1");
    PicocoVerdict v;
    const int64_t bound =
        static_cast<int64_t>(e) * (static_cast<int64_t>(d) - e + 3) - 1;
    v.size_bound = bound > 0 ? static_cast<uint32_t>(bound) : 0;
    const bool cb = is_cayley_bacharach(Z, d).is_cb;
    v.hypothesis = cb && static_cast<int64_t>(Z.size()) < bound;
    v.vacuous = !v.hypothesis;
    if (Z.n() == 2) {
        v.definitive = true;
        const uint32_t e0 = min_plane_curve_degree(Z);
        v.found_degree = e0;
        v.conclusion = e0 < e;
    } else if (v.hypothesis && e >= 2) {
        auto cert = find_curve_cone_projection(Z, e - 1, seed);
        if (cert) {
            v.conclusion = true;
            v.found_degree = cert->claimed_degree();
        }
    }
    return v;
}

// Exact minimum of sum(max(1, hull_dim(group))) over partitions of Z, by
// branch-and-bound on point-by-point assignment. Group costs only grow as
// points join, so any partial assignment already at the best known cost is
// pruned; the one-group partition seeds that bound (at most the ambient
// dimension), which keeps the search shallow.
uint32_t min_partition_cost(const PointSet& Z) {
    if (Z.size() > 14)
        fail(Error::Code::SearchBudget,
             "the exact partition search is capped at 14 points");
    if (Z.size() == 0)
        fail(Error::Code::Precondition,
             "partition cost needs a nonempty point set");
    const size_t m = Z.size();
    std::unordered_map<uint32_t, uint32_t> cost_memo;
    auto group_cost = [&](uint32_t mask) -> uint32_t {
        auto it = cost_memo.find(mask);
        if (it != cost_memo.end()) return it->second;
        std::vector<std::vector<FieldScalar>> rows;
        for (size_t i = 0; i < m; ++i)
            if (mask & (1u << i)) rows.push_back(Z[i].coords());
        const size_t rank = Matrix::from_rows(rows).rank();
        const uint32_t cost = std::max<uint32_t>(1, static_cast<uint32_t>(rank) - 1);
        cost_memo.emplace(mask, cost);
        return cost;
    };

    uint32_t best = group_cost((m >= 32 ? 0xffffffffu : (1u << m) - 1));
    std::vector<uint32_t> groups;
    std::vector<uint32_t> costs;
    uint32_t running = 0;

    auto rec = [&](auto&& self, size_t idx) -> void {
        if (running >= best) return;
        if (idx == m) {
            best = running;
            return;
        }
        const uint32_t bit = 1u << idx;
        for (size_t g = 0; g < groups.size(); ++g) {
            const uint32_t new_cost = group_cost(groups[g] | bit);
            const uint32_t delta = new_cost - costs[g];
            if (running + delta >= best) continue;
            const uint32_t old_mask = groups[g];
            const uint32_t old_cost = costs[g];
            groups[g] |= bit;
            costs[g] = new_cost;
            running += delta;
            self(self, idx + 1);
            groups[g] = old_mask;
            costs[g] = old_cost;
            running -= delta;
        }
        if (running + 1 < best) {
            groups.push_back(bit);
            costs.push_back(1);
            running += 1;
            self(self, idx + 1);
            groups.pop_back();
            costs.pop_back();
            running -= 1;
        }
    };
    rec(rec, 0);
    return best;
}

LuVerdict lu_check(const PointSet& Z, uint32_t d, uint32_t e) {
    if (Z.size() > 14)
        fail(Error::Code::SearchBudget,
             "the exact partition search is capped at 14 points");
    if (Z.size() < 2)
        fail(Error::Code::Precondition,
             "union-of-subspaces check needs at least two points");
    if (d < 1 || e < 1)
        fail(Error::Code::Precondition,
             "union-of-subspaces check needs d >= 1 and e >= 1");
    LuVerdict v;
    v.size_bound = (e + 1) * d + 1;
    const bool cb = is_cayley_bacharach(Z, d).is_cb;
    v.hypothesis = cb && Z.size() <= v.size_bound;
    v.vacuous = !v.hypothesis;
    if (!v.hypothesis) return v;
    v.min_cost = min_partition_cost(Z);
    v.conclusion = v.min_cost <= e;
    return v;
}

// ------------------------------------------------------------- hunting

namespace {

constexpr uint64_t kEnumerationCap = 1024; // largest field order we scan fully

// All points of P^n(F_q) in a fixed order: for each pivot position, the
// points with leading 1 there and free coordinates after it.
std::vector<ProjPoint> enumerate_proj_points(const FieldCtxPtr& ctx, uint32_t n,
                                             uint64_t q) {
    std::vector<ProjPoint> out;
    for (uint32_t pivot = 0; pivot <= n; ++pivot) {
        const uint32_t free = n - pivot;
        uint64_t total = 1;
        for (uint32_t i = 0; i < free; ++i) total *= q;
        for (uint64_t code = 0; code < total; ++code) {
            std::vector<FieldScalar> coords(n + 1, ctx->zero());
            coords[pivot] = ctx->one();
            uint64_t rest = code;
            for (uint32_t i = pivot + 1; i <= n; ++i) {
                coords[i] = ctx->from_code(rest % q);
                rest /= q;
            }
            out.emplace_back(std::move(coords));
        }
    }
    return out;
}

void add_if_new(PointSet& set, const ProjPoint& p, uint32_t cap) {
    if (set.size() >= cap) return;
    if (!set.contains(p)) set.add(p);
}

// Points on the line through two distinct points: A + t*B for sampled t,
// plus B itself.
void sample_line_points(PointSet& into, const ProjPoint& A, const ProjPoint& B,
                        uint32_t want, Rng& rng, uint32_t cap) {
    const FieldCtxPtr& ctx = into.ctx();
    add_if_new(into, A, cap);
    add_if_new(into, B, cap);
    for (uint32_t s = 0; s < 4 * want + 8; ++s) {
        const FieldScalar t = random_scalar(ctx, rng);
        std::vector<FieldScalar> coords;
        coords.reserve(A.coords().size());
        for (size_t i = 0; i < A.coords().size(); ++i)
            coords.push_back(A.coord(i) + t * B.coord(i));
        add_if_new(into, ProjPoint(std::move(coords)), cap);
        if (into.size() >= cap || into.size() >= want) return;
    }
}

std::optional<PointSet> gen_on_curves(const FieldCtxPtr& ctx, uint32_t n,
                                      Rng& rng, uint32_t max_points) {
    const uint32_t comps = 1 + static_cast<uint32_t>(rng.below(2));
    PointSet pool(ctx, n);
    uint64_t q = 0;
    const bool small_field = ctx->is_finite() && ctx->order_fits_u64(q) &&
                             q <= kEnumerationCap;
    for (uint32_t c = 0; c < comps; ++c) {
        const uint32_t want =
            std::min<uint32_t>(max_points, 2 + static_cast<uint32_t>(rng.below(
                                                   max_points)));
        if (n == 2 && small_field && rng.below(2) == 0) {
            // A conic through 5 random points, sampled from its locus.
            std::vector<ProjPoint> five;
            PointSet distinct(ctx, n);
            while (distinct.size() < 5) {
                ProjPoint p = random_proj_point(ctx, n, rng);
                if (!distinct.contains(p)) distinct.add(p);
            }
            const auto curves = plane_curves_through(distinct, 2);
            if (curves.empty()) continue;
            const HomForm& f = curves[0];
            std::vector<ProjPoint> locus;
            for (const auto& p : enumerate_proj_points(ctx, n, q))
                if (vanishes_at(f, p)) locus.push_back(p);
            if (locus.size() < 2) continue;
            for (uint32_t s = 0; s < want && !locus.empty(); ++s) {
                const size_t pick = rng.below(locus.size());
                add_if_new(pool, locus[pick], max_points);
            }
        } else {
            ProjPoint A = random_proj_point(ctx, n, rng);
            ProjPoint B = random_proj_point(ctx, n, rng);
            while (B == A) B = random_proj_point(ctx, n, rng);
            PointSet line(ctx, n);
            sample_line_points(line, A, B, want, rng, max_points);
            for (size_t i = 0; i < line.size(); ++i)
                add_if_new(pool, line[i], max_points);
        }
    }
    if (pool.size() < 2) return std::nullopt;
    return pool;
}

std::optional<PointSet> gen_intersections(const FieldCtxPtr& ctx, Rng& rng,
                                          uint32_t max_points) {
    uint64_t q = 0;
    if (!ctx->is_finite() || !ctx->order_fits_u64(q) || q > kEnumerationCap)
        return std::nullopt;
    std::vector<uint32_t> degrees;
    if (max_points >= 4) degrees.push_back(2);
    if (max_points >= 9) degrees.push_back(3);
    if (degrees.empty()) return std::nullopt;
    const uint32_t t = degrees[rng.below(degrees.size())];
    const size_t monomials = static_cast<size_t>(t + 1) * (t + 2) / 2;
    const size_t base_count = static_cast<size_t>(t) * t - 1;
    const size_t want_kernel = monomials - base_count;
    const auto all_points = enumerate_proj_points(ctx, 2, q);
    for (int attempt = 0; attempt < 40; ++attempt) {
        PointSet base(ctx, 2);
        while (base.size() < base_count) {
            ProjPoint p = random_proj_point(ctx, 2, rng);
            if (!base.contains(p)) base.add(p);
        }
        const auto pencil = plane_curves_through(base, t);
        if (pencil.size() != want_kernel) continue;
        const HomForm& f = pencil[0];
        const HomForm& g = pencil[1];
        std::vector<ProjPoint> common;
        for (const auto& p : all_points)
            if (vanishes_at(f, p) && vanishes_at(g, p)) common.push_back(p);
        if (common.size() != static_cast<size_t>(t) * t) continue;
        return PointSet::of(std::move(common));
    }
    return std::nullopt;
}

std::optional<PointSet> gen_random_closure(const FieldCtxPtr& ctx, uint32_t n,
                                           uint32_t d, Rng& rng,
                                           uint32_t max_points) {
    const uint32_t k =
        2 + static_cast<uint32_t>(rng.below(std::max<uint32_t>(max_points - 1, 1)));
    PointSet Z(ctx, n);
    uint32_t guard = 0;
    while (Z.size() < std::min(k, max_points) && guard++ < 400) {
        ProjPoint p = random_proj_point(ctx, n, rng);
        if (!Z.contains(p)) Z.add(p);
    }
    if (Z.size() < 2) return std::nullopt;
    auto core = minimal_cb_subset(Z, d);
    if (!core || core->size() < 2) return std::nullopt;
    return core;
}

struct TrialOutcome {
    enum class Status { Vacuous, Verified, Candidate };
    Status status = Status::Vacuous;
    std::vector<HuntCandidate> candidates;
};

TrialOutcome run_trial(const HuntConfig& cfg, const FieldCtxPtr& ctx,
                       uint32_t max_points, uint64_t seed, uint64_t t) {
    Rng rng = derive_stream(seed, "hunt-trial", t);
    const uint32_t d = static_cast<uint32_t>(rng.range(cfg.d_min, cfg.d_max));
    const uint32_t e = static_cast<uint32_t>(rng.range(cfg.e_min, cfg.e_max));

    std::vector<int> generators;
    if (cfg.on_curves) generators.push_back(0);
    if (cfg.intersections && cfg.n == 2) generators.push_back(1);
    if (cfg.random_closure) generators.push_back(2);
    TrialOutcome out;
    if (generators.empty()) return out;

    std::optional<PointSet> instance;
    switch (generators[rng.below(generators.size())]) {
    case 0: instance = gen_on_curves(ctx, cfg.n, rng, max_points); break;
    case 1: instance = gen_intersections(ctx, rng, max_points); break;
    default: instance = gen_random_closure(ctx, cfg.n, d, rng, max_points); break;
    }
    if (!instance || instance->size() < 2 || instance->size() > 14) return out;

    bool any_hypothesis = false;
    auto record = [&](const char* check, bool hypothesis, bool conclusion,
                      bool definitive) {
        if (!hypothesis) return;
        any_hypothesis = true;
        if (conclusion) return;
        out.candidates.push_back(HuntCandidate{
            t, check, d, e, definitive, instance->serialize()});
    };

    const uint64_t cone_seed = rng.next();
    try {
        const PicocoVerdict pv = picoco_check(*instance, d, e, cone_seed);
        record("picoco", pv.hypothesis, pv.conclusion, pv.definitive);
    } catch (const Error& err) {
        if (err.code() != Error::Code::InsufficientField) throw;
        record("picoco", true, false, false); // hypothesis reached, unverifiable
    }
    const LuVerdict lv = lu_check(*instance, d, e);
    record("lu", lv.hypothesis, lv.conclusion, true);

    if (!any_hypothesis) return out;
    out.status = out.candidates.empty() ? TrialOutcome::Status::Verified
                                        : TrialOutcome::Status::Candidate;
    return out;
}

} // namespace

void HuntReport::check_invariants() const {
    if (vacuous + hypothesis_satisfied != trials)
        fail(Error::Code::InternalInvariant, "hunt report counts do not sum to trials");
    uint64_t candidate_trials = 0;
    uint64_t last = ~0ull;
    for (const auto& c : candidates) {
        if (c.trial != last) ++candidate_trials;
        last = c.trial;
    }
    if (conclusion_verified + candidate_trials != hypothesis_satisfied)
        fail(Error::Code::InternalInvariant,
             "hunt report verified/candidate split does not sum");
}

std::string HuntReport::to_string() const {
    std::ostringstream os;
    os << "hunt-report seed=" << seed << " trials=" << trials << "\n";
    os << "vacuous=" << vacuous << " hypothesis-satisfied=" << hypothesis_satisfied
       << " conclusion-verified=" << conclusion_verified
       << " candidates=" << candidates.size() << "\n";
    for (const auto& c : candidates) {
        os << "candidate trial=" << c.trial << " check=" << c.check
           << " d=" << c.d << " e=" << c.e
           << " definitive=" << (c.definitive ? 1 : 0) << "\n";
        os << "instance-begin\n" << c.instance << "instance-end\n";
    }
    return os.str();
}

HuntReport conjecture_hunt(const HuntConfig& config, uint64_t seed) {
    FieldCtxPtr ctx =
        config.k <= 1
            ? FieldCtx::prime(static_cast<uint32_t>(config.p))
            : FieldCtx::extension(static_cast<uint32_t>(config.p), config.k);
    const uint32_t max_points = std::min<uint32_t>(config.max_points, 14);

    const auto outcomes = parallel_map<TrialOutcome>(
        config.trials, [&](size_t t) {
            return run_trial(config, ctx, max_points, seed,
                             static_cast<uint64_t>(t));
        });

    HuntReport report;
    report.seed = seed;
    report.trials = config.trials;
    for (const auto& o : outcomes) {
        switch (o.status) {
        case TrialOutcome::Status::Vacuous: ++report.vacuous; break;
        case TrialOutcome::Status::Verified:
            ++report.hypothesis_satisfied;
            ++report.conclusion_verified;
            break;
        case TrialOutcome::Status::Candidate:
            ++report.hypothesis_satisfied;
            break;
        }
        for (const auto& c : o.candidates) report.candidates.push_back(c);
    }
    report.check_invariants();
    return report;
}

} // namespace cbws

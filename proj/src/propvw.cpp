#include "cbws/propvw.hpp"

#include "cbws/closedpoints.hpp"
#include "cbws/error.hpp"
#include "cbws/field.hpp"
#include "cbws/monomial.hpp"
#include "cbws/parallel.hpp"
#include "cbws/smallfq.hpp"
#include "cbws/upoly.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>
#include <tuple>
#include <vector>

namespace cbws {

namespace {

// Classification of one form's singular locus, precise enough to evaluate
// every tally: counts of singular closed points by degree for finite loci,
// or a tag for the two infinite shapes that occur on the feasible grid
// (a rational line; the whole space, i.e. the zero form).
struct SingKey {
    enum class Tag : uint8_t { Finite = 0, Line = 1, Whole = 2 };
    Tag tag = Tag::Finite;
    std::vector<uint32_t> avail; // Finite only: counts by degree 1.., trimmed
    bool excess = false;         // #Sing >= nmax+1 (infinite counts as yes)
    bool empty = false;          // Sing(f) empty

    bool operator<(const SingKey& o) const {
        return std::tie(tag, avail, excess, empty) <
               std::tie(o.tag, o.avail, o.excess, o.empty);
    }
};

struct KeyAgg {
    BigInt count;
    uint64_t min_index = 0;
};

using KeyMap = std::map<SingKey, KeyAgg>;

void record(KeyMap& m, SingKey key, uint64_t index) {
    auto it = m.find(key);
    if (it == m.end())
        m.emplace(std::move(key), KeyAgg{BigInt(1), index});
    else
        it->second.count += 1; // indexes ascend within a worker range
}

void merge_into(KeyMap& into, const KeyMap& from) {
    for (const auto& [key, agg] : from) {
        auto it = into.find(key);
        if (it == into.end()) {
            into.emplace(key, agg);
        } else {
            it->second.count += agg.count;
            it->second.min_index = std::min(it->second.min_index, agg.min_index);
        }
    }
}

SingKey finite_key(const std::map<int, int>& counts, uint32_t nmax) {
    SingKey k;
    // A closed point of degree j contributes j geometric points; the >= N+1
    // threshold is on geometric size, matching how tuple sizes are counted.
    uint64_t geom = 0;
    int maxdeg = 0;
    for (const auto& [deg, cnt] : counts) {
        geom += static_cast<uint64_t>(deg) * static_cast<uint64_t>(cnt);
        if (cnt > 0 && deg <= static_cast<int>(nmax)) maxdeg = std::max(maxdeg, deg);
    }
    k.empty = geom == 0;
    k.excess = geom >= static_cast<uint64_t>(nmax) + 1;
    k.avail.assign(static_cast<size_t>(maxdeg), 0);
    for (const auto& [deg, cnt] : counts)
        if (deg >= 1 && deg <= maxdeg) k.avail[static_cast<size_t>(deg) - 1] = cnt;
    return k;
}

void decode_digits(uint64_t idx, uint64_t q, std::vector<uint32_t>& digits) {
    for (auto& c : digits) {
        c = static_cast<uint32_t>(idx % q);
        idx /= q;
    }
}

// Per-point evaluation tables for the n = 2 scan: values of every degree-d
// monomial and of its three partial derivatives at one closed point.
struct PointData {
    const SmallFq* fq = nullptr;
    uint32_t degree = 1;
    std::vector<uint32_t> mval;
    std::array<std::vector<uint32_t>, 3> pval;
};

std::vector<PointData> build_point_tables(const ClosedPointSet& cps,
                                          const MonomialBasis& basis) {
    std::vector<PointData> pts;
    const size_t C = basis.size();
    for (const auto& st : cps.strata) {
        const SmallFq& F = *st.fq;
        for (const auto& rep : st.reps) {
            PointData pd;
            pd.fq = st.fq.get();
            pd.degree = st.degree;
            pd.mval.resize(C);
            for (auto& pv : pd.pval) pv.assign(C, 0);
            for (size_t i = 0; i < C; ++i) {
                const auto& e = basis.exponents(i);
                uint32_t v = 1;
                for (uint32_t t = 0; t <= 2; ++t)
                    v = F.mul(v, F.pow(rep[t], e[t]));
                pd.mval[i] = v;
                for (uint32_t t = 0; t <= 2; ++t) {
                    if (e[t] == 0) continue;
                    const uint32_t mult = F.from_residue(e[t]);
                    if (mult == 0) continue;
                    uint32_t w = 1;
                    for (uint32_t s = 0; s <= 2; ++s) {
                        const uint32_t exp = s == t ? e[s] - 1u : e[s];
                        w = F.mul(w, F.pow(rep[s], exp));
                    }
                    pd.pval[t][i] = F.mul(mult, w);
                }
            }
            pts.push_back(std::move(pd));
        }
    }
    return pts;
}

} // namespace

PropVWReport propvw_bruteforce_check(uint32_t n, uint32_t d, long q, uint32_t nmax) {
    const bool grid_ok =
        (n == 1 && d >= 1 && d <= 8 && q >= 2 && q <= 5) ||
        (n == 2 && d >= 1 && d <= 3 && (q == 2 || q == 3));
    if (!grid_ok)
        fail(Error::Code::Precondition,
             "identity check is exhaustive; feasible only for n=1 (d<=8, q<=5) "
             "and n=2 (d<=3, q in {2,3})");
    if (nmax > 14)
        fail(Error::Code::Capacity, "shape budget: N must be at most 14");

    const FieldCtxPtr base = q == 4 ? FieldCtx::extension(2, 2) : FieldCtx::prime(static_cast<uint32_t>(q));
    const auto basis = MonomialBasis::get(n, d);
    const size_t C = basis->size();
    uint64_t total = 1;
    for (size_t i = 0; i < C; ++i) total *= static_cast<uint64_t>(q);

    PropVWReport rep;
    rep.n = n;
    rep.d = d;
    rep.q = q;
    rep.nmax = nmax;
    rep.total_forms = big_pow(BigInt(q), static_cast<unsigned long>(C));

    // Shared read-only machinery for the workers.
    const SmallFq base_fq(base);
    const SmallFqOps ops{&base_fq};

    ClosedPointSet cps;
    std::vector<PointData> pts;
    std::vector<BigInt> line_counts; // a_j of a rational line, j <= bezout
    const uint32_t bezout = n == 2 ? (d - 1) * (d - 1) : 0;
    if (n == 2 && bezout >= 1) {
        cps = enumerate_closed_points(base, 2, bezout);
        pts = build_point_tables(cps, *basis);
        const auto line_census = closed_point_census(Space::proj(1), q, bezout);
        for (uint32_t j = 1; j <= bezout; ++j)
            line_counts.push_back(line_census.degree_count(j));
    }

    auto classify_n1 = [&](uint64_t idx, std::vector<uint32_t>& digits) -> SingKey {
        decode_digits(idx, static_cast<uint64_t>(q), digits);
        // digit i multiplies the basis monomial x0^{d-i} x1^i, so the chart
        // polynomial g(u) = f(u, 1) has coefficient digits[d - m] at u^m
        upoly::Poly<SmallFqOps> g(d + 1, 0);
        for (uint32_t i = 0; i <= d; ++i) g[d - i] = digits[i];
        upoly::trim(ops, g);
        if (g.empty()) return SingKey{SingKey::Tag::Whole, {}, true, false};
        const uint32_t mult_inf = d - static_cast<uint32_t>(upoly::degree(g));
        std::map<int, int> counts;
        const auto gd = upoly::deriv(ops, g);
        const auto r = gd.empty() ? g : upoly::gcd(ops, g, gd);
        if (upoly::degree(r) >= 1)
            counts = upoly::distinct_degree_counts(ops, upoly::radical(ops, r));
        if (mult_inf >= 2) counts[1] += 1;
        return finite_key(counts, nmax);
    };

    auto classify_n2 = [&](uint64_t idx, std::vector<uint32_t>& digits) -> SingKey {
        decode_digits(idx, static_cast<uint64_t>(q), digits);
        bool zero = true;
        for (uint32_t c : digits)
            if (c != 0) {
                zero = false;
                break;
            }
        if (zero) return SingKey{SingKey::Tag::Whole, {}, true, false};
        std::map<int, int> counts;
        uint64_t geom = 0;
        for (const auto& pd : pts) {
            const SmallFq& F = *pd.fq;
            uint32_t fval = 0;
            for (size_t i = 0; i < C; ++i)
                if (digits[i]) fval = F.add(fval, F.mul(digits[i], pd.mval[i]));
            if (fval != 0) continue;
            bool sing = true;
            for (uint32_t t = 0; t <= 2 && sing; ++t) {
                uint32_t s = 0;
                for (size_t i = 0; i < C; ++i)
                    if (digits[i]) s = F.add(s, F.mul(digits[i], pd.pval[t][i]));
                if (s != 0) sing = false;
            }
            if (sing) {
                counts[static_cast<int>(pd.degree)] += 1;
                geom += pd.degree;
            }
        }
        if (geom > bezout) {
            // A nonzero form with more singular points than the Bezout bound
            // has a one-dimensional singular locus, which at these degrees is
            // exactly one rational line; cross-check the scan against it.
            for (uint32_t j = 1; j <= bezout; ++j) {
                const long found = counts.count(static_cast<int>(j))
                                       ? counts.at(static_cast<int>(j))
                                       : 0;
                if (BigInt(found) != line_counts[j - 1])
                    fail(Error::Code::InternalInvariant,
                         "one-dimensional singular locus is not a single rational line");
            }
            return SingKey{SingKey::Tag::Line, {}, true, false};
        }
        return finite_key(counts, nmax);
    };

    // Partition the coefficient space into contiguous ranges, one per worker.
    const size_t workers = std::min<size_t>(worker_count(), std::max<uint64_t>(total, 1));
    const uint64_t chunk = (total + workers - 1) / workers;
    auto maps = parallel_map<KeyMap>(workers, [&](size_t w) {
        KeyMap local;
        std::vector<uint32_t> digits(C, 0);
        const uint64_t lo = static_cast<uint64_t>(w) * chunk;
        const uint64_t hi = std::min<uint64_t>(total, lo + chunk);
        for (uint64_t idx = lo; idx < hi; ++idx) {
            SingKey key = n == 1 ? classify_n1(idx, digits) : classify_n2(idx, digits);
            record(local, std::move(key), idx);
        }
        return local;
    });
    KeyMap merged;
    for (const auto& m : maps) merge_into(merged, m);

    // Shapes: every composition of every total size up to nmax, once each.
    std::vector<Composition> shapes;
    for (uint32_t k = 0; k <= nmax; ++k)
        for (auto& comp : compositions(k)) shapes.push_back(std::move(comp));
    rep.tallies.reserve(shapes.size());
    for (const auto& s : shapes) rep.tallies.push_back(PropVWTally{s, BigInt(0), BigInt(0)});

    // Census-backed availability for the infinite loci.
    std::vector<BigInt> line_avail, whole_avail;
    if (nmax >= 1) {
        const auto lc = closed_point_census(Space::proj(1), q, nmax);
        const auto wc = closed_point_census(Space::proj(n), q, nmax);
        for (uint32_t j = 1; j <= nmax; ++j) {
            line_avail.push_back(lc.degree_count(j));
            whole_avail.push_back(wc.degree_count(j));
        }
    }

    bool has_violation = false;
    uint64_t violating = 0;
    for (const auto& [key, agg] : merged) {
        std::vector<BigInt> avail(nmax, BigInt(0));
        switch (key.tag) {
            case SingKey::Tag::Finite:
                for (size_t j = 0; j < key.avail.size(); ++j)
                    avail[j] = static_cast<long>(key.avail[j]);
                break;
            case SingKey::Tag::Line: avail = line_avail; break;
            case SingKey::Tag::Whole: avail = whole_avail; break;
        }
        if (key.empty) rep.w_empty += agg.count;
        BigInt sieve = 0;
        for (size_t s = 0; s < shapes.size(); ++s) {
            const BigInt t = count_block_fillings(avail, shapes[s].sizes);
            rep.tallies[s].w_ge += agg.count * t;
            if (key.excess) rep.tallies[s].w_ge_excess += agg.count * t;
            if (!key.excess) {
                if (shapes[s].parts() % 2 == 0)
                    sieve += t;
                else
                    sieve -= t;
            }
        }
        // Per-form sieve: with at most nmax singular points, the signed tuple
        // count collapses to the indicator of an empty singular locus.
        if (!key.excess && sieve != BigInt(key.empty ? 1 : 0)) {
            if (!has_violation || agg.min_index < violating) {
                has_violation = true;
                violating = agg.min_index;
            }
        }
    }

    for (size_t s = 0; s < shapes.size(); ++s) {
        const BigInt term = rep.tallies[s].w_ge - rep.tallies[s].w_ge_excess;
        if (shapes[s].parts() % 2 == 0)
            rep.signed_sum += term;
        else
            rep.signed_sum -= term;
    }
    rep.residual = rep.w_empty - rep.signed_sum;
    rep.has_violation = has_violation;
    rep.violating_form = violating;
    if (has_violation) {
        std::vector<uint32_t> digits(C, 0);
        decode_digits(violating, static_cast<uint64_t>(q), digits);
        std::ostringstream os;
        os << "coefficient codes [";
        for (size_t i = 0; i < digits.size(); ++i)
            os << (i ? "," : "") << digits[i];
        os << "] in the fixed monomial order";
        rep.violating_desc = os.str();
    }
    rep.ok = rep.residual == 0 && !has_violation;
    return rep;
}

} // namespace cbws

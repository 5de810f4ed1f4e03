#include "cbws/classes.hpp"

#include "cbws/error.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace cbws {

namespace {

constexpr uint32_t kCompositionCap = 14;

// C(n, k) for BigInt n >= 0: falling_factorial / k!, always exact.
BigInt choose_big(const BigInt& n, uint32_t k) {
    if (n < k) return 0;
    BigInt out;
    if (!divide_exact(falling_factorial(n, k), factorial(k), out))
        fail(Error::Code::InternalInvariant,
             "binomial coefficient failed to divide exactly");
    return out;
}

int moebius(uint32_t n) {
    int mu = 1;
    for (uint32_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0; // square factor
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

// q >= 2 and q = p^e for a prime p.
bool is_prime_power(const BigInt& q) {
    if (q < 2) return false;
    if (mpz_probab_prime_p(q.get_mpz_t(), 30) != 0) return true;
    // composite: find its smallest prime factor by trial division
    for (BigInt p = 2; p * p <= q; ++p) {
        if (q % p != 0) continue;
        BigInt r = q;
        while (r % p == 0) r /= p;
        return r == 1;
    }
    return false; // composite with no factor <= sqrt: unreachable
}

// Truncated integer polynomial product in t, both sides degree <= kmax.
std::vector<BigInt> mul_trunc(const std::vector<BigInt>& a,
                              const std::vector<BigInt>& b, uint32_t kmax) {
    std::vector<BigInt> r(kmax + 1, 0);
    for (uint32_t i = 0; i <= kmax && i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (uint32_t j = 0; i + j <= kmax && j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    }
    return r;
}

// prod_j (1 + t^j)^(a_j) through degree kmax, a_j = avail[j-1].
std::vector<BigInt> stable_subset_series(const std::vector<BigInt>& avail,
                                         uint32_t kmax) {
    std::vector<BigInt> acc(kmax + 1, 0);
    acc[0] = 1;
    for (uint32_t j = 1; j <= kmax && j <= avail.size(); ++j) {
        const BigInt& aj = avail[j - 1];
        if (aj == 0) continue;
        std::vector<BigInt> factor(kmax + 1, 0);
        for (uint32_t i = 0; i * j <= kmax; ++i) factor[i * j] = choose_big(aj, i);
        acc = mul_trunc(acc, factor, kmax);
    }
    return acc;
}

void distribute_degree(const std::vector<uint32_t>& caps, size_t idx, uint32_t j,
                       const BigInt& avail_left, const BigInt& weight,
                       std::vector<uint32_t>& next,
                       std::map<std::vector<uint32_t>, BigInt>& out) {
    if (idx == caps.size()) {
        out[next] += weight;
        return;
    }
    for (uint32_t t = 0;; ++t) {
        if (t * j > caps[idx] || avail_left < t) break;
        next[idx] = caps[idx] - t * j;
        distribute_degree(caps, idx + 1, j, avail_left - t,
                          weight * choose_big(avail_left, t), next, out);
    }
    next[idx] = caps[idx];
}

} // namespace

// ----------------------------------------------------------- Composition

uint32_t Composition::total() const {
    uint32_t s = 0;
    for (uint32_t a : sizes) s += a;
    return s;
}

BigInt Composition::multiplicity() const {
    BigInt m = factorial(total());
    for (uint32_t a : sizes) {
        BigInt out;
        if (!divide_exact(m, factorial(a), out))
            fail(Error::Code::InternalInvariant,
                 "composition multiplicity failed to divide exactly");
        m = out;
    }
    return m;
}

std::string Composition::to_string() const {
    std::ostringstream s;
    s << "(";
    for (size_t i = 0; i < sizes.size(); ++i) {
        if (i) s << ",";
        s << sizes[i];
    }
    s << ")";
    return s.str();
}

std::vector<Composition> compositions(uint32_t k) {
    if (k > kCompositionCap)
        fail(Error::Code::Capacity,
             "compositions are capped at total size " +
                 std::to_string(kCompositionCap) + ", got " + std::to_string(k));
    std::vector<Composition> out;
    Composition cur;
    // lexicographic by size vector: grow the first part last
    auto rec = [&](auto&& self, uint32_t left) -> void {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (uint32_t a = 1; a <= left; ++a) {
            cur.sizes.push_back(a);
            self(self, left - a);
            cur.sizes.pop_back();
        }
    };
    rec(rec, k);
    return out;
}

BigInt fubini(uint32_t k) {
    BigInt total = 0;
    for (const Composition& c : compositions(k)) total += c.multiplicity();
    return total;
}

// ----------------------------------------------------------------- Space

Space Space::proj(uint32_t n) {
    Space s;
    s.kind_ = Kind::Proj;
    s.n_ = n;
    return s;
}

Space Space::affine(uint32_t n) {
    Space s;
    s.kind_ = Kind::Affine;
    s.n_ = n;
    return s;
}

Space Space::diff(const Space& a, const Space& b) {
    Space s;
    s.kind_ = Kind::Diff;
    s.a_ = std::make_shared<Space>(a);
    s.b_ = std::make_shared<Space>(b);
    return s;
}

BigInt Space::points(const BigInt& q, uint32_t m) const {
    if (q < 2) fail(Error::Code::Precondition, "point counts need q >= 2");
    if (m == 0) fail(Error::Code::Precondition, "point counts need m >= 1");
    const BigInt qm = big_pow(q, m);
    switch (kind_) {
        case Kind::Proj: {
            BigInt acc = 0, pw = 1;
            for (uint32_t i = 0; i <= n_; ++i) {
                acc += pw;
                pw *= qm;
            }
            return acc;
        }
        case Kind::Affine:
            return big_pow(qm, n_);
        case Kind::Diff:
            return a_->points(q, m) - b_->points(q, m);
    }
    fail(Error::Code::InternalInvariant, "unhandled space kind");
}

uint32_t Space::dim() const {
    switch (kind_) {
        case Kind::Proj:
        case Kind::Affine:
            return n_;
        case Kind::Diff:
            return a_->dim();
    }
    fail(Error::Code::InternalInvariant, "unhandled space kind");
}

std::string Space::describe() const {
    switch (kind_) {
        case Kind::Proj:
            return "P" + std::to_string(n_);
        case Kind::Affine:
            return "A" + std::to_string(n_);
        case Kind::Diff:
            return "(" + a_->describe() + " - " + b_->describe() + ")";
    }
    fail(Error::Code::InternalInvariant, "unhandled space kind");
}

// ---------------------------------------------------------------- census

const BigInt& ClosedPointCensus::points(uint32_t m) const {
    if (m == 0 || m > jmax)
        fail(Error::Code::Precondition,
             "point count N_" + std::to_string(m) + " is outside the census");
    return point_counts[m - 1];
}

const BigInt& ClosedPointCensus::degree_count(uint32_t j) const {
    if (j == 0 || j > jmax)
        fail(Error::Code::Precondition,
             "degree count a_" + std::to_string(j) + " is outside the census");
    return degree_counts[j - 1];
}

ClosedPointCensus closed_point_census(const Space& space, const BigInt& q,
                                      uint32_t jmax) {
    if (jmax == 0 || jmax > 64)
        fail(Error::Code::Precondition, "census depth must be in 1..64");
    ClosedPointCensus c;
    c.space = space;
    c.q = q;
    c.jmax = jmax;
    for (uint32_t m = 1; m <= jmax; ++m) c.point_counts.push_back(space.points(q, m));
    for (uint32_t j = 1; j <= jmax; ++j) {
        BigInt acc = 0;
        for (uint32_t m = 1; m <= j; ++m) {
            if (j % m != 0) continue;
            const int mu = moebius(j / m);
            if (mu == 1)
                acc += c.point_counts[m - 1];
            else if (mu == -1)
                acc -= c.point_counts[m - 1];
        }
        BigInt aj;
        if (!divide_exact(acc, BigInt(j), aj) || aj < 0)
            fail(Error::Code::InternalInvariant,
                 "closed-point census of " + space.describe() + " at degree " +
                     std::to_string(j) +
                     " is not a nonnegative integer; the point counts are wrong");
        c.degree_counts.push_back(aj);
    }
    return c;
}

// -------------------------------------------------------------- w counts

BigInt w_k_count(const Space& space, uint32_t k, const BigInt& q) {
    if (k == 0) return 1;
    const ClosedPointCensus c = closed_point_census(space, q, k);
    return stable_subset_series(c.degree_counts, k)[k];
}

BigInt count_block_fillings(const std::vector<BigInt>& avail,
                            const std::vector<uint32_t>& sizes) {
    std::vector<uint32_t> caps;
    for (uint32_t a : sizes)
        if (a > 0) caps.push_back(a);
    if (caps.empty()) return 1;
    const uint32_t maxdeg = *std::max_element(caps.begin(), caps.end());

    std::map<std::vector<uint32_t>, BigInt> states;
    states.emplace(caps, 1);
    for (uint32_t j = 1; j <= maxdeg; ++j) {
        const BigInt aj = j <= avail.size() ? avail[j - 1] : BigInt(0);
        if (aj == 0) continue;
        std::map<std::vector<uint32_t>, BigInt> next_states;
        for (const auto& [caps_now, ways] : states) {
            std::vector<uint32_t> scratch = caps_now;
            distribute_degree(caps_now, 0, j, aj, ways, scratch, next_states);
        }
        states = std::move(next_states);
    }
    const auto it = states.find(std::vector<uint32_t>(caps.size(), 0));
    return it == states.end() ? BigInt(0) : it->second;
}

BigInt w_lambda_count(const Space& space, const std::vector<uint32_t>& sizes,
                      const BigInt& q) {
    uint32_t total = 0, maxsize = 0;
    for (uint32_t a : sizes) {
        total += a;
        maxsize = std::max(maxsize, a);
    }
    if (total > kCompositionCap)
        fail(Error::Code::Capacity,
             "configuration counts are capped at total size " +
                 std::to_string(kCompositionCap));
    if (total == 0) return 1;
    const ClosedPointCensus c = closed_point_census(space, q, maxsize);
    return count_block_fillings(c.degree_counts, sizes);
}

// ---------------------------------------------------------- interpolation

LPoly interpolate_class(std::vector<std::pair<BigInt, BigInt>> values,
                        uint32_t degree_bound) {
    const size_t need = static_cast<size_t>(degree_bound) + 2;
    if (values.size() < need)
        fail(Error::Code::Precondition,
             "interpolation of a degree-" + std::to_string(degree_bound) +
                 " class needs " + std::to_string(need) +
                 " values (nodes plus a held-out check), got " +
                 std::to_string(values.size()));
    std::sort(values.begin(), values.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t i = 0; i < values.size(); ++i) {
        if (!is_prime_power(values[i].first))
            fail(Error::Code::Precondition,
                 "interpolation nodes must be prime powers, got " +
                     values[i].first.get_str());
        if (i > 0 && values[i].first == values[i - 1].first)
            fail(Error::Code::Precondition,
                 "interpolation nodes must be distinct, got " +
                     values[i].first.get_str() + " twice");
    }

    // Lagrange through the first degree_bound+1 nodes, exact rationals.
    const size_t m = static_cast<size_t>(degree_bound) + 1;
    std::vector<BigRat> coeff(m, BigRat(0));
    for (size_t i = 0; i < m; ++i) {
        // basis_i(x) = prod_{j != i} (x - q_j) / (q_i - q_j)
        std::vector<BigInt> num(1, 1);
        BigInt den = 1;
        for (size_t j = 0; j < m; ++j) {
            if (j == i) continue;
            std::vector<BigInt> next(num.size() + 1, 0);
            for (size_t t = 0; t < num.size(); ++t) {
                next[t + 1] += num[t];
                next[t] -= num[t] * values[j].first;
            }
            num = std::move(next);
            den *= values[i].first - values[j].first;
        }
        const BigRat scale = BigRat(values[i].second) / BigRat(den);
        for (size_t t = 0; t < num.size(); ++t) {
            BigRat term = scale * BigRat(num[t]);
            term.canonicalize();
            coeff[t] += term;
        }
    }

    std::vector<BigInt> intcoeff(m);
    for (size_t t = 0; t < m; ++t) {
        coeff[t].canonicalize();
        if (coeff[t].get_den() != 1)
            fail(Error::Code::NonPolynomial,
                 "the interpolant has the fractional coefficient " +
                     coeff[t].get_str() + " at degree " + std::to_string(t) +
                     "; the counts do not come from an integer class");
        intcoeff[t] = coeff[t].get_num();
    }
    const LPoly result = LPoly::from_coeffs(intcoeff);

    for (const auto& [q, count] : values)
        if (result.at(q) != count)
            fail(Error::Code::NonPolynomial,
                 "the degree-" + std::to_string(degree_bound) +
                     " interpolant misses the held-out count at q = " +
                     q.get_str() + " (expected " + count.get_str() + ", got " +
                     result.at(q).get_str() + ")");
    return result;
}

// ------------------------------------------------------- alternating sums

BigInt alternating_lambda_sum(const Space& space, uint32_t k, const BigInt& q) {
    if (k > 10)
        fail(Error::Code::Capacity, "alternating sums are capped at k = 10");
    BigInt acc = 0;
    for (const Composition& c : compositions(k)) {
        const BigInt term = c.multiplicity() * w_lambda_count(space, c.sizes, q);
        if (c.parts() % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}

LPoly alternating_lambda_class(const Space& space, uint32_t k) {
    if (k > 10)
        fail(Error::Code::Capacity, "alternating sums are capped at k = 10");
    const uint32_t bound = space.dim() * k;
    std::vector<std::pair<BigInt, BigInt>> values;
    for (BigInt q = 2; values.size() < static_cast<size_t>(bound) + 2; ++q)
        if (is_prime_power(q)) values.emplace_back(q, alternating_lambda_sum(space, k, q));
    return interpolate_class(std::move(values), bound);
}

// ----------------------------------------------------- zeta identity check

ZetaIdentityReport config_zeta_identity_check(const Space& space, uint32_t kmax,
                                              const BigInt& q) {
    if (kmax > 12)
        fail(Error::Code::Capacity, "the zeta identity check is capped at kmax = 12");
    ZetaIdentityReport r;
    r.space = space;
    r.q = q;
    r.kmax = kmax;

    // Left pipeline: stable-subset counts from the census product.
    for (uint32_t k = 0; k <= kmax; ++k) r.w_counts.push_back(w_k_count(space, k, q));

    // Right pipeline: Z(t) coefficients straight from the raw point counts
    // via m*z_m = sum_{i<=m} N_i z_{m-i}, then Z(t) / Z(t^2).
    std::vector<BigInt> z(kmax + 1, 0);
    z[0] = 1;
    if (kmax >= 1) {
        const ClosedPointCensus c = closed_point_census(space, q, kmax);
        for (uint32_t m = 1; m <= kmax; ++m) {
            BigInt acc = 0;
            for (uint32_t i = 1; i <= m; ++i) acc += c.points(i) * z[m - i];
            if (!divide_exact(acc, BigInt(m), z[m]))
                fail(Error::Code::InternalInvariant,
                     "the counting zeta function of " + space.describe() +
                         " has a non-integer coefficient; the point counts are wrong");
        }
    }
    std::vector<BigInt> z2(kmax + 1, 0); // Z(t^2)
    for (uint32_t m = 0; 2 * m <= kmax; ++m) z2[2 * m] = z[m];
    std::vector<BigInt> inv2(kmax + 1, 0); // 1 / Z(t^2)
    inv2[0] = 1;
    for (uint32_t m = 1; m <= kmax; ++m) {
        BigInt acc = 0;
        for (uint32_t i = 1; i <= m; ++i) acc += z2[i] * inv2[m - i];
        inv2[m] = -acc;
    }
    r.ratio_coeffs = mul_trunc(z, inv2, kmax);

    r.ok = true;
    for (uint32_t k = 0; k <= kmax; ++k) {
        if (r.w_counts[k] == r.ratio_coeffs[k]) continue;
        r.ok = false;
        r.first_mismatch = k;
        break;
    }
    return r;
}

// ------------------------------------------------------------------- psi

uint64_t psi(uint32_t n, uint32_t e, uint32_t d, int64_t l, int64_t kconst) {
    if (n < 1 || e < 1 || d < 1)
        fail(Error::Code::Precondition, "psi needs n, e, d >= 1");
    if (l < 0) fail(Error::Code::Precondition, "psi needs l >= 0");
    constexpr int64_t kRange = int64_t(1) << 40;
    if (l > kRange || kconst > kRange || kconst < -kRange)
        fail(Error::Code::Capacity, "psi arguments exceed the supported range");
    const int64_t ed = static_cast<int64_t>(e) * d;
    for (int64_t m = 0;; ++m) {
        const int64_t bound = std::max<int64_t>(2 * m - ed, 0) +
                              static_cast<int64_t>(n - 1) * std::max<int64_t>(m - ed, 0) -
                              kconst;
        if (bound >= l) return static_cast<uint64_t>(m);
    }
}

uint64_t PsiTable::value(int64_t l) const {
    if (l < 0 || static_cast<size_t>(l) >= values.size())
        fail(Error::Code::Precondition,
             "psi table lookup at l = " + std::to_string(l) +
                 " is outside the tabulated range");
    return values[static_cast<size_t>(l)];
}

PsiTable psi_table(uint32_t n, uint32_t e, uint32_t d, int64_t lmax,
                   int64_t kconst) {
    if (lmax < 0) fail(Error::Code::Precondition, "psi tables need lmax >= 0");
    PsiTable t;
    t.n = n;
    t.e = e;
    t.d = d;
    t.kconst = kconst;
    for (int64_t l = 0; l <= lmax; ++l) t.values.push_back(psi(n, e, d, l, kconst));
    return t;
}

} // namespace cbws

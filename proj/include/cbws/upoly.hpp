#pragma once

// Univariate polynomial toolkit over a pluggable coefficient field.
//
// The coefficient field is described by an "ops" object:
//
//   struct Ops {
//     using value_type = ...;
//     value_type zero() const;  value_type one() const;
//     bool is_zero(v) const;    bool eq(a, b) const;
//     value_type add(a, b) / sub(a, b) / neg(a) / mul(a, b) / inv(a) const;
//     uint32_t characteristic() const;
//     BigInt order() const;               // field size
//     value_type pth_root(a) const;       // unique p-th root
//     value_type rand_elem(Rng&) const;   // uniform element
//   };
//
// Polynomials are std::vector<value_type> with ascending coefficients and no
// trailing zeros (the zero polynomial is the empty vector). Everything here
// is deterministic given the Rng streams passed in.

#include "cbws/bigint.hpp"
#include "cbws/error.hpp"
#include "cbws/rng.hpp"

#include <map>
#include <vector>

namespace cbws::upoly {

template <class Ops>
using Poly = std::vector<typename Ops::value_type>;

template <class Ops>
void trim(const Ops& F, Poly<Ops>& a) {
    while (!a.empty() && F.is_zero(a.back())) a.pop_back();
}

template <class T>
int degree(const std::vector<T>& a) {
    return static_cast<int>(a.size()) - 1; // zero poly -> -1
}

template <class T>
bool is_zero(const std::vector<T>& a) {
    return a.empty();
}

template <class Ops>
Poly<Ops> add(const Ops& F, const Poly<Ops>& a, const Poly<Ops>& b) {
    Poly<Ops> r(std::max(a.size(), b.size()), F.zero());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
    trim(F, r);
    return r;
}

template <class Ops>
Poly<Ops> sub(const Ops& F, const Poly<Ops>& a, const Poly<Ops>& b) {
    Poly<Ops> r(std::max(a.size(), b.size()), F.zero());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
    trim(F, r);
    return r;
}

template <class Ops>
Poly<Ops> mul(const Ops& F, const Poly<Ops>& a, const Poly<Ops>& b) {
    if (a.empty() || b.empty()) return {};
    Poly<Ops> r(a.size() + b.size() - 1, F.zero());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    trim(F, r);
    return r;
}

template <class Ops>
Poly<Ops> scale(const Ops& F, const Poly<Ops>& a, const typename Ops::value_type& c) {
    if (F.is_zero(c)) return {};
    Poly<Ops> r = a;
    for (auto& x : r) x = F.mul(x, c);
    return r;
}

template <class Ops>
Poly<Ops> monic(const Ops& F, const Poly<Ops>& a) {
    if (a.empty()) return a;
    return scale(F, a, F.inv(a.back()));
}

// Euclidean division; divisor must be nonzero.
template <class Ops>
void divrem(const Ops& F, const Poly<Ops>& a, const Poly<Ops>& b,
            Poly<Ops>& q, Poly<Ops>& r) {
    if (b.empty()) fail(Error::Code::Domain, "polynomial division by zero");
    r = a;
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, F.zero());
    const auto lead_inv = F.inv(b.back());
    while (r.size() >= b.size()) {
        const size_t shift = r.size() - b.size();
        const auto c = F.mul(r.back(), lead_inv);
        q[shift] = F.add(q[shift], c);
        for (size_t i = 0; i < b.size(); ++i)
            r[shift + i] = F.sub(r[shift + i], F.mul(c, b[i]));
        trim(F, r); // leading term cancels by construction
    }
    trim(F, q);
}

template <class Ops>
Poly<Ops> rem(const Ops& F, const Poly<Ops>& a, const Poly<Ops>& b) {
    Poly<Ops> q, r;
    divrem(F, a, b, q, r);
    return r;
}

template <class Ops>
Poly<Ops> quot(const Ops& F, const Poly<Ops>& a, const Poly<Ops>& b) {
    Poly<Ops> q, r;
    divrem(F, a, b, q, r);
    return q;
}

// Monic gcd.
template <class Ops>
Poly<Ops> gcd(const Ops& F, Poly<Ops> a, Poly<Ops> b) {
    while (!b.empty()) {
        Poly<Ops> r = rem(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(F, a);
}

template <class Ops>
typename Ops::value_type eval(const Ops& F, const Poly<Ops>& a,
                              const typename Ops::value_type& x) {
    auto acc = F.zero();
    for (size_t i = a.size(); i-- > 0;) acc = F.add(F.mul(acc, x), a[i]);
    return acc;
}

template <class Ops>
Poly<Ops> deriv(const Ops& F, const Poly<Ops>& a) {
    if (a.size() <= 1) return {};
    Poly<Ops> r(a.size() - 1, F.zero());
    const uint32_t p = F.characteristic();
    for (size_t i = 1; i < a.size(); ++i) {
        const uint64_t m = p == 0 ? i : i % p;
        auto c = F.zero();
        // small multiplier: repeated addition is fine (i <= degree, tiny here)
        for (uint64_t t = 0; t < m; ++t) c = F.add(c, a[i]);
        r[i - 1] = c;
    }
    trim(F, r);
    return r;
}

// a^e mod m (m nonzero, deg m >= 1).
template <class Ops>
Poly<Ops> powmod(const Ops& F, Poly<Ops> a, BigInt e, const Poly<Ops>& m) {
    if (e < 0) fail(Error::Code::Domain, "powmod: negative exponent");
    Poly<Ops> result{F.one()};
    a = rem(F, a, m);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) result = rem(F, mul(F, result, a), m);
        e >>= 1;
        if (e > 0) a = rem(F, mul(F, a, a), m);
    }
    return result;
}

// x^(q^j) mod m for j = 1..count, returned in order. Iterated q-powering.
template <class Ops>
std::vector<Poly<Ops>> frobenius_powers(const Ops& F, const Poly<Ops>& m, size_t count) {
    std::vector<Poly<Ops>> out;
    out.reserve(count);
    const BigInt q = F.order();
    Poly<Ops> x{F.zero(), F.one()};
    Poly<Ops> w = powmod(F, x, q, m);
    for (size_t j = 0; j < count; ++j) {
        out.push_back(w);
        if (j + 1 < count) w = powmod(F, w, q, m);
    }
    return out;
}

namespace detail {

// f with f' = 0: every exponent is divisible by p; take the p-th root.
template <class Ops>
Poly<Ops> pth_root_poly(const Ops& F, const Poly<Ops>& f) {
    const uint32_t p = F.characteristic();
    Poly<Ops> g((f.size() + p - 1) / p, F.zero());
    for (size_t i = 0; i < f.size(); ++i) {
        if (i % p == 0) {
            g[i / p] = F.pth_root(f[i]);
        } else if (!F.is_zero(f[i])) {
            fail(Error::Code::InternalInvariant, "pth_root_poly: derivative was not zero");
        }
    }
    trim(F, g);
    return g;
}

} // namespace detail

// Radical: product of the distinct monic irreducible factors, each once.
// Characteristic-p aware (handles p-th-power parts via coefficient roots).
template <class Ops>
Poly<Ops> radical(const Ops& F, Poly<Ops> f) {
    trim(F, f);
    if (degree(f) <= 0) {
        if (f.empty()) fail(Error::Code::Domain, "radical of zero polynomial");
        return {F.one()};
    }
    f = monic(F, f);
    Poly<Ops> d = deriv(F, f);
    if (d.empty()) return radical(F, detail::pth_root_poly(F, f));
    Poly<Ops> g = gcd(F, f, d);
    Poly<Ops> w = quot(F, f, g); // the factors with multiplicity not divisible by p, once each
    // strip every w-factor copy out of g; what survives is a p-th power
    Poly<Ops> r = g;
    for (;;) {
        Poly<Ops> h = gcd(F, r, w);
        if (degree(h) <= 0) break;
        r = quot(F, r, h);
    }
    if (degree(r) <= 0) return w;
    return mul(F, w, radical(F, r));
}

// Degrees of the irreducible factors of a *squarefree* monic f, as a map
// degree -> number of factors of that degree. Distinct-degree factorization.
template <class Ops>
std::map<int, int> distinct_degree_counts(const Ops& F, Poly<Ops> f) {
    std::map<int, int> counts;
    trim(F, f);
    if (degree(f) <= 0) return counts;
    f = monic(F, f);
    const BigInt q = F.order();
    Poly<Ops> x{F.zero(), F.one()};
    Poly<Ops> w = x;
    for (int i = 1; 2 * i <= degree(f); ++i) {
        w = powmod(F, w, q, f);
        Poly<Ops> h = gcd(F, sub(F, w, x), f);
        if (degree(h) > 0) {
            counts[i] += degree(h) / i;
            f = quot(F, f, h);
            w = rem(F, w, f);
        }
    }
    if (degree(f) > 0) counts[degree(f)] += 1; // what remains is irreducible
    return counts;
}

namespace detail {

// Split a squarefree monic product of distinct linear factors into roots.
template <class Ops>
void split_linears(const Ops& F, const Poly<Ops>& h, Rng& rng,
                   std::vector<typename Ops::value_type>& roots) {
    const int d = degree(h);
    if (d <= 0) return;
    if (d == 1) {
        // monic x + c0 -> root -c0
        roots.push_back(F.neg(h[0]));
        return;
    }
    const BigInt q = F.order();
    const uint32_t p = F.characteristic();
    for (;;) {
        // random degree < d polynomial
        Poly<Ops> r(static_cast<size_t>(d), F.zero());
        for (auto& c : r) c = F.rand_elem(rng);
        trim(F, r);
        if (r.empty()) continue;
        Poly<Ops> s;
        if (p == 2) {
            // trace splitter: r + r^2 + r^4 + ... (q = 2^b terms)
            size_t b = mpz_sizeinbase(q.get_mpz_t(), 2) - 1;
            Poly<Ops> t = rem(F, r, h);
            s = t;
            for (size_t i = 1; i < b; ++i) {
                t = rem(F, mul(F, t, t), h);
                s = add(F, s, t);
            }
        } else {
            BigInt e = (q - 1) / 2;
            s = sub(F, powmod(F, r, e, h), Poly<Ops>{F.one()});
        }
        Poly<Ops> g = gcd(F, s, h);
        const int dg = degree(g);
        if (dg > 0 && dg < d) {
            split_linears(F, g, rng, roots);
            split_linears(F, quot(F, h, g), rng, roots);
            return;
        }
    }
}

} // namespace detail

// All roots of f lying in the coefficient field (f nonzero). Multiplicities
// collapsed. The rng only steers the equal-degree splitting; the returned
// set of roots is independent of it.
template <class Ops>
std::vector<typename Ops::value_type> roots_in_field(const Ops& F, const Poly<Ops>& f, Rng& rng) {
    if (is_zero(f)) fail(Error::Code::Domain, "roots_in_field: zero polynomial");
    Poly<Ops> g = radical(F, f);
    if (degree(g) < 1) return {};
    const BigInt q = F.order();
    // gcd with x^q - x isolates the split part
    Poly<Ops> xq = powmod(F, Poly<Ops>{F.zero(), F.one()}, q, g);
    Poly<Ops> lin = gcd(F, sub(F, xq, Poly<Ops>{F.zero(), F.one()}), g);
    std::vector<typename Ops::value_type> roots;
    detail::split_linears(F, lin, rng, roots);
    return roots;
}

} // namespace cbws::upoly

#include "cbws/field.hpp"

#include "cbws/rng.hpp"
#include "cbws/upoly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace cbws {

namespace {

// ---------------------------------------------------------------- u64 number theory

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // deterministic Miller-Rabin bases for the full u64 range
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

uint64_t pollard_rho(uint64_t n, uint64_t c) {
    auto f = [&](uint64_t x) { return (mulmod_u64(x, x, n) + c) % n; };
    uint64_t x = 2, y = 2, d = 1;
    while (d == 1) {
        x = f(x);
        y = f(f(y));
        uint64_t diff = x > y ? x - y : y - x;
        if (diff == 0) return 0; // cycle without factor; caller retries with new c
        d = std::gcd(diff, n);
    }
    return d == n ? 0 : d;
}

void factor_u64(uint64_t n, std::map<uint64_t, int>& out) {
    if (n <= 1) return;
    if (is_prime_u64(n)) { out[n] += 1; return; }
    for (uint64_t q = 2; q < 100000 && q * q <= n; ++q) {
        while (n % q == 0) { out[q] += 1; n /= q; }
    }
    if (n == 1) return;
    if (is_prime_u64(n)) { out[n] += 1; return; }
    uint64_t d = 0;
    for (uint64_t c = 1; d == 0; ++c) d = pollard_rho(n, c);
    factor_u64(d, out);
    factor_u64(n / d, out);
}

bool is_prime_u32(uint32_t n) { return is_prime_u64(n); }

// ---------------------------------------------------------------- F_p coefficient ops

int64_t egcd_i64(int64_t a, int64_t b, int64_t& x, int64_t& y) {
    if (b == 0) { x = 1; y = 0; return a; }
    int64_t x1, y1;
    int64_t g = egcd_i64(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

uint64_t inv_mod_u64(uint64_t a, uint64_t p) {
    if (a == 0) fail(Error::Code::Domain, "division by zero in F_p");
    int64_t x, y;
    egcd_i64(static_cast<int64_t>(a % p), static_cast<int64_t>(p), x, y);
    int64_t r = x % static_cast<int64_t>(p);
    if (r < 0) r += static_cast<int64_t>(p);
    return static_cast<uint64_t>(r);
}

// upoly coefficient ops for F_p with uint32 codes.
struct FpOps {
    using value_type = uint32_t;
    uint32_t p;
    BigInt order() const { return BigInt(static_cast<unsigned long>(p)); }
    uint32_t characteristic() const { return p; }
    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    bool is_zero(value_type a) const { return a == 0; }
    bool eq(value_type a, value_type b) const { return a == b; }
    value_type add(value_type a, value_type b) const {
        return static_cast<value_type>((static_cast<uint64_t>(a) + b) % p);
    }
    value_type sub(value_type a, value_type b) const {
        return static_cast<value_type>((static_cast<uint64_t>(a) + p - b) % p);
    }
    value_type neg(value_type a) const { return a == 0 ? 0 : p - a; }
    value_type mul(value_type a, value_type b) const {
        return static_cast<value_type>(static_cast<uint64_t>(a) * b % p);
    }
    value_type inv(value_type a) const { return static_cast<value_type>(inv_mod_u64(a, p)); }
    value_type pth_root(value_type a) const { return a; } // Frobenius is the identity on F_p
    value_type rand_elem(Rng& rng) const { return static_cast<value_type>(rng.below(p)); }
};

using FpPoly = upoly::Poly<FpOps>;

// m irreducible and x generates F_{p^k}^*; fac = prime factors of p^k - 1.
bool is_primitive_modulus(uint32_t p, const std::vector<uint32_t>& m, uint64_t q1,
                          const std::map<uint64_t, int>& fac) {
    if (!FieldCtx::is_irreducible(p, m)) return false;
    FpOps F{p};
    FpPoly mv(m.begin(), m.end());
    FpPoly x{0, 1};
    for (const auto& [r, e] : fac) {
        (void)e;
        FpPoly t = upoly::powmod(F, x, BigInt(static_cast<unsigned long>(q1 / r)), mv);
        if (t.size() == 1 && t[0] == 1) return false;
    }
    return true;
}

// ---------------------------------------------------------------- context registry

struct CtxKey {
    FieldKind kind;
    uint32_t p;
    uint32_t k;
    std::vector<uint32_t> modulus;
    bool operator<(const CtxKey& o) const {
        return std::tie(kind, p, k, modulus) < std::tie(o.kind, o.p, o.k, o.modulus);
    }
};

std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
}

std::map<CtxKey, FieldCtxPtr>& registry() {
    static std::map<CtxKey, FieldCtxPtr> r;
    return r;
}

} // namespace

// Private-constructor access for the registry.
struct FieldCtxFactory {
    static FieldCtxPtr make(FieldKind kind, uint32_t p, uint32_t k, std::vector<uint32_t> modulus) {
        std::shared_ptr<FieldCtx> ctx(new FieldCtx());
        ctx->kind_ = kind;
        ctx->p_ = p;
        ctx->k_ = k;
        ctx->modulus_ = std::move(modulus);
        return ctx;
    }
};

// ---------------------------------------------------------------- FieldCtx

FieldCtxPtr FieldCtx::prime(uint32_t p) {
    if (p < 2 || p >= (1u << 31) || !is_prime_u32(p))
        fail(Error::Code::Precondition, "prime field characteristic must be a prime below 2^31");
    CtxKey key{FieldKind::Prime, p, 1, {0, 1}};
    std::lock_guard<std::mutex> lock(registry_mutex());
    auto it = registry().find(key);
    if (it != registry().end()) return it->second;
    auto ctx = FieldCtxFactory::make(FieldKind::Prime, p, 1, {0, 1});
    registry().emplace(std::move(key), ctx);
    return ctx;
}

FieldCtxPtr FieldCtx::rationals() {
    CtxKey key{FieldKind::Rational, 0, 1, {}};
    std::lock_guard<std::mutex> lock(registry_mutex());
    auto it = registry().find(key);
    if (it != registry().end()) return it->second;
    auto ctx = FieldCtxFactory::make(FieldKind::Rational, 0, 1, {});
    registry().emplace(std::move(key), ctx);
    return ctx;
}

FieldCtxPtr FieldCtx::extension(uint32_t p, uint32_t k) {
    if (k == 1) return prime(p);
    std::vector<uint32_t> m;
    if ((p == 2 || p == 3 || p == 5 || p == 7) && k <= kMaxExtensionDegree) {
        m = table_modulus(p, k);
    } else {
        // fixed internal seed: the same (p, k) yields the same context everywhere
        m = search_irreducible(p, k, 0x715CF3ull);
    }
    return extension(p, k, m);
}

FieldCtxPtr FieldCtx::extension(uint32_t p, uint32_t k, const std::vector<uint32_t>& modulus) {
    if (p < 2 || p >= (1u << 31) || !is_prime_u32(p))
        fail(Error::Code::Precondition, "extension field characteristic must be a prime below 2^31");
    if (k < 1 || k > kMaxExtensionDegree)
        fail(Error::Code::Capacity, "extension degree out of range (1.." +
                                        std::to_string(kMaxExtensionDegree) + ")");
    if (modulus.size() != static_cast<size_t>(k) + 1 || modulus.back() != 1)
        fail(Error::Code::Precondition, "modulus must be monic of degree k");
    for (uint32_t c : modulus)
        if (c >= p) fail(Error::Code::Precondition, "modulus coefficient out of range");
    if (!is_irreducible(p, modulus))
        fail(Error::Code::Precondition, "modulus polynomial is reducible over F_p");
    CtxKey key{FieldKind::Extension, p, k, modulus};
    std::lock_guard<std::mutex> lock(registry_mutex());
    auto it = registry().find(key);
    if (it != registry().end()) return it->second;
    auto ctx = FieldCtxFactory::make(FieldKind::Extension, p, k, modulus);
    registry().emplace(std::move(key), ctx);
    return ctx;
}

BigInt FieldCtx::order() const {
    if (!is_finite()) fail(Error::Code::Domain, "rational field has no finite order");
    return big_pow(BigInt(static_cast<unsigned long>(p_)), k_);
}

bool FieldCtx::order_fits_u64(uint64_t& out) const {
    if (!is_finite()) return false;
    const BigInt o = order();
    if (mpz_sizeinbase(o.get_mpz_t(), 2) > 64) return false;
    out = mpz_get_ui(o.get_mpz_t()); // unsigned long is 64-bit on this target
    return true;
}

bool FieldCtx::same(const FieldCtx& other) const {
    if (this == &other) return true;
    if (kind_ != other.kind_) return false;
    switch (kind_) {
        case FieldKind::Rational: return true;
        case FieldKind::Prime: return p_ == other.p_;
        case FieldKind::Extension:
            return p_ == other.p_ && k_ == other.k_ && modulus_ == other.modulus_;
    }
    return false;
}

std::string FieldCtx::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case FieldKind::Rational: os << "Q"; break;
        case FieldKind::Prime: os << "F_" << p_; break;
        case FieldKind::Extension: {
            os << "F_" << p_ << "^" << k_ << " (x^" << k_;
            for (size_t i = k_; i-- > 0;) {
                if (modulus_[i] != 0) {
                    os << " + " << modulus_[i];
                    if (i > 0) os << "*x";
                    if (i > 1) os << "^" << i;
                }
            }
            os << ")";
            break;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------- irreducibility / tables

bool FieldCtx::is_irreducible(uint32_t p, const std::vector<uint32_t>& m) {
    if (m.size() < 2 || m.back() != 1) return false;
    const uint32_t k = static_cast<uint32_t>(m.size()) - 1;
    for (uint32_t c : m)
        if (c >= p) return false;
    FpOps F{p};
    FpPoly mv(m.begin(), m.end());
    FpPoly x{0, 1};
    // x^{p^i} mod m for i = 1..k in one chain
    auto powers = upoly::frobenius_powers(F, mv, k);
    for (uint32_t i = 1; i < k; ++i) {
        FpPoly g = upoly::gcd(F, upoly::sub(F, powers[i - 1], x), mv);
        if (upoly::degree(g) != 0) return false;
    }
    return upoly::sub(F, powers[k - 1], x).empty();
}

std::vector<uint32_t> FieldCtx::search_irreducible(uint32_t p, uint32_t k, uint64_t seed) {
    if (k < 1) fail(Error::Code::Precondition, "degree must be positive");
    Rng rng = derive_stream(seed, "irreducible-search", (static_cast<uint64_t>(p) << 8) | k);
    for (int tries = 0; tries < 4096; ++tries) {
        std::vector<uint32_t> m(k + 1, 0);
        m[k] = 1;
        for (uint32_t i = 0; i < k; ++i) m[i] = static_cast<uint32_t>(rng.below(p));
        if (is_irreducible(p, m)) return m;
    }
    fail(Error::Code::SearchBudget, "no irreducible modulus found (search budget exhausted)");
}

std::vector<uint32_t> FieldCtx::derive_table_modulus(uint32_t p, uint32_t k) {
    if (k < 1 || k > kMaxExtensionDegree)
        fail(Error::Code::Capacity, "table degree out of range");
    // p^k must fit u64 for the primitivity factorization
    long double est = std::pow(static_cast<long double>(p), static_cast<long double>(k));
    if (est > 1.8e19L) fail(Error::Code::Capacity, "field too large for table derivation");
    uint64_t qk = 1;
    for (uint32_t i = 0; i < k; ++i) qk *= p;
    std::map<uint64_t, int> fac;
    factor_u64(qk - 1, fac);
    // enumerate the non-leading coefficient tuple (c_{k-1}, ..., c_0) in
    // lexicographic order == ascending integer sum c_i p^i with c_{k-1} most
    // significant; the first monic primitive polynomial wins.
    for (uint64_t code = 0; code < qk; ++code) {
        std::vector<uint32_t> m(k + 1, 0);
        m[k] = 1;
        uint64_t t = code;
        for (uint32_t i = 0; i < k; ++i) { // c_0 least significant digit
            m[i] = static_cast<uint32_t>(t % p);
            t /= p;
        }
        if (is_primitive_modulus(p, m, qk - 1, fac)) return m;
    }
    fail(Error::Code::InternalInvariant, "no primitive polynomial found");
}

namespace {

// Frozen moduli (lex-smallest monic primitive) for p in {2,3,5,7}, k in 2..12.
// derive_table_modulus regenerates this table; a test compares the two.
struct TableEntry {
    uint32_t p, k;
    uint32_t coeffs[13]; // c_0..c_k
};

const TableEntry kModuliTable[] = {
    {2, 2, {1, 1, 1}},
    {2, 3, {1, 1, 0, 1}},
    {2, 4, {1, 1, 0, 0, 1}},
    {2, 5, {1, 0, 1, 0, 0, 1}},
    {2, 6, {1, 1, 0, 0, 0, 0, 1}},
    {2, 7, {1, 1, 0, 0, 0, 0, 0, 1}},
    {2, 8, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
    {2, 9, {1, 0, 0, 0, 1, 0, 0, 0, 0, 1}},
    {2, 10, {1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1}},
    {2, 11, {1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {2, 12, {1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1}},
    {3, 2, {2, 1, 1}},
    {3, 3, {1, 2, 0, 1}},
    {3, 4, {2, 1, 0, 0, 1}},
    {3, 5, {1, 2, 0, 0, 0, 1}},
    {3, 6, {2, 1, 0, 0, 0, 0, 1}},
    {3, 7, {1, 2, 1, 0, 0, 0, 0, 1}},
    {3, 8, {2, 0, 0, 1, 0, 0, 0, 0, 1}},
    {3, 9, {1, 0, 1, 2, 0, 0, 0, 0, 0, 1}},
    {3, 10, {2, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1}},
    {3, 11, {1, 2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {3, 12, {2, 2, 2, 1, 2, 0, 0, 0, 0, 0, 0, 0, 1}},
    {5, 2, {2, 1, 1}},
    {5, 3, {2, 3, 0, 1}},
    {5, 4, {2, 2, 1, 0, 1}},
    {5, 5, {2, 4, 0, 0, 0, 1}},
    {5, 6, {2, 1, 0, 0, 0, 0, 1}},
    {5, 7, {2, 3, 0, 0, 0, 0, 0, 1}},
    {5, 8, {3, 2, 1, 0, 0, 0, 0, 0, 1}},
    {5, 9, {3, 2, 1, 0, 0, 0, 0, 0, 0, 1}},
    {5, 10, {3, 1, 1, 0, 0, 0, 0, 0, 0, 0, 1}},
    {5, 11, {2, 3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {5, 12, {3, 2, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {7, 2, {3, 1, 1}},
    {7, 3, {2, 3, 0, 1}},
    {7, 4, {5, 3, 1, 0, 1}},
    {7, 5, {4, 1, 0, 0, 0, 1}},
    {7, 6, {5, 1, 3, 0, 0, 0, 1}},
    {7, 7, {2, 6, 0, 0, 0, 0, 0, 1}},
    {7, 8, {3, 1, 0, 0, 0, 0, 0, 0, 1}},
    {7, 9, {2, 1, 1, 0, 0, 0, 0, 0, 0, 1}},
    {7, 10, {5, 1, 5, 0, 0, 0, 0, 0, 0, 0, 1}},
    {7, 11, {4, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {7, 12, {3, 2, 3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
};
const size_t kModuliTableSize = sizeof(kModuliTable) / sizeof(kModuliTable[0]);

} // namespace

std::vector<uint32_t> FieldCtx::table_modulus(uint32_t p, uint32_t k) {
    for (size_t i = 0; i < kModuliTableSize; ++i) {
        if (kModuliTable[i].p == p && kModuliTable[i].k == k)
            return std::vector<uint32_t>(kModuliTable[i].coeffs, kModuliTable[i].coeffs + k + 1);
    }
    fail(Error::Code::Domain, "no frozen modulus for this (p, k)");
}

// ---------------------------------------------------------------- element factories

FieldScalar FieldCtx::zero() const {
    FieldScalar s;
    s.ctx_ = shared_from_this();
    switch (kind_) {
        case FieldKind::Prime: s.v_ = uint64_t{0}; break;
        case FieldKind::Extension: s.v_ = ExtElem{}; break;
        case FieldKind::Rational: s.v_ = BigRat(0); break;
    }
    return s;
}

FieldScalar FieldCtx::one() const { return from_int(1); }

FieldScalar FieldCtx::from_int(long v) const {
    return from_bigint(BigInt(v));
}

FieldScalar FieldCtx::from_bigint(const BigInt& v) const {
    FieldScalar s;
    s.ctx_ = shared_from_this();
    switch (kind_) {
        case FieldKind::Prime: {
            s.v_ = static_cast<uint64_t>(mpz_fdiv_ui(v.get_mpz_t(), p_));
            break;
        }
        case FieldKind::Extension: {
            ExtElem e{};
            e.c[0] = static_cast<uint32_t>(mpz_fdiv_ui(v.get_mpz_t(), p_));
            s.v_ = e;
            break;
        }
        case FieldKind::Rational: s.v_ = BigRat(v); break;
    }
    return s;
}

FieldScalar FieldCtx::from_rational(const BigRat& v) const {
    if (kind_ != FieldKind::Rational)
        fail(Error::Code::Domain, "rational literals require the rational field context");
    FieldScalar s;
    s.ctx_ = shared_from_this();
    BigRat c = v;
    c.canonicalize();
    s.v_ = c;
    return s;
}

FieldScalar FieldCtx::from_code(uint64_t code) const {
    if (!is_finite()) fail(Error::Code::Domain, "element codes require a finite field");
    FieldScalar s;
    s.ctx_ = shared_from_this();
    if (kind_ == FieldKind::Prime) {
        if (code >= p_) fail(Error::Code::Domain, "element code out of range");
        s.v_ = code;
        return s;
    }
    ExtElem e{};
    uint64_t t = code;
    for (uint32_t i = 0; i < k_; ++i) {
        e.c[i] = static_cast<uint32_t>(t % p_);
        t /= p_;
    }
    if (t != 0) fail(Error::Code::Domain, "element code out of range");
    s.v_ = e;
    return s;
}

uint64_t FieldCtx::code_of(const FieldScalar& x) const {
    if (!x.valid() || !same(*x.ctx()))
        fail(Error::Code::ContextMismatch, "code_of: scalar from a different context");
    if (kind_ == FieldKind::Prime) return std::get<uint64_t>(x.v_);
    if (kind_ == FieldKind::Rational)
        fail(Error::Code::Domain, "element codes require a finite field");
    const ExtElem& e = std::get<ExtElem>(x.v_);
    uint64_t code = 0;
    for (uint32_t i = k_; i-- > 0;) {
        uint64_t next = code * p_ + e.c[i];
        if (p_ != 0 && (code > (UINT64_MAX - e.c[i]) / p_))
            fail(Error::Code::Capacity, "element code exceeds 64 bits");
        code = next;
    }
    return code;
}

FieldScalar FieldCtx::generator() const {
    if (kind_ != FieldKind::Extension)
        fail(Error::Code::Domain, "generator requires an extension context");
    FieldScalar s;
    s.ctx_ = shared_from_this();
    ExtElem e{};
    e.c[1] = 1;
    s.v_ = e;
    return s;
}

// ---------------------------------------------------------------- FieldScalar ops

void FieldScalar::require_same(const FieldScalar& a, const FieldScalar& b) {
    if (!a.valid() || !b.valid())
        fail(Error::Code::Precondition, "operation on an uninitialized scalar");
    if (a.ctx_ == b.ctx_) return;
    if (!a.ctx_->same(*b.ctx_))
        fail(Error::Code::ContextMismatch,
             "mixed-field arithmetic: " + a.ctx_->describe() + " vs " + b.ctx_->describe());
}

bool FieldScalar::is_zero() const {
    if (!valid()) fail(Error::Code::Precondition, "operation on an uninitialized scalar");
    switch (ctx_->kind()) {
        case FieldKind::Prime: return std::get<uint64_t>(v_) == 0;
        case FieldKind::Extension: {
            const ExtElem& e = std::get<ExtElem>(v_);
            for (uint32_t i = 0; i < ctx_->k(); ++i)
                if (e.c[i] != 0) return false;
            return true;
        }
        case FieldKind::Rational: return std::get<BigRat>(v_) == 0;
    }
    return false;
}

bool FieldScalar::is_one() const {
    if (!valid()) fail(Error::Code::Precondition, "operation on an uninitialized scalar");
    switch (ctx_->kind()) {
        case FieldKind::Prime: return std::get<uint64_t>(v_) == 1;
        case FieldKind::Extension: {
            const ExtElem& e = std::get<ExtElem>(v_);
            if (e.c[0] != 1) return false;
            for (uint32_t i = 1; i < ctx_->k(); ++i)
                if (e.c[i] != 0) return false;
            return true;
        }
        case FieldKind::Rational: return std::get<BigRat>(v_) == 1;
    }
    return false;
}

namespace {

ExtElem ext_add(const FieldCtx& F, const ExtElem& a, const ExtElem& b) {
    ExtElem r{};
    const uint64_t p = F.p();
    for (uint32_t i = 0; i < F.k(); ++i)
        r.c[i] = static_cast<uint32_t>((static_cast<uint64_t>(a.c[i]) + b.c[i]) % p);
    return r;
}

ExtElem ext_sub(const FieldCtx& F, const ExtElem& a, const ExtElem& b) {
    ExtElem r{};
    const uint64_t p = F.p();
    for (uint32_t i = 0; i < F.k(); ++i)
        r.c[i] = static_cast<uint32_t>((static_cast<uint64_t>(a.c[i]) + p - b.c[i]) % p);
    return r;
}

ExtElem ext_neg(const FieldCtx& F, const ExtElem& a) {
    ExtElem r{};
    for (uint32_t i = 0; i < F.k(); ++i)
        r.c[i] = a.c[i] == 0 ? 0 : F.p() - a.c[i];
    return r;
}

ExtElem ext_mul(const FieldCtx& F, const ExtElem& a, const ExtElem& b) {
    const uint32_t k = F.k();
    const uint64_t p = F.p();
    const auto& m = F.modulus();
    uint64_t buf[2 * kMaxExtensionDegree - 1] = {0};
    for (uint32_t i = 0; i < k; ++i) {
        if (a.c[i] == 0) continue;
        for (uint32_t j = 0; j < k; ++j)
            buf[i + j] = (buf[i + j] + static_cast<uint64_t>(a.c[i]) * b.c[j]) % p;
    }
    // reduce x^d for d >= k using x^k = -sum m_i x^i
    for (uint32_t d = 2 * k - 2; d >= k; --d) {
        const uint64_t c = buf[d];
        if (c != 0) {
            buf[d] = 0;
            for (uint32_t i = 0; i < k; ++i) {
                if (m[i] != 0)
                    buf[d - k + i] = (buf[d - k + i] + c * (p - m[i])) % p;
            }
        }
        if (d == k) break;
    }
    ExtElem r{};
    for (uint32_t i = 0; i < k; ++i) r.c[i] = static_cast<uint32_t>(buf[i]);
    return r;
}

ExtElem ext_inv(const FieldCtx& F, const ExtElem& a) {
    // extended Euclid in F_p[x] against the modulus
    FpOps ops{F.p()};
    FpPoly r0(F.modulus().begin(), F.modulus().end());
    FpPoly r1(a.c.begin(), a.c.begin() + F.k());
    upoly::trim(ops, r1);
    if (r1.empty()) fail(Error::Code::Domain, "division by zero in extension field");
    FpPoly s0{}, s1{1}; // coefficients of a in r_i = t_i*m + s_i*a
    while (!r1.empty()) {
        FpPoly q, r2;
        upoly::divrem(ops, r0, r1, q, r2);
        FpPoly s2 = upoly::sub(ops, s0, upoly::mul(ops, q, s1));
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
    }
    // r0 = gcd (a unit since the modulus is irreducible and a != 0)
    if (upoly::degree(r0) != 0)
        fail(Error::Code::InternalInvariant, "extension inverse: gcd not a unit");
    const uint32_t scale = ops.inv(r0[0]);
    ExtElem out{};
    for (size_t i = 0; i < s0.size(); ++i) out.c[i] = ops.mul(s0[i], scale);
    return out;
}

} // namespace

FieldScalar operator+(const FieldScalar& a, const FieldScalar& b) {
    FieldScalar::require_same(a, b);
    FieldScalar r;
    r.ctx_ = a.ctx_;
    switch (a.ctx_->kind()) {
        case FieldKind::Prime:
            r.v_ = (std::get<uint64_t>(a.v_) + std::get<uint64_t>(b.v_)) % a.ctx_->p();
            break;
        case FieldKind::Extension:
            r.v_ = ext_add(*a.ctx_, std::get<ExtElem>(a.v_), std::get<ExtElem>(b.v_));
            break;
        case FieldKind::Rational:
            r.v_ = BigRat(std::get<BigRat>(a.v_) + std::get<BigRat>(b.v_));
            break;
    }
    return r;
}

FieldScalar operator-(const FieldScalar& a, const FieldScalar& b) {
    FieldScalar::require_same(a, b);
    FieldScalar r;
    r.ctx_ = a.ctx_;
    switch (a.ctx_->kind()) {
        case FieldKind::Prime: {
            const uint64_t p = a.ctx_->p();
            r.v_ = (std::get<uint64_t>(a.v_) + p - std::get<uint64_t>(b.v_)) % p;
            break;
        }
        case FieldKind::Extension:
            r.v_ = ext_sub(*a.ctx_, std::get<ExtElem>(a.v_), std::get<ExtElem>(b.v_));
            break;
        case FieldKind::Rational:
            r.v_ = BigRat(std::get<BigRat>(a.v_) - std::get<BigRat>(b.v_));
            break;
    }
    return r;
}

FieldScalar operator*(const FieldScalar& a, const FieldScalar& b) {
    FieldScalar::require_same(a, b);
    FieldScalar r;
    r.ctx_ = a.ctx_;
    switch (a.ctx_->kind()) {
        case FieldKind::Prime:
            r.v_ = std::get<uint64_t>(a.v_) * std::get<uint64_t>(b.v_) % a.ctx_->p();
            break;
        case FieldKind::Extension:
            r.v_ = ext_mul(*a.ctx_, std::get<ExtElem>(a.v_), std::get<ExtElem>(b.v_));
            break;
        case FieldKind::Rational:
            r.v_ = BigRat(std::get<BigRat>(a.v_) * std::get<BigRat>(b.v_));
            break;
    }
    return r;
}

FieldScalar operator/(const FieldScalar& a, const FieldScalar& b) {
    return a * b.inv();
}

FieldScalar FieldScalar::operator-() const {
    if (!valid()) fail(Error::Code::Precondition, "operation on an uninitialized scalar");
    FieldScalar r;
    r.ctx_ = ctx_;
    switch (ctx_->kind()) {
        case FieldKind::Prime: {
            const uint64_t v = std::get<uint64_t>(v_);
            r.v_ = v == 0 ? uint64_t{0} : ctx_->p() - v;
            break;
        }
        case FieldKind::Extension:
            r.v_ = ext_neg(*ctx_, std::get<ExtElem>(v_));
            break;
        case FieldKind::Rational:
            r.v_ = BigRat(-std::get<BigRat>(v_));
            break;
    }
    return r;
}

FieldScalar FieldScalar::inv() const {
    if (!valid()) fail(Error::Code::Precondition, "operation on an uninitialized scalar");
    FieldScalar r;
    r.ctx_ = ctx_;
    switch (ctx_->kind()) {
        case FieldKind::Prime:
            r.v_ = inv_mod_u64(std::get<uint64_t>(v_), ctx_->p());
            break;
        case FieldKind::Extension:
            r.v_ = ext_inv(*ctx_, std::get<ExtElem>(v_));
            break;
        case FieldKind::Rational: {
            const BigRat& v = std::get<BigRat>(v_);
            if (v == 0) fail(Error::Code::Domain, "division by zero in Q");
            r.v_ = BigRat(1 / v);
            break;
        }
    }
    return r;
}

FieldScalar FieldScalar::pow(const BigInt& e) const {
    if (!valid()) fail(Error::Code::Precondition, "operation on an uninitialized scalar");
    if (e < 0) return inv().pow(BigInt(-e));
    FieldScalar base = *this;
    FieldScalar acc = ctx_->one();
    BigInt n = e;
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t())) acc = acc * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return acc;
}

FieldScalar FieldScalar::pow(long e) const { return pow(BigInt(e)); }

FieldScalar FieldScalar::frobenius() const {
    if (!valid()) fail(Error::Code::Precondition, "operation on an uninitialized scalar");
    if (!ctx_->is_finite()) fail(Error::Code::Domain, "frobenius requires a finite field");
    if (ctx_->kind() == FieldKind::Prime) return *this;
    return pow(static_cast<long>(ctx_->p()));
}

bool FieldScalar::operator==(const FieldScalar& b) const {
    if (!valid() || !b.valid()) return valid() == b.valid();
    require_same(*this, b);
    return v_ == b.v_;
}

uint64_t FieldScalar::residue() const {
    if (!valid() || ctx_->kind() != FieldKind::Prime)
        fail(Error::Code::Domain, "residue() requires a prime-field scalar");
    return std::get<uint64_t>(v_);
}

const BigRat& FieldScalar::rational() const {
    if (!valid() || ctx_->kind() != FieldKind::Rational)
        fail(Error::Code::Domain, "rational() requires a rational scalar");
    return std::get<BigRat>(v_);
}

const ExtElem& FieldScalar::ext() const {
    if (!valid() || ctx_->kind() != FieldKind::Extension)
        fail(Error::Code::Domain, "ext() requires an extension-field scalar");
    return std::get<ExtElem>(v_);
}

std::string FieldScalar::to_string() const {
    if (!valid()) return "<empty>";
    switch (ctx_->kind()) {
        case FieldKind::Prime: return std::to_string(std::get<uint64_t>(v_));
        case FieldKind::Extension: return std::to_string(ctx_->code_of(*this));
        case FieldKind::Rational: return cbws::to_string(std::get<BigRat>(v_));
    }
    return "";
}

// ---------------------------------------------------------------- embeddings

FieldCtxPtr compositum(const FieldCtxPtr& a, const FieldCtxPtr& b) {
    if (!a || !b) fail(Error::Code::Precondition, "compositum of null contexts");
    if (a->kind() == FieldKind::Rational && b->kind() == FieldKind::Rational) return a;
    if (!a->is_finite() || !b->is_finite())
        fail(Error::Code::Domain, "compositum of mixed rational/finite contexts");
    if (a->p() != b->p())
        fail(Error::Code::Domain, "compositum requires equal characteristic");
    const uint32_t k = std::lcm(a->k(), b->k());
    if (k > kMaxExtensionDegree)
        fail(Error::Code::Capacity, "compositum degree exceeds the supported cap");
    if (k == a->k()) return a;
    if (k == b->k()) return b;
    return FieldCtx::extension(a->p(), k);
}

namespace {

// upoly ops over FieldScalar in a fixed context.
struct ScalarOps {
    using value_type = FieldScalar;
    FieldCtxPtr ctx;
    BigInt order() const { return ctx->order(); }
    uint32_t characteristic() const { return ctx->is_finite() ? ctx->p() : 0; }
    value_type zero() const { return ctx->zero(); }
    value_type one() const { return ctx->one(); }
    bool is_zero(const value_type& a) const { return a.is_zero(); }
    bool eq(const value_type& a, const value_type& b) const { return a == b; }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type inv(const value_type& a) const { return a.inv(); }
    value_type pth_root(const value_type& a) const {
        // a^(p^(k-1)) inverts Frobenius on F_{p^k}
        FieldScalar r = a;
        for (uint32_t i = 1; i < ctx->k(); ++i) r = r.frobenius();
        return r;
    }
    value_type rand_elem(Rng& rng) const {
        uint64_t o = 0;
        if (!ctx->order_fits_u64(o))
            fail(Error::Code::Capacity, "field too large for random elements");
        return ctx->from_code(rng.below(o));
    }
};

} // namespace

Embedding::Embedding(FieldCtxPtr src, FieldCtxPtr dst) : src_(std::move(src)), dst_(std::move(dst)) {
    if (!src_ || !dst_) fail(Error::Code::Precondition, "embedding of null contexts");
    if (src_->kind() == FieldKind::Rational || dst_->kind() == FieldKind::Rational) {
        if (!(src_->kind() == FieldKind::Rational && dst_->kind() == FieldKind::Rational))
            fail(Error::Code::Domain, "no embedding between rational and finite contexts");
        gen_image_ = dst_->one();
        return;
    }
    if (src_->p() != dst_->p())
        fail(Error::Code::Domain, "embedding requires equal characteristic");
    if (dst_->k() % src_->k() != 0)
        fail(Error::Code::Domain, "embedding requires source degree dividing target degree");
    if (src_->kind() == FieldKind::Prime || src_->same(*dst_)) {
        gen_image_ = dst_->one();
        return;
    }
    // image of the source generator: smallest-code root of the source
    // modulus inside dst. Deterministic across runs (fixed internal seed).
    ScalarOps F{dst_};
    upoly::Poly<ScalarOps> m;
    m.reserve(src_->modulus().size());
    for (uint32_t c : src_->modulus()) m.push_back(dst_->from_int(static_cast<long>(c)));
    Rng rng = derive_stream(0x5EEDB10C5ull, "embedding-split",
                            (static_cast<uint64_t>(src_->p()) << 16) |
                                (static_cast<uint64_t>(src_->k()) << 8) | dst_->k());
    auto roots = upoly::roots_in_field(F, m, rng);
    if (roots.size() != src_->k())
        fail(Error::Code::InternalInvariant, "embedding: unexpected root count");
    const FieldScalar* best = &roots[0];
    uint64_t best_code = dst_->code_of(roots[0]);
    for (const auto& r : roots) {
        uint64_t c = dst_->code_of(r);
        if (c < best_code) { best_code = c; best = &r; }
    }
    gen_image_ = *best;
}

FieldScalar Embedding::apply(const FieldScalar& x) const {
    if (!x.valid() || !x.ctx()->same(*src_))
        fail(Error::Code::ContextMismatch, "embedding applied to a scalar from another context");
    if (src_->same(*dst_)) return x;
    if (src_->kind() == FieldKind::Prime)
        return dst_->from_int(static_cast<long>(x.residue()));
    const ExtElem& e = x.ext();
    FieldScalar acc = dst_->zero();
    for (uint32_t i = src_->k(); i-- > 0;)
        acc = acc * gen_image_ + dst_->from_int(static_cast<long>(e.c[i]));
    return acc;
}

} // namespace cbws

#pragma once

#include "cbws/bigint.hpp"
#include "cbws/error.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace cbws {

enum class FieldKind { Prime, Extension, Rational };

class FieldCtx;
using FieldCtxPtr = std::shared_ptr<const FieldCtx>;

inline constexpr uint32_t kMaxExtensionDegree = 12;

// Extension-field element: coefficients of 1, x, ..., x^{k-1} modulo the
// context's irreducible modulus. Fixed-size so scalars never heap-allocate
// in the finite-field paths.
struct ExtElem {
    std::array<uint32_t, kMaxExtensionDegree> c{};
    bool operator==(const ExtElem&) const = default;
};

class FieldScalar;

// Immutable description of the coefficient field. Shared by pointer; all
// element operations go through the context so mixed-context arithmetic is
// caught instead of silently computing garbage.
class FieldCtx : public std::enable_shared_from_this<FieldCtx> {
public:
    static FieldCtxPtr prime(uint32_t p);
    static FieldCtxPtr extension(uint32_t p, uint32_t k);
    static FieldCtxPtr extension(uint32_t p, uint32_t k, const std::vector<uint32_t>& modulus);
    static FieldCtxPtr rationals();

    FieldKind kind() const { return kind_; }
    uint32_t p() const { return p_; }
    uint32_t k() const { return k_; }
    // Monic modulus, coefficients of 1, x, ..., x^k (length k+1). Prime
    // contexts report the degree-1 modulus x.
    const std::vector<uint32_t>& modulus() const { return modulus_; }

    bool is_finite() const { return kind_ != FieldKind::Rational; }
    BigInt order() const; // p^k; throws for rationals
    bool order_fits_u64(uint64_t& out) const;

    bool same(const FieldCtx& other) const;
    std::string describe() const;

    // --- element factories ---
    FieldScalar zero() const;
    FieldScalar one() const;
    FieldScalar from_int(long v) const;
    FieldScalar from_bigint(const BigInt& v) const;
    FieldScalar from_rational(const BigRat& v) const;
    // Finite fields enumerate elements by integer code: code = sum c_i p^i
    // over the coefficient digits. Deterministic and used for file formats,
    // element orderings, and small-field tables.
    FieldScalar from_code(uint64_t code) const;
    uint64_t code_of(const FieldScalar& x) const;
    FieldScalar generator() const; // extension contexts: the class of x

    // --- modulus machinery (exposed for tests and tools) ---
    // Frozen table entry (p in {2,3,5,7}, k <= 12).
    static std::vector<uint32_t> table_modulus(uint32_t p, uint32_t k);
    // Recompute the table rule from scratch: lexicographically smallest
    // monic primitive polynomial of degree k over F_p. Oracle for the table.
    static std::vector<uint32_t> derive_table_modulus(uint32_t p, uint32_t k);
    // Seeded random irreducible for (p, k) outside the table.
    static std::vector<uint32_t> search_irreducible(uint32_t p, uint32_t k, uint64_t seed);
    // Rabin-style proof: gcd(x^{p^i} - x, m) = 1 for 1 <= i < k and
    // x^{p^k} == x (mod m).
    static bool is_irreducible(uint32_t p, const std::vector<uint32_t>& m);

private:
    FieldCtx() = default;
    FieldKind kind_ = FieldKind::Prime;
    uint32_t p_ = 0;
    uint32_t k_ = 1;
    std::vector<uint32_t> modulus_;

    friend class FieldScalar;
    friend struct FieldCtxFactory;
};

// Exact scalar over one FieldCtx. Value semantics; operations throw
// Error::ContextMismatch when operands disagree.
class FieldScalar {
public:
    FieldScalar() = default; // empty; unusable until assigned

    const FieldCtxPtr& ctx() const { return ctx_; }
    bool valid() const { return ctx_ != nullptr; }

    bool is_zero() const;
    bool is_one() const;

    FieldScalar operator-() const;
    FieldScalar inv() const; // throws Domain on zero
    FieldScalar pow(const BigInt& e) const;
    FieldScalar pow(long e) const;
    FieldScalar frobenius() const; // x -> x^p (finite fields)

    friend FieldScalar operator+(const FieldScalar& a, const FieldScalar& b);
    friend FieldScalar operator-(const FieldScalar& a, const FieldScalar& b);
    friend FieldScalar operator*(const FieldScalar& a, const FieldScalar& b);
    friend FieldScalar operator/(const FieldScalar& a, const FieldScalar& b);
    FieldScalar& operator+=(const FieldScalar& b) { return *this = *this + b; }
    FieldScalar& operator-=(const FieldScalar& b) { return *this = *this - b; }
    FieldScalar& operator*=(const FieldScalar& b) { return *this = *this * b; }

    bool operator==(const FieldScalar& b) const;
    bool operator!=(const FieldScalar& b) const { return !(*this == b); }

    // Prime-field residue / rational value accessors (throw on wrong kind).
    uint64_t residue() const;
    const BigRat& rational() const;
    const ExtElem& ext() const;

    std::string to_string() const;

private:
    friend class FieldCtx;
    FieldCtxPtr ctx_;
    std::variant<uint64_t, ExtElem, BigRat> v_;

    static void require_same(const FieldScalar& a, const FieldScalar& b);
};

// Compositum F_{p^lcm(ka,kb)} of two finite contexts over the same p; for a
// rational pair returns the rational context. Mixed characteristic throws.
FieldCtxPtr compositum(const FieldCtxPtr& a, const FieldCtxPtr& b);

// Field embedding src -> dst (src.k | dst.k, same p). Deterministic: the
// source generator maps to the smallest-code root of the source modulus in
// dst, so every run of every binary picks the same embedding.
class Embedding {
public:
    Embedding(FieldCtxPtr src, FieldCtxPtr dst);
    const FieldCtxPtr& src() const { return src_; }
    const FieldCtxPtr& dst() const { return dst_; }
    FieldScalar apply(const FieldScalar& x) const;

private:
    FieldCtxPtr src_, dst_;
    FieldScalar gen_image_;
};

} // namespace cbws

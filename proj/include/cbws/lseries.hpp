#pragma once

// Truncated calculus in u := L^{-1}, where L is the Lefschetz class: integer
// polynomials in L for the classes that are honest polynomials, and
// Laurent-series windows in u for limits. A window [j0, j0+prec] records
// exactly which u-coefficients of a value are reliable; arithmetic
// propagates windows so nothing is ever read past what the inputs support.

#include "cbws/bigint.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cbws {

// Integer polynomial in L, dense ascending coefficients, trimmed.
class LPoly {
public:
    LPoly() = default; // zero
    explicit LPoly(const BigInt& constant);
    static LPoly monomial(uint32_t k, const BigInt& c = 1); // c * L^k
    static LPoly from_coeffs(std::vector<BigInt> ascending);

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    // Coefficient of L^k; zero beyond the support.
    const BigInt& coeff(uint32_t k) const;
    const std::vector<BigInt>& coeffs() const { return coeffs_; }

    LPoly add(const LPoly& b) const;
    LPoly sub(const LPoly& b) const;
    LPoly mul(const LPoly& b) const;
    LPoly negate() const;
    LPoly scale(const BigInt& c) const;

    // L -> q, exact.
    BigInt at(const BigInt& q) const;

    bool operator==(const LPoly& b) const = default;
    // Descending powers: "L^4 + L^3 + 2L^2 + L + 1".
    std::string to_string() const;

private:
    std::vector<BigInt> coeffs_; // coeffs_[k] multiplies L^k
};

// Laurent-series window in u: coefficients for exponents j0 .. j0 + prec
// (inclusive, prec+1 entries). A value has no support below j0 (those
// coefficients are known zero), is known exactly on the window, and is
// UNKNOWN above it; reading past the top of the window is an error.
// Binary operations take the minimum of the operands' reliable windows.
// Equality is structural: same window, same coefficients.
class LSeries {
public:
    LSeries(int64_t j0, uint32_t prec); // zero on the whole window
    static LSeries from_coeffs(int64_t j0, std::vector<BigInt> coeffs);
    // Exact embedding of a polynomial in L: L^m = u^{-m}; every exponent in
    // [-deg, -deg+prec] is known (zero above the support).
    static LSeries from_lpoly(const LPoly& x, uint32_t prec);
    static LSeries one(uint32_t prec);

    int64_t window_lo() const { return j0_; }
    int64_t window_hi() const { return j0_ + static_cast<int64_t>(prec_); }
    uint32_t prec() const { return prec_; }

    // Coefficient of u^j: zero below the window, Domain error above it.
    const BigInt& at(int64_t j) const;

    // lo = min (support can only start earlier), hi = min (reliability).
    LSeries add(const LSeries& b) const;
    LSeries sub(const LSeries& b) const;
    LSeries mul(const LSeries& b) const; // lo = lo_a + lo_b, prec = min
    // Reciprocal; the lowest window coefficient must be +-1.
    LSeries invert() const;
    // Multiply by L^k = u^{-k} (k may be negative).
    LSeries shift_by_L(int64_t k) const;
    // Restrict to a sub-window (must be contained in the current one).
    LSeries truncated(int64_t lo, uint32_t prec) const;

    bool operator==(const LSeries& b) const = default;
    // Ascending powers of u: "1 - u - u^2 + u^4".
    std::string to_string() const;

private:
    int64_t j0_ = 0;
    uint32_t prec_ = 0;
    std::vector<BigInt> coeffs_; // coeffs_[i] multiplies u^{j0_ + i}
};

// h_k(1, L, ..., L^n): the class of Sym^k(P^n) as a polynomial in L (the
// Gaussian binomial coefficient [n+k, k]_L).
LPoly sym_class_Pn(uint32_t n, uint32_t k);

// prod_{i=0}^{n} (1 - u^{s-i}) for s > n: the inverse zeta value of P^n at
// s, an exact Laurent polynomial delivered on the window [0, prec].
LSeries zeta_inverse_Pn(uint32_t n, uint32_t s, uint32_t prec);

// prod_{k=1}^{prec} (1 - u^k) on the window [0, prec]; factors beyond prec
// cannot affect the window, so this is the stable limit product.
LSeries euler_limit_product(uint32_t prec);

// L -> q. Exact; the series version sums c_j q^{-j} over the window.
BigInt specialize_count(const LPoly& x, const BigInt& q);
BigRat specialize_count(const LSeries& x, const BigInt& q);

// L -> xy: the Serre polynomial of a Tate class, supported on the diagonal.
struct XYPoly {
    std::vector<BigInt> diag; // diag[m] multiplies x^m y^m
    bool operator==(const XYPoly&) const = default;
    std::string to_string() const; // ascending: "1 + xy + 2x^2y^2"
};
XYPoly serre_specialize(const LPoly& x);

} // namespace cbws

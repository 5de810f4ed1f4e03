#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace cbws {

using BigInt = mpz_class;
using BigRat = mpq_class;

inline BigInt big_pow(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline BigInt big_binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// a*(a-1)*...*(a-k+1), exact, a arbitrary.
inline BigInt falling_factorial(const BigInt& a, unsigned long k) {
    BigInt r = 1;
    for (unsigned long i = 0; i < k; ++i) r *= a - static_cast<long>(i);
    return r;
}

inline BigInt factorial(unsigned long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

// Exact quotient; callers only use it where divisibility is guaranteed and
// verified (e.g. Moebius inversion of point counts).
inline bool divide_exact(const BigInt& num, const BigInt& den, BigInt& out) {
    if (den == 0) return false;
    BigInt q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (r != 0) return false;
    out = q;
    return true;
}

inline std::string to_string(const BigInt& x) { return x.get_str(); }
inline std::string to_string(const BigRat& x) { return x.get_str(); }

} // namespace cbws

#pragma once

#include "cbws/bigint.hpp"
#include "cbws/classes.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cbws {

// Tally for one shape lambda (a composition, each shape counted once):
//   w_ge        = #{(f, Z) : Z a tuple of pairwise-disjoint Frobenius-stable
//                  subsets of Sing(f) with |Z_i| = lambda_i}
//   w_ge_excess = the same, restricted to forms whose singular locus has at
//                  least nmax+1 closed points (infinite loci included).
struct PropVWTally {
    Composition comp;
    BigInt w_ge;
    BigInt w_ge_excess;
};

struct PropVWReport {
    uint32_t n = 0;
    uint32_t d = 0;
    long q = 0;
    uint32_t nmax = 0; // the N of the identity
    BigInt total_forms;
    BigInt w_empty;                   // #{f : Sing(f) is empty}
    std::vector<PropVWTally> tallies; // shapes with total size <= nmax,
                                      // ordered by size then lexicographically
    BigInt signed_sum; // sum over shapes of (-1)^parts (w_ge - w_ge_excess)
    BigInt residual;   // w_empty - signed_sum; the identity holds iff 0
    bool ok = false;
    bool has_violation = false; // some form fails the per-form sieve
    uint64_t violating_form = 0; // least coefficient index of such a form
    std::string violating_desc; // its coefficient codes, printable
};

// Exhaustive integer verification of the inclusion-exclusion identity
//
//   W_empty = sum_{|lambda| <= N} (-1)^{parts} W_{>= lambda}
//           - sum_{|lambda| <= N} (-1)^{parts} W_{lambda, >= N+1}
//
// over ALL q^C coefficient vectors of degree-d forms on P^n, the zero form
// included. Sing(f) is computed exactly: by factorization for n = 1, by
// closed-point scan up to the Bezout degree (d-1)^2 for n = 2, with
// one-dimensional loci recognized and supplied from the census. Feasible
// grid: n = 1 with d <= 8 and q in {2,3,4,5}; n = 2 with d <= 3 and
// q in {2,3}. Work is split across workers by coefficient ranges and merged
// by integer summation, so the report is independent of the worker count.
PropVWReport propvw_bruteforce_check(uint32_t n, uint32_t d, long q, uint32_t nmax);

} // namespace cbws

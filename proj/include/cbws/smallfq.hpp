#pragma once

#include "cbws/bigint.hpp"
#include "cbws/field.hpp"
#include "cbws/rng.hpp"

#include <cstdint>
#include <vector>

namespace cbws {

// Table-backed arithmetic for a finite field of order q <= 2^16. Elements
// are the integer codes of the owning FieldCtx (base-p digit vectors), so
// values round-trip losslessly between the two representations. Built once,
// read-only afterwards; multiplicative structure via discrete-log tables on
// a deterministically chosen generator, addition via digit arithmetic or a
// dense table for small q.
class SmallFq {
public:
    explicit SmallFq(FieldCtxPtr ctx);

    const FieldCtxPtr& ctx() const { return ctx_; }
    uint32_t q() const { return q_; }
    uint32_t p() const { return p_; }
    uint32_t k() const { return k_; }
    uint32_t generator_code() const { return exp_[1]; }

    uint32_t add(uint32_t a, uint32_t b) const {
        if (!add_.empty()) return add_[a * q_ + b];
        return add_digits(a, b);
    }
    uint32_t sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }
    uint32_t neg(uint32_t a) const { return neg_[a]; }
    uint32_t mul(uint32_t a, uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        uint32_t s = log_[a] + log_[b];
        if (s >= q_ - 1) s -= q_ - 1;
        return exp_[s];
    }
    uint32_t inv(uint32_t a) const;
    uint32_t pow(uint32_t a, uint64_t e) const;
    uint32_t frobenius(uint32_t a) const { return frob_[a]; }

    uint32_t from_residue(uint64_t v) const { return static_cast<uint32_t>(v % p_); }

private:
    uint32_t add_digits(uint32_t a, uint32_t b) const;

    FieldCtxPtr ctx_;
    uint32_t q_, p_, k_;
    std::vector<uint32_t> exp_;  // exp_[i] = code of g^i, i < q-1
    std::vector<uint32_t> log_;  // log_[code] for code != 0
    std::vector<uint32_t> neg_;  // additive inverse per code
    std::vector<uint32_t> frob_; // code of x^p per code
    std::vector<uint32_t> add_;  // dense q*q table when q is small
};

// upoly coefficient ops over a SmallFq.
struct SmallFqOps {
    const SmallFq* F;
    using value_type = uint32_t;
    BigInt order() const { return BigInt(static_cast<unsigned long>(F->q())); }
    uint32_t characteristic() const { return F->p(); }
    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    bool is_zero(value_type a) const { return a == 0; }
    bool eq(value_type a, value_type b) const { return a == b; }
    value_type add(value_type a, value_type b) const { return F->add(a, b); }
    value_type sub(value_type a, value_type b) const { return F->sub(a, b); }
    value_type neg(value_type a) const { return F->neg(a); }
    value_type mul(value_type a, value_type b) const { return F->mul(a, b); }
    value_type inv(value_type a) const { return F->inv(a); }
    value_type pth_root(value_type a) const {
        value_type r = a;
        for (uint32_t i = 1; i < F->k(); ++i) r = F->frobenius(r);
        return r;
    }
    value_type rand_elem(Rng& rng) const { return static_cast<value_type>(rng.below(F->q())); }
};

} // namespace cbws

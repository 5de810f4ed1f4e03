#include "cbws/smallfq.hpp"

namespace cbws {

namespace {
constexpr uint32_t kMaxTableOrder = 1u << 16;
constexpr uint32_t kDenseAddLimit = 2048; // q*q u32 table up to 16MB
} // namespace

SmallFq::SmallFq(FieldCtxPtr ctx) : ctx_(std::move(ctx)) {
    if (!ctx_ || !ctx_->is_finite())
        fail(Error::Code::Precondition, "SmallFq requires a finite field context");
    uint64_t q = 0;
    if (!ctx_->order_fits_u64(q) || q > kMaxTableOrder)
        fail(Error::Code::Capacity, "SmallFq supports orders up to 2^16");
    q_ = static_cast<uint32_t>(q);
    p_ = ctx_->p();
    k_ = ctx_->k();

    // deterministic generator: smallest code whose order is q-1, checked
    // against the prime factors of q-1
    std::vector<uint32_t> prime_factors;
    {
        uint32_t m = q_ - 1;
        for (uint32_t f = 2; f * f <= m; ++f) {
            if (m % f == 0) {
                prime_factors.push_back(f);
                while (m % f == 0) m /= f;
            }
        }
        if (m > 1) prime_factors.push_back(m);
    }
    FieldScalar g = ctx_->zero();
    bool found = false;
    for (uint32_t cand = 1; cand < q_ && !found; ++cand) {
        FieldScalar x = ctx_->from_code(cand);
        bool ok = true;
        for (uint32_t r : prime_factors) {
            if (x.pow(static_cast<long>((q_ - 1) / r)).is_one()) {
                ok = false;
                break;
            }
        }
        if (ok) {
            g = x;
            found = true;
        }
    }
    if (!found) fail(Error::Code::InternalInvariant, "no generator found");

    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    FieldScalar acc = ctx_->one();
    for (uint32_t i = 0; i < q_ - 1; ++i) {
        uint32_t code = static_cast<uint32_t>(ctx_->code_of(acc));
        exp_[i] = code;
        log_[code] = i;
        acc = acc * g;
    }

    neg_.assign(q_, 0);
    frob_.assign(q_, 0);
    for (uint32_t c = 0; c < q_; ++c) {
        FieldScalar x = ctx_->from_code(c);
        neg_[c] = static_cast<uint32_t>(ctx_->code_of(-x));
        frob_[c] = static_cast<uint32_t>(ctx_->code_of(x.frobenius()));
    }

    if (q_ <= kDenseAddLimit) {
        add_.assign(static_cast<size_t>(q_) * q_, 0);
        for (uint32_t a = 0; a < q_; ++a)
            for (uint32_t b = 0; b < q_; ++b)
                add_[static_cast<size_t>(a) * q_ + b] = add_digits(a, b);
    }
}

uint32_t SmallFq::add_digits(uint32_t a, uint32_t b) const {
    if (p_ == 2) return a ^ b; // base-2 digits: XOR
    uint32_t out = 0, mult = 1;
    while (a != 0 || b != 0) {
        uint32_t da = a % p_, db = b % p_;
        uint32_t s = da + db;
        if (s >= p_) s -= p_;
        out += s * mult;
        mult *= p_;
        a /= p_;
        b /= p_;
    }
    return out;
}

uint32_t SmallFq::inv(uint32_t a) const {
    if (a == 0) fail(Error::Code::Domain, "division by zero in SmallFq");
    uint32_t l = log_[a];
    return exp_[l == 0 ? 0 : q_ - 1 - l];
}

uint32_t SmallFq::pow(uint32_t a, uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    uint64_t l = (static_cast<uint64_t>(log_[a]) * (e % (q_ - 1))) % (q_ - 1);
    return exp_[l];
}

} // namespace cbws

#include "cbws/lseries.hpp"

#include "cbws/error.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace cbws {

namespace {

const BigInt kZero = 0;

void trim(std::vector<BigInt>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

// Shared term printer: sign-separated " + " / " - ", coefficient 1 elided
// unless the term is the constant, exponent 1 without a caret.
void append_term(std::ostringstream& out, bool first, const BigInt& c,
                 const std::string& var, int64_t expo) {
    BigInt a = c;
    if (first) {
        if (a < 0) {
            out << "-";
            a = -a;
        }
    } else {
        out << (a < 0 ? " - " : " + ");
        if (a < 0) a = -a;
    }
    const bool unit = (a == 1) && expo != 0;
    if (!unit) out << a.get_str();
    if (expo != 0) {
        out << var;
        if (expo != 1) out << "^" << expo;
    }
}

} // namespace

// ---------------------------------------------------------------- LPoly

LPoly::LPoly(const BigInt& constant) {
    if (constant != 0) coeffs_.push_back(constant);
}

LPoly LPoly::monomial(uint32_t k, const BigInt& c) {
    LPoly r;
    if (c != 0) {
        r.coeffs_.assign(k + 1, 0);
        r.coeffs_[k] = c;
    }
    return r;
}

LPoly LPoly::from_coeffs(std::vector<BigInt> ascending) {
    LPoly r;
    r.coeffs_ = std::move(ascending);
    trim(r.coeffs_);
    return r;
}

const BigInt& LPoly::coeff(uint32_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : kZero;
}

LPoly LPoly::add(const LPoly& b) const {
    std::vector<BigInt> r(std::max(coeffs_.size(), b.coeffs_.size()), 0);
    for (size_t i = 0; i < coeffs_.size(); ++i) r[i] += coeffs_[i];
    for (size_t i = 0; i < b.coeffs_.size(); ++i) r[i] += b.coeffs_[i];
    return from_coeffs(std::move(r));
}

LPoly LPoly::sub(const LPoly& b) const { return add(b.negate()); }

LPoly LPoly::mul(const LPoly& b) const {
    if (is_zero() || b.is_zero()) return LPoly();
    std::vector<BigInt> r(coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (size_t i = 0; i < coeffs_.size(); ++i)
        for (size_t j = 0; j < b.coeffs_.size(); ++j)
            r[i + j] += coeffs_[i] * b.coeffs_[j];
    return from_coeffs(std::move(r));
}

LPoly LPoly::negate() const { return scale(-1); }

LPoly LPoly::scale(const BigInt& c) const {
    if (c == 0) return LPoly();
    LPoly r = *this;
    for (auto& x : r.coeffs_) x *= c;
    return r;
}

BigInt LPoly::at(const BigInt& q) const {
    BigInt acc = 0;
    for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * q + coeffs_[i];
    return acc;
}

std::string LPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (size_t i = coeffs_.size(); i-- > 0;) {
        if (coeffs_[i] == 0) continue;
        append_term(out, first, coeffs_[i], "L", static_cast<int64_t>(i));
        first = false;
    }
    return out.str();
}

// --------------------------------------------------------------- LSeries

LSeries::LSeries(int64_t j0, uint32_t prec)
    : j0_(j0), prec_(prec), coeffs_(static_cast<size_t>(prec) + 1, 0) {}

LSeries LSeries::from_coeffs(int64_t j0, std::vector<BigInt> coeffs) {
    if (coeffs.empty())
        fail(Error::Code::Precondition,
             "a series window needs at least one coefficient");
    LSeries r(j0, static_cast<uint32_t>(coeffs.size() - 1));
    r.coeffs_ = std::move(coeffs);
    return r;
}

LSeries LSeries::from_lpoly(const LPoly& x, uint32_t prec) {
    const int64_t lo = x.is_zero() ? 0 : -static_cast<int64_t>(x.degree());
    LSeries r(lo, prec);
    for (int k = 0; k <= x.degree(); ++k) {
        const int64_t j = -static_cast<int64_t>(k);
        if (j <= r.window_hi()) r.coeffs_[static_cast<size_t>(j - lo)] = x.coeff(static_cast<uint32_t>(k));
    }
    return r;
}

LSeries LSeries::one(uint32_t prec) {
    LSeries r(0, prec);
    r.coeffs_[0] = 1;
    return r;
}

const BigInt& LSeries::at(int64_t j) const {
    if (j < window_lo()) return kZero; // no support below the window
    if (j > window_hi())
        fail(Error::Code::Domain,
             "coefficient of u^" + std::to_string(j) +
                 " lies above the reliable window [" +
                 std::to_string(window_lo()) + ", " +
                 std::to_string(window_hi()) + "]");
    return coeffs_[static_cast<size_t>(j - j0_)];
}

LSeries LSeries::add(const LSeries& b) const {
    // Support can start at either lowest exponent; reliability ends at the
    // first unknown coefficient. min(lo) <= min(hi) always holds because
    // each lo is below its own hi.
    const int64_t lo = std::min(window_lo(), b.window_lo());
    const int64_t hi = std::min(window_hi(), b.window_hi());
    LSeries r(lo, static_cast<uint32_t>(hi - lo));
    for (int64_t j = lo; j <= hi; ++j)
        r.coeffs_[static_cast<size_t>(j - lo)] = at(j) + b.at(j);
    return r;
}

LSeries LSeries::sub(const LSeries& b) const {
    const int64_t lo = std::min(window_lo(), b.window_lo());
    const int64_t hi = std::min(window_hi(), b.window_hi());
    LSeries r(lo, static_cast<uint32_t>(hi - lo));
    for (int64_t j = lo; j <= hi; ++j)
        r.coeffs_[static_cast<size_t>(j - lo)] = at(j) - b.at(j);
    return r;
}

LSeries LSeries::mul(const LSeries& b) const {
    // A coefficient of the product at offset t from the combined lowest
    // exponent mixes offsets i of one factor with t-i of the other, so it is
    // reliable exactly when t stays within both windows.
    const uint32_t p = std::min(prec_, b.prec_);
    LSeries r(window_lo() + b.window_lo(), p);
    for (uint32_t i = 0; i <= std::min(prec_, p); ++i) {
        if (coeffs_[i] == 0) continue;
        for (uint32_t j = 0; i + j <= p && j <= b.prec_; ++j)
            r.coeffs_[i + j] += coeffs_[i] * b.coeffs_[j];
    }
    return r;
}

LSeries LSeries::invert() const {
    const BigInt& lead = coeffs_[0];
    if (lead != 1 && lead != -1)
        fail(Error::Code::Domain,
             "series inversion needs lowest coefficient +-1, got " +
                 lead.get_str() + " at u^" + std::to_string(j0_));
    // (sum a_i u^{lo+i}) * (sum b_i u^{-lo+i}) = 1 with a_0 = +-1:
    // b_0 = a_0, b_t = -a_0 * sum_{i=1..t} a_i b_{t-i}.
    LSeries r(-j0_, prec_);
    r.coeffs_[0] = lead;
    for (uint32_t t = 1; t <= prec_; ++t) {
        BigInt acc = 0;
        for (uint32_t i = 1; i <= t; ++i) acc += coeffs_[i] * r.coeffs_[t - i];
        r.coeffs_[t] = -lead * acc;
    }
    return r;
}

LSeries LSeries::shift_by_L(int64_t k) const {
    LSeries r = *this;
    r.j0_ -= k;
    return r;
}

LSeries LSeries::truncated(int64_t lo, uint32_t prec) const {
    const int64_t hi = lo + static_cast<int64_t>(prec);
    if (lo < window_lo() || hi > window_hi())
        fail(Error::Code::Domain,
             "requested window [" + std::to_string(lo) + ", " +
                 std::to_string(hi) + "] is not contained in [" +
                 std::to_string(window_lo()) + ", " +
                 std::to_string(window_hi()) + "]");
    LSeries r(lo, prec);
    for (int64_t j = lo; j <= hi; ++j)
        r.coeffs_[static_cast<size_t>(j - lo)] = at(j);
    return r;
}

std::string LSeries::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (int64_t j = window_lo(); j <= window_hi(); ++j) {
        const BigInt& c = at(j);
        if (c == 0) continue;
        append_term(out, first, c, "u", j);
        first = false;
    }
    return first ? "0" : out.str();
}

// ------------------------------------------------------------- functions

LPoly sym_class_Pn(uint32_t n, uint32_t k) {
    // Complete homogeneous symmetric function h_k(1, L, ..., L^n) by the
    // one-variable-at-a-time recurrence h_j += L^m * h_{j-1}.
    std::vector<LPoly> h(k + 1);
    h[0] = LPoly(1);
    for (uint32_t m = 0; m <= n; ++m) {
        const LPoly xm = LPoly::monomial(m);
        for (uint32_t j = 1; j <= k; ++j) h[j] = h[j].add(xm.mul(h[j - 1]));
    }
    return h[k];
}

LSeries zeta_inverse_Pn(uint32_t n, uint32_t s, uint32_t prec) {
    if (s <= n)
        fail(Error::Code::Domain,
             "the inverse zeta value of P^" + std::to_string(n) +
                 " converges only for s > n, got s = " + std::to_string(s));
    LSeries acc = LSeries::one(prec);
    for (uint32_t i = 0; i <= n; ++i) {
        const uint32_t e = s - i;
        // On the window [0, prec] the factor 1 - u^e is the identity when
        // e exceeds prec.
        if (e > prec) continue;
        std::vector<BigInt> c(static_cast<size_t>(prec) + 1, 0);
        c[0] = 1;
        c[e] = -1;
        acc = acc.mul(LSeries::from_coeffs(0, std::move(c)));
    }
    return acc;
}

LSeries euler_limit_product(uint32_t prec) {
    LSeries acc = LSeries::one(prec);
    for (uint32_t e = 1; e <= prec; ++e) {
        std::vector<BigInt> c(static_cast<size_t>(prec) + 1, 0);
        c[0] = 1;
        c[e] = -1;
        acc = acc.mul(LSeries::from_coeffs(0, std::move(c)));
    }
    return acc;
}

BigInt specialize_count(const LPoly& x, const BigInt& q) {
    if (q < 2) fail(Error::Code::Precondition, "specialization needs q >= 2");
    return x.at(q);
}

BigRat specialize_count(const LSeries& x, const BigInt& q) {
    if (q < 2) fail(Error::Code::Precondition, "specialization needs q >= 2");
    // u = 1/q: sum c_j q^{-j} over the window, exactly.
    BigRat acc = 0;
    for (int64_t j = x.window_lo(); j <= x.window_hi(); ++j) {
        const BigInt& c = x.at(j);
        if (c == 0) continue;
        const BigInt p = big_pow(q, static_cast<uint64_t>(j < 0 ? -j : j));
        BigRat term(c);
        if (j > 0)
            term /= BigRat(p);
        else
            term *= BigRat(p);
        acc += term;
    }
    acc.canonicalize();
    return acc;
}

XYPoly serre_specialize(const LPoly& x) {
    XYPoly r;
    r.diag = x.coeffs();
    return r;
}

std::string XYPoly::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (size_t m = 0; m < diag.size(); ++m) {
        if (diag[m] == 0) continue;
        BigInt a = diag[m];
        if (first) {
            if (a < 0) {
                out << "-";
                a = -a;
            }
        } else {
            out << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        const bool unit = (a == 1) && m != 0;
        if (!unit) out << a.get_str();
        if (m != 0) {
            if (m == 1)
                out << "xy";
            else
                out << "x^" << m << "y^" << m;
        }
        first = false;
    }
    return first ? "0" : out.str();
}

} // namespace cbws

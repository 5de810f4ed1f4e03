#include "cbws/monomial.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace cbws {

namespace {

uint64_t pack_exponents(const Exponents& e, uint32_t n) {
    uint64_t key = 0;
    for (uint32_t i = 0; i <= n; ++i) key = (key << 6) | e[i];
    return key;
}

void enumerate(uint32_t pos, uint32_t n, uint32_t rem, Exponents& cur,
               std::vector<Exponents>& out) {
    if (pos == n) {
        cur[pos] = static_cast<uint8_t>(rem);
        out.push_back(cur);
        cur[pos] = 0;
        return;
    }
    // descending lex: larger exponent on the more significant variable first
    for (uint32_t e = rem + 1; e-- > 0;) {
        cur[pos] = static_cast<uint8_t>(e);
        enumerate(pos + 1, n, rem - e, cur, out);
    }
    cur[pos] = 0;
}

std::mutex& basis_mutex() {
    static std::mutex m;
    return m;
}

std::map<std::pair<uint32_t, uint32_t>, MonomialBasisPtr>& basis_registry() {
    static std::map<std::pair<uint32_t, uint32_t>, MonomialBasisPtr> r;
    return r;
}

} // namespace

MonomialBasis::MonomialBasis(uint32_t n, uint32_t d) : n_(n), d_(d) {
    Exponents cur{};
    enumerate(0, n, d, cur, exps_);
    index_.reserve(exps_.size());
    for (size_t i = 0; i < exps_.size(); ++i)
        index_.emplace(pack_exponents(exps_[i], n_), static_cast<uint32_t>(i));
}

MonomialBasisPtr MonomialBasis::get(uint32_t n, uint32_t d) {
    if (n < 1 || n > kMaxAmbientDim)
        fail(Error::Code::Capacity, "ambient dimension out of range (1.." +
                                        std::to_string(kMaxAmbientDim) + ")");
    if (d > kMaxFormDegree)
        fail(Error::Code::Capacity, "form degree out of range (0.." +
                                        std::to_string(kMaxFormDegree) + ")");
    BigInt sz = big_binomial(n + d, n);
    if (sz > BigInt(1) << 28)
        fail(Error::Code::Capacity, "monomial basis too large");
    std::lock_guard<std::mutex> lock(basis_mutex());
    auto& reg = basis_registry();
    auto it = reg.find({n, d});
    if (it != reg.end()) return it->second;
    MonomialBasisPtr b(new MonomialBasis(n, d));
    reg.emplace(std::make_pair(n, d), b);
    return b;
}

size_t MonomialBasis::index_of(const Exponents& e) const {
    auto it = index_.find(pack_exponents(e, n_));
    if (it == index_.end())
        fail(Error::Code::Domain, "exponent tuple not in this basis");
    return it->second;
}

std::string MonomialBasis::monomial_string(size_t i) const {
    const Exponents& e = exps_[i];
    std::ostringstream os;
    bool any = false;
    for (uint32_t v = 0; v <= n_; ++v) {
        if (e[v] == 0) continue;
        if (any) os << "*";
        os << "x" << v;
        if (e[v] > 1) os << "^" << static_cast<int>(e[v]);
        any = true;
    }
    if (!any) os << "1";
    return os.str();
}

// ---------------------------------------------------------------- HomForm

HomForm::HomForm(FieldCtxPtr ctx, uint32_t n, uint32_t d)
    : ctx_(std::move(ctx)), basis_(MonomialBasis::get(n, d)) {
    if (!ctx_) fail(Error::Code::Precondition, "form requires a field context");
    coeffs_.assign(basis_->size(), ctx_->zero());
}

HomForm HomForm::from_coeffs(FieldCtxPtr ctx, uint32_t n, uint32_t d,
                             std::vector<FieldScalar> coeffs) {
    HomForm f(std::move(ctx), n, d);
    if (coeffs.size() != f.coeffs_.size())
        fail(Error::Code::Precondition, "coefficient vector length mismatch");
    for (size_t i = 0; i < coeffs.size(); ++i) f.set_coeff(i, coeffs[i]);
    return f;
}

void HomForm::set_coeff(size_t i, const FieldScalar& v) {
    if (!v.valid() || !v.ctx()->same(*ctx_))
        fail(Error::Code::ContextMismatch, "coefficient from a different field context");
    coeffs_[i] = v;
}

bool HomForm::is_zero() const {
    for (const auto& c : coeffs_)
        if (!c.is_zero()) return false;
    return true;
}

FieldScalar HomForm::evaluate(const std::vector<FieldScalar>& coords) const {
    const uint32_t n = basis_->n();
    if (coords.size() != static_cast<size_t>(n) + 1)
        fail(Error::Code::Precondition, "coordinate count mismatch");
    for (const auto& c : coords)
        if (!c.valid()) fail(Error::Code::Precondition, "uninitialized coordinate");
    const FieldCtxPtr& pctx = coords[0].ctx();
    for (const auto& c : coords)
        if (!c.ctx()->same(*pctx))
            fail(Error::Code::ContextMismatch, "mixed coordinate contexts");
    bool all_zero = true;
    for (const auto& c : coords)
        if (!c.is_zero()) { all_zero = false; break; }
    if (all_zero) fail(Error::Code::InvalidPoint, "all-zero coordinate vector");

    const bool same = pctx->same(*ctx_);
    Embedding emb = same ? Embedding(pctx, pctx) : Embedding(ctx_, pctx);

    // power tables coord^e, e <= d
    const uint32_t d = basis_->d();
    std::vector<std::vector<FieldScalar>> pw(n + 1);
    for (uint32_t i = 0; i <= n; ++i) {
        pw[i].reserve(d + 1);
        pw[i].push_back(pctx->one());
        for (uint32_t e = 1; e <= d; ++e) pw[i].push_back(pw[i].back() * coords[i]);
    }
    FieldScalar acc = pctx->zero();
    for (size_t m = 0; m < coeffs_.size(); ++m) {
        if (coeffs_[m].is_zero()) continue;
        FieldScalar term = same ? coeffs_[m] : emb.apply(coeffs_[m]);
        const Exponents& e = basis_->exponents(m);
        for (uint32_t i = 0; i <= n; ++i)
            if (e[i] != 0) term = term * pw[i][e[i]];
        acc = acc + term;
    }
    return acc;
}

HomForm HomForm::partial(uint32_t i) const {
    const uint32_t n = basis_->n();
    const uint32_t d = basis_->d();
    if (i > n) fail(Error::Code::Precondition, "partial: variable index out of range");
    if (d == 0) return HomForm(ctx_, n, 0);
    HomForm out(ctx_, n, d - 1);
    for (size_t m = 0; m < coeffs_.size(); ++m) {
        const Exponents& e = basis_->exponents(m);
        if (e[i] == 0 || coeffs_[m].is_zero()) continue;
        Exponents f = e;
        f[i] -= 1;
        size_t j = out.basis_->index_of(f);
        out.coeffs_[j] = out.coeffs_[j] + coeffs_[m] * ctx_->from_int(e[i]);
    }
    return out;
}

HomForm HomForm::multiply(const HomForm& g) const {
    if (!ctx_->same(*g.ctx_))
        fail(Error::Code::ContextMismatch, "multiplying forms over different contexts");
    if (basis_->n() != g.basis_->n())
        fail(Error::Code::Precondition, "multiplying forms in different ambients");
    const uint32_t n = basis_->n();
    HomForm out(ctx_, n, basis_->d() + g.basis_->d());
    for (size_t a = 0; a < coeffs_.size(); ++a) {
        if (coeffs_[a].is_zero()) continue;
        const Exponents& ea = basis_->exponents(a);
        for (size_t b = 0; b < g.coeffs_.size(); ++b) {
            if (g.coeffs_[b].is_zero()) continue;
            const Exponents& eb = g.basis_->exponents(b);
            Exponents e{};
            for (uint32_t i = 0; i <= n; ++i) e[i] = static_cast<uint8_t>(ea[i] + eb[i]);
            size_t j = out.basis_->index_of(e);
            out.coeffs_[j] = out.coeffs_[j] + coeffs_[a] * g.coeffs_[b];
        }
    }
    return out;
}

HomForm HomForm::add(const HomForm& g) const {
    if (!ctx_->same(*g.ctx_))
        fail(Error::Code::ContextMismatch, "adding forms over different contexts");
    if (basis_ != g.basis_ && (basis_->n() != g.basis_->n() || basis_->d() != g.basis_->d()))
        fail(Error::Code::Precondition, "adding forms of different shape");
    HomForm out = *this;
    for (size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] = out.coeffs_[i] + g.coeffs_[i];
    return out;
}

HomForm HomForm::sub(const HomForm& g) const {
    if (!ctx_->same(*g.ctx_))
        fail(Error::Code::ContextMismatch, "subtracting forms over different contexts");
    if (basis_ != g.basis_ && (basis_->n() != g.basis_->n() || basis_->d() != g.basis_->d()))
        fail(Error::Code::Precondition, "subtracting forms of different shape");
    HomForm out = *this;
    for (size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] = out.coeffs_[i] - g.coeffs_[i];
    return out;
}

HomForm HomForm::scale(const FieldScalar& c) const {
    HomForm out = *this;
    for (auto& x : out.coeffs_) x = x * c;
    return out;
}

HomForm HomForm::substitute_linear(const std::vector<std::vector<FieldScalar>>& lines) const {
    const uint32_t n = basis_->n();
    const uint32_t d = basis_->d();
    if (lines.size() != static_cast<size_t>(n) + 1)
        fail(Error::Code::Precondition, "substitute_linear: need one line per variable");
    const size_t mcols = lines[0].size();
    if (mcols < 2) fail(Error::Code::Precondition, "substitute_linear: target needs >= 2 variables");
    for (const auto& ln : lines)
        if (ln.size() != mcols) fail(Error::Code::Precondition, "substitute_linear: ragged lines");
    const uint32_t m = static_cast<uint32_t>(mcols) - 1;

    // linear forms in the target variables
    std::vector<HomForm> ell;
    ell.reserve(n + 1);
    for (uint32_t i = 0; i <= n; ++i) {
        HomForm li(ctx_, m, 1);
        const auto b1 = MonomialBasis::get(m, 1);
        for (uint32_t j = 0; j <= m; ++j) {
            Exponents e{};
            e[j] = 1;
            li.set_coeff(b1->index_of(e), lines[i][j]);
        }
        ell.push_back(std::move(li));
    }
    // cached powers ell[i]^e for the exponents that actually occur
    std::vector<std::vector<HomForm>> pw(n + 1);
    for (uint32_t i = 0; i <= n; ++i) {
        pw[i].push_back(HomForm(ctx_, m, 0));
        pw[i][0].set_coeff(0, ctx_->one()); // the constant 1
    }
    auto power = [&](uint32_t i, uint32_t e) -> const HomForm& {
        while (pw[i].size() <= e) pw[i].push_back(pw[i].back().multiply(ell[i]));
        return pw[i][e];
    };

    HomForm out(ctx_, m, d);
    for (size_t idx = 0; idx < coeffs_.size(); ++idx) {
        if (coeffs_[idx].is_zero()) continue;
        const Exponents& e = basis_->exponents(idx);
        HomForm term(ctx_, m, 0);
        term.set_coeff(0, coeffs_[idx]);
        for (uint32_t i = 0; i <= n; ++i)
            if (e[i] != 0) term = term.multiply(power(i, e[i]));
        out = out.add(term);
    }
    return out;
}

bool HomForm::operator==(const HomForm& g) const {
    if (!ctx_->same(*g.ctx_) || basis_->n() != g.basis_->n() || basis_->d() != g.basis_->d())
        return false;
    for (size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != g.coeffs_[i]) return false;
    return true;
}

std::string HomForm::to_string() const {
    std::ostringstream os;
    bool any = false;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        if (any) os << " + ";
        os << coeffs_[i].to_string() << "*" << basis_->monomial_string(i);
        any = true;
    }
    if (!any) os << "0";
    return os.str();
}

} // namespace cbws

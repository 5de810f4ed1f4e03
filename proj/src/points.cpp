#include "cbws/points.hpp"

#include <sstream>

namespace cbws {

ProjPoint::ProjPoint(std::vector<FieldScalar> coords) : coords_(std::move(coords)) {
    if (coords_.size() < 2)
        fail(Error::Code::InvalidPoint, "projective point needs at least 2 coordinates");
    for (const auto& c : coords_) {
        if (!c.valid()) fail(Error::Code::InvalidPoint, "uninitialized coordinate");
        if (!c.ctx()->same(*coords_[0].ctx()))
            fail(Error::Code::ContextMismatch, "mixed coordinate contexts in a point");
    }
    size_t i0 = coords_.size();
    for (size_t i = 0; i < coords_.size(); ++i) {
        if (!coords_[i].is_zero()) { i0 = i; break; }
    }
    if (i0 == coords_.size())
        fail(Error::Code::InvalidPoint, "all-zero coordinate vector");
    pivot_ = i0;
    if (!coords_[i0].is_one()) {
        const FieldScalar inv = coords_[i0].inv();
        for (auto& c : coords_) c = c * inv;
    }
}

bool ProjPoint::operator==(const ProjPoint& o) const {
    if (coords_.size() != o.coords_.size()) return false;
    for (size_t i = 0; i < coords_.size(); ++i)
        if (coords_[i] != o.coords_[i]) return false;
    return true;
}

std::string ProjPoint::to_string() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < coords_.size(); ++i) {
        if (i) os << ":";
        os << coords_[i].to_string();
    }
    os << "]";
    return os.str();
}

PointSet::PointSet(FieldCtxPtr ctx, uint32_t n) : ctx_(std::move(ctx)), n_(n) {
    if (!ctx_) fail(Error::Code::Precondition, "point set requires a field context");
    if (n_ < 1) fail(Error::Code::Precondition, "ambient dimension must be >= 1");
}

PointSet PointSet::of(std::vector<ProjPoint> points) {
    if (points.empty())
        fail(Error::Code::Precondition, "of() requires at least one point; use the ctx constructor for empty sets");
    PointSet z(points[0].ctx(), points[0].n());
    for (auto& p : points) z.add(std::move(p));
    return z;
}

bool PointSet::contains(const ProjPoint& p) const {
    for (const auto& q : pts_)
        if (q == p) return true;
    return false;
}

void PointSet::add(ProjPoint p) {
    if (!p.ctx()->same(*ctx_))
        fail(Error::Code::ContextMismatch, "point from a different field context");
    if (p.n() != n_)
        fail(Error::Code::Precondition, "point from a different ambient dimension");
    if (contains(p))
        fail(Error::Code::Precondition, "duplicate point: " + p.to_string());
    pts_.push_back(std::move(p));
}

PointSet PointSet::without(size_t idx) const {
    if (idx >= pts_.size()) fail(Error::Code::Precondition, "index out of range");
    PointSet z(ctx_, n_);
    for (size_t i = 0; i < pts_.size(); ++i)
        if (i != idx) z.pts_.push_back(pts_[i]);
    return z;
}

PointSet PointSet::with(const ProjPoint& p) const {
    PointSet z = *this;
    z.add(p);
    return z;
}

PointSet PointSet::lifted(const FieldCtxPtr& target) const {
    if (target->same(*ctx_)) return *this;
    Embedding emb(ctx_, target);
    PointSet z(target, n_);
    for (const auto& p : pts_) {
        std::vector<FieldScalar> c;
        c.reserve(n_ + 1);
        for (const auto& x : p.coords()) c.push_back(emb.apply(x));
        z.pts_.emplace_back(std::move(c)); // normalization is preserved; no dup possible
    }
    return z;
}

Matrix PointSet::coordinate_matrix() const {
    Matrix m(ctx_, pts_.size(), n_ + 1);
    for (size_t i = 0; i < pts_.size(); ++i)
        for (uint32_t j = 0; j <= n_; ++j) m.set(i, j, pts_[i].coord(j));
    return m;
}

int PointSet::hull_dim() const {
    if (pts_.empty()) fail(Error::Code::Precondition, "hull of an empty set");
    return static_cast<int>(coordinate_matrix().rank()) - 1;
}

PointSet merge_lifted(const PointSet& a, const PointSet& b) {
    if (a.n() != b.n())
        fail(Error::Code::Precondition, "merging sets from different ambient dimensions");
    FieldCtxPtr big = compositum(a.ctx(), b.ctx());
    PointSet la = a.lifted(big);
    PointSet lb = b.lifted(big);
    for (const auto& p : lb.points())
        if (!la.contains(p)) la.add(p);
    return la;
}

// ---------------------------------------------------------------- file format

namespace {

std::string trim_copy(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

uint64_t parse_u64(const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        fail(Error::Code::Parse, "expected a nonnegative integer, got '" + s + "'");
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        fail(Error::Code::Parse, "integer out of range: '" + s + "'");
    }
}

} // namespace

PointSet PointSet::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    FieldCtxPtr ctx;
    std::vector<ProjPoint> pts;
    uint32_t n = 0;
    bool have_header = false;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim_copy(line);
        if (t.empty() || t[0] == '#') continue;
        if (!have_header) {
            auto parts = split(t, ' ');
            std::vector<std::string> words;
            for (auto& w : parts)
                if (!trim_copy(w).empty()) words.push_back(trim_copy(w));
            if (words.size() < 2 || words[0] != "field")
                fail(Error::Code::Parse, "line " + std::to_string(lineno) +
                                             ": expected header 'field p k' or 'field rational'");
            if (words[1] == "rational") {
                ctx = FieldCtx::rationals();
            } else {
                uint64_t p = parse_u64(words[1]);
                uint64_t k = words.size() >= 3 ? parse_u64(words[2]) : 1;
                if (p >= (1ull << 31))
                    fail(Error::Code::Parse, "characteristic too large");
                ctx = k == 1 ? FieldCtx::prime(static_cast<uint32_t>(p))
                             : FieldCtx::extension(static_cast<uint32_t>(p),
                                                   static_cast<uint32_t>(k));
            }
            have_header = true;
            continue;
        }
        auto cells = split(t, ',');
        if (cells.size() < 2)
            fail(Error::Code::Parse,
                 "line " + std::to_string(lineno) + ": a point needs >= 2 coordinates");
        std::vector<FieldScalar> coords;
        coords.reserve(cells.size());
        for (auto& cellraw : cells) {
            std::string cell = trim_copy(cellraw);
            if (ctx->kind() == FieldKind::Rational) {
                bool neg = !cell.empty() && cell[0] == '-';
                std::string digits = neg ? cell.substr(1) : cell;
                if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
                    fail(Error::Code::Parse, "line " + std::to_string(lineno) +
                                                 ": expected an exact integer, got '" + cell + "'");
                BigInt v(digits);
                if (neg) v = -v;
                coords.push_back(ctx->from_bigint(v));
            } else {
                try {
                    coords.push_back(ctx->from_code(parse_u64(cell)));
                } catch (const Error& e) {
                    if (e.code() != Error::Code::Domain) throw;
                    fail(Error::Code::Parse,
                         "line " + std::to_string(lineno) + ": " + e.what());
                }
            }
        }
        if (pts.empty()) {
            n = static_cast<uint32_t>(coords.size()) - 1;
        } else if (coords.size() != static_cast<size_t>(n) + 1) {
            fail(Error::Code::Parse,
                 "line " + std::to_string(lineno) + ": inconsistent coordinate count");
        }
        ProjPoint p(std::move(coords));
        for (const auto& q : pts)
            if (q == p)
                fail(Error::Code::Parse,
                     "line " + std::to_string(lineno) + ": duplicate point " + p.to_string());
        pts.push_back(std::move(p));
    }
    if (!have_header) fail(Error::Code::Parse, "missing 'field ...' header");
    if (pts.empty()) fail(Error::Code::Parse, "no points in file");
    return PointSet::of(std::move(pts));
}

std::string PointSet::serialize() const {
    std::ostringstream os;
    switch (ctx_->kind()) {
        case FieldKind::Rational: os << "field rational\n"; break;
        case FieldKind::Prime: os << "field " << ctx_->p() << " 1\n"; break;
        case FieldKind::Extension: os << "field " << ctx_->p() << " " << ctx_->k() << "\n"; break;
    }
    for (const auto& p : pts_) {
        if (ctx_->kind() == FieldKind::Rational) {
            // scale to integers: multiply by the lcm of denominators
            BigInt den(1);
            for (const auto& c : p.coords())
                den = lcm(den, BigInt(c.rational().get_den()));
            for (uint32_t j = 0; j <= n_; ++j) {
                if (j) os << ",";
                BigRat v = p.coord(j).rational() * BigRat(den);
                v.canonicalize();
                os << v.get_num().get_str();
            }
        } else {
            for (uint32_t j = 0; j <= n_; ++j) {
                if (j) os << ",";
                os << ctx_->code_of(p.coord(j));
            }
        }
        os << "\n";
    }
    return os.str();
}

bool PointSet::operator==(const PointSet& o) const {
    if (n_ != o.n_ || pts_.size() != o.pts_.size() || !ctx_->same(*o.ctx_)) return false;
    for (size_t i = 0; i < pts_.size(); ++i)
        if (pts_[i] != o.pts_[i]) return false;
    return true;
}

} // namespace cbws

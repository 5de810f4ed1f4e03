#include "cbws/matrix.hpp"

namespace cbws {

Matrix::Matrix(FieldCtxPtr ctx, size_t rows, size_t cols)
    : ctx_(std::move(ctx)), rows_(rows), cols_(cols) {
    if (!ctx_) fail(Error::Code::Precondition, "matrix requires a field context");
    e_.assign(rows_ * cols_, ctx_->zero());
}

Matrix Matrix::from_rows(const std::vector<std::vector<FieldScalar>>& rows) {
    if (rows.empty() || rows[0].empty())
        fail(Error::Code::Precondition, "from_rows requires at least one entry");
    Matrix m(rows[0][0].ctx(), rows.size(), rows[0].size());
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols_)
            fail(Error::Code::Precondition, "ragged rows");
        for (size_t c = 0; c < m.cols_; ++c) m.set(r, c, rows[r][c]);
    }
    return m;
}

void Matrix::set(size_t r, size_t c, const FieldScalar& v) {
    if (!v.valid() || !v.ctx()->same(*ctx_))
        fail(Error::Code::ContextMismatch, "matrix entry from a different field context");
    e_[r * cols_ + c] = v;
}

Matrix Matrix::transpose() const {
    Matrix t(ctx_, cols_, rows_);
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c = 0; c < cols_; ++c)
            t.e_[c * rows_ + r] = e_[r * cols_ + c];
    return t;
}

namespace {

// Fraction-free RREF over Q: rows are scaled to integers, elimination uses
// cross-multiplication, and each updated row is divided by the gcd of its
// entries. Output rows are finally divided by their pivot entry.
struct RationalReducer {
    size_t rows, cols;
    std::vector<std::vector<BigInt>> m;

    RationalReducer(const Matrix& M) : rows(M.rows()), cols(M.cols()) {
        m.assign(rows, std::vector<BigInt>(cols));
        for (size_t r = 0; r < rows; ++r) {
            BigInt den(1);
            for (size_t c = 0; c < cols; ++c)
                den = lcm(den, BigInt(M.at(r, c).rational().get_den()));
            for (size_t c = 0; c < cols; ++c) {
                BigRat v = M.at(r, c).rational() * BigRat(den);
                v.canonicalize();
                m[r][c] = BigInt(v.get_num());
            }
        }
    }

    static void normalize_row(std::vector<BigInt>& row) {
        BigInt g(0);
        for (const auto& x : row) g = gcd(g, x);
        if (g > 1)
            for (auto& x : row) x /= g;
    }

    void run(std::vector<size_t>& pivot_cols) {
        size_t top = 0;
        for (size_t col = 0; col < cols && top < rows; ++col) {
            size_t pr = top;
            while (pr < rows && m[pr][col] == 0) ++pr;
            if (pr == rows) continue;
            std::swap(m[pr], m[top]);
            const BigInt p = m[top][col];
            for (size_t r = 0; r < rows; ++r) {
                if (r == top || m[r][col] == 0) continue;
                const BigInt q = m[r][col];
                for (size_t c = 0; c < cols; ++c)
                    m[r][c] = p * m[r][c] - q * m[top][c];
                normalize_row(m[r]);
            }
            pivot_cols.push_back(col);
            ++top;
        }
    }
};

} // namespace

Reduction Matrix::reduce() const {
    Reduction out{0, {}, Matrix(ctx_, rows_, cols_)};
    if (rows_ == 0 || cols_ == 0) return out;

    if (ctx_->kind() == FieldKind::Rational) {
        RationalReducer red(*this);
        red.run(out.pivot_cols);
        out.rank = out.pivot_cols.size();
        for (size_t r = 0; r < out.rank; ++r) {
            const BigInt& p = red.m[r][out.pivot_cols[r]];
            for (size_t c = 0; c < cols_; ++c) {
                if (red.m[r][c] == 0) continue;
                BigRat v(red.m[r][c], p);
                v.canonicalize();
                out.rref.set(r, c, ctx_->from_rational(v));
            }
        }
        return out;
    }

    std::vector<FieldScalar> w = e_; // working copy
    auto entry = [&](size_t r, size_t c) -> FieldScalar& { return w[r * cols_ + c]; };
    size_t top = 0;
    for (size_t col = 0; col < cols_ && top < rows_; ++col) {
        size_t pr = top;
        while (pr < rows_ && entry(pr, col).is_zero()) ++pr;
        if (pr == rows_) continue;
        if (pr != top)
            for (size_t c = 0; c < cols_; ++c) std::swap(entry(pr, c), entry(top, c));
        const FieldScalar inv = entry(top, col).inv();
        for (size_t c = col; c < cols_; ++c) entry(top, c) = entry(top, c) * inv;
        for (size_t r = 0; r < rows_; ++r) {
            if (r == top) continue;
            const FieldScalar f = entry(r, col);
            if (f.is_zero()) continue;
            for (size_t c = col; c < cols_; ++c)
                entry(r, c) = entry(r, c) - f * entry(top, c);
        }
        out.pivot_cols.push_back(col);
        ++top;
    }
    out.rank = out.pivot_cols.size();
    out.rref.e_ = std::move(w);
    return out;
}

std::vector<std::vector<FieldScalar>> Matrix::kernel_basis() const {
    Reduction red = reduce();
    std::vector<bool> is_pivot(cols_, false);
    for (size_t c : red.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<FieldScalar>> basis;
    for (size_t f = 0; f < cols_; ++f) {
        if (is_pivot[f]) continue;
        std::vector<FieldScalar> v(cols_, ctx_->zero());
        v[f] = ctx_->one();
        for (size_t i = 0; i < red.pivot_cols.size(); ++i)
            v[red.pivot_cols[i]] = -red.rref.at(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

FieldScalar Matrix::determinant() const {
    if (rows_ != cols_)
        fail(Error::Code::Precondition, "determinant of a non-square matrix");
    if (rows_ == 0) return ctx_->one();
    std::vector<FieldScalar> w = e_;
    auto entry = [&](size_t r, size_t c) -> FieldScalar& { return w[r * cols_ + c]; };
    FieldScalar det = ctx_->one();
    for (size_t col = 0; col < cols_; ++col) {
        size_t pr = col;
        while (pr < rows_ && entry(pr, col).is_zero()) ++pr;
        if (pr == rows_) return ctx_->zero();
        if (pr != col) {
            for (size_t c = 0; c < cols_; ++c) std::swap(entry(pr, c), entry(col, c));
            det = -det;
        }
        const FieldScalar& p = entry(col, col);
        det = det * p;
        const FieldScalar inv = p.inv();
        for (size_t r = col + 1; r < rows_; ++r) {
            const FieldScalar f = entry(r, col);
            if (f.is_zero()) continue;
            const FieldScalar fi = f * inv;
            for (size_t c = col; c < cols_; ++c)
                entry(r, c) = entry(r, c) - fi * entry(col, c);
        }
    }
    return det;
}

} // namespace cbws

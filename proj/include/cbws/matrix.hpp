#pragma once

#include "cbws/field.hpp"

#include <vector>

namespace cbws {

struct Reduction;

// Dense exact matrix over one field context. Immutable after construction
// in the workflows (builders fill entries, algorithms copy); all entries
// share the context, checked at insertion.
class Matrix {
public:
    Matrix(FieldCtxPtr ctx, size_t rows, size_t cols);
    static Matrix from_rows(const std::vector<std::vector<FieldScalar>>& rows);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const FieldCtxPtr& ctx() const { return ctx_; }

    const FieldScalar& at(size_t r, size_t c) const { return e_[r * cols_ + c]; }
    void set(size_t r, size_t c, const FieldScalar& v);

    Matrix transpose() const;

    // Reduced row echelon form with the deterministic pivot rule: columns
    // scanned left to right, first row with a nonzero entry wins. Rational
    // contexts run fraction-free on gcd-normalized integer rows.
    Reduction reduce() const;
    size_t rank() const;

    // Canonical kernel basis read off the RREF free columns: one vector per
    // free column, entry 1 there, minus the RREF column above the pivots.
    std::vector<std::vector<FieldScalar>> kernel_basis() const;

    FieldScalar determinant() const; // square matrices

private:
    FieldCtxPtr ctx_;
    size_t rows_, cols_;
    std::vector<FieldScalar> e_;
};

struct Reduction {
    size_t rank = 0;
    std::vector<size_t> pivot_cols;
    Matrix rref; // pivots are 1, pivot columns elementary
};

inline size_t Matrix::rank() const { return reduce().rank; }

} // namespace cbws

#pragma once

#include "cbws/field.hpp"
#include "cbws/matrix.hpp"

#include <string>
#include <vector>

namespace cbws {

// Point of P^n with coordinates normalized so the first nonzero entry is 1.
// Equality is plain coordinate equality after that normalization.
class ProjPoint {
public:
    explicit ProjPoint(std::vector<FieldScalar> coords);

    const FieldCtxPtr& ctx() const { return coords_[0].ctx(); }
    uint32_t n() const { return static_cast<uint32_t>(coords_.size()) - 1; }
    const std::vector<FieldScalar>& coords() const { return coords_; }
    const FieldScalar& coord(size_t i) const { return coords_[i]; }
    size_t pivot() const { return pivot_; } // index of the leading 1

    bool operator==(const ProjPoint& o) const;
    bool operator!=(const ProjPoint& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    std::vector<FieldScalar> coords_;
    size_t pivot_ = 0;
};

// Reduced zero-dimensional subscheme: a list of pairwise distinct points
// over one field context.
class PointSet {
public:
    PointSet(FieldCtxPtr ctx, uint32_t n); // empty set
    static PointSet of(std::vector<ProjPoint> points);

    const FieldCtxPtr& ctx() const { return ctx_; }
    uint32_t n() const { return n_; }
    size_t size() const { return pts_.size(); }
    bool empty() const { return pts_.empty(); }
    const ProjPoint& operator[](size_t i) const { return pts_[i]; }
    const std::vector<ProjPoint>& points() const { return pts_; }

    bool contains(const ProjPoint& p) const;
    void add(ProjPoint p); // throws Precondition on duplicates or shape mismatch

    PointSet without(size_t idx) const;
    PointSet with(const ProjPoint& p) const;

    // All coordinates mapped through the canonical embedding into `target`
    // (same p, divisible extension degree).
    PointSet lifted(const FieldCtxPtr& target) const;

    // Dimension of the projective hull: rank of the coordinate matrix - 1.
    int hull_dim() const;

    Matrix coordinate_matrix() const; // |Z| x (n+1)

    // Text format: header `field p k` or `field rational`, then one point
    // per line, comma-separated coordinates. Finite-field coordinates are
    // element codes (sum of digit * p^i); rational coordinates are exact
    // integers.
    static PointSet parse(const std::string& text);
    std::string serialize() const;

    bool operator==(const PointSet& o) const;

private:
    FieldCtxPtr ctx_;
    uint32_t n_;
    std::vector<ProjPoint> pts_;
};

// Both sets lifted to the compositum of their contexts and concatenated;
// duplicates across the two sets are merged.
PointSet merge_lifted(const PointSet& a, const PointSet& b);

} // namespace cbws

#pragma once

#include "cbws/field.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace cbws {

inline constexpr uint32_t kMaxAmbientDim = 7;  // variables x_0..x_n, n <= 7
inline constexpr uint32_t kMaxFormDegree = 63; // exponents fit 6 bits

using Exponents = std::array<uint8_t, kMaxAmbientDim + 1>;

// Monomials of degree d in x_0..x_n, ordered by descending lexicographic
// exponent tuple with x_0 most significant: (2,2) lists x0^2, x0*x1, x0*x2,
// x1^2, x1*x2, x2^2. The order is fixed forever; every kernel, report, and
// serialized form depends on it. Instances are interned and shared.
class MonomialBasis {
public:
    static std::shared_ptr<const MonomialBasis> get(uint32_t n, uint32_t d);

    uint32_t n() const { return n_; }
    uint32_t d() const { return d_; }
    size_t size() const { return exps_.size(); }
    const Exponents& exponents(size_t i) const { return exps_[i]; }
    size_t index_of(const Exponents& e) const; // throws Domain if absent

    std::string monomial_string(size_t i) const;

private:
    MonomialBasis(uint32_t n, uint32_t d);
    uint32_t n_, d_;
    std::vector<Exponents> exps_;
    std::unordered_map<uint64_t, uint32_t> index_;
};

using MonomialBasisPtr = std::shared_ptr<const MonomialBasis>;

// Homogeneous form of degree d in n+1 variables: a dense coefficient vector
// over MonomialBasis(n, d).
class HomForm {
public:
    HomForm(FieldCtxPtr ctx, uint32_t n, uint32_t d); // zero form
    static HomForm from_coeffs(FieldCtxPtr ctx, uint32_t n, uint32_t d,
                               std::vector<FieldScalar> coeffs);

    const FieldCtxPtr& ctx() const { return ctx_; }
    uint32_t n() const { return basis_->n(); }
    uint32_t d() const { return basis_->d(); }
    const MonomialBasis& basis() const { return *basis_; }
    const FieldScalar& coeff(size_t i) const { return coeffs_[i]; }
    void set_coeff(size_t i, const FieldScalar& v);
    bool is_zero() const;

    // Coordinates may live in the form's own context or in one it embeds
    // into (same p, divisible degree); the result lives in the coordinate
    // context. All-zero coordinates are rejected.
    FieldScalar evaluate(const std::vector<FieldScalar>& coords) const;

    HomForm partial(uint32_t i) const; // formal d/dx_i, exponents mod p
    HomForm multiply(const HomForm& g) const;
    HomForm add(const HomForm& g) const;
    HomForm sub(const HomForm& g) const;
    HomForm scale(const FieldScalar& c) const;

    // Substitute x_i = sum_j lines[i][j] * y_j; lines has n+1 rows of equal
    // length m+1. Returns the degree-d form in y_0..y_m.
    HomForm substitute_linear(const std::vector<std::vector<FieldScalar>>& lines) const;

    bool operator==(const HomForm& g) const;
    std::string to_string() const;

private:
    FieldCtxPtr ctx_;
    MonomialBasisPtr basis_;
    std::vector<FieldScalar> coeffs_;
};

} // namespace cbws

// Univariate polynomials over a FieldCtx; characteristic/minimal polynomials,
// radicals over perfect fields, cyclotomics, and root finding in the ctx.

#ifndef FLATK_POLY_HPP
#define FLATK_POLY_HPP

#include <vector>

#include "matrix.hpp"

namespace flatk {

class Poly {
public:
    Poly() = default;
    explicit Poly(FieldCtx ctx) : ctx_(std::move(ctx)) {}
    Poly(FieldCtx ctx, std::vector<FieldElem> coeffs);
    static Poly x_power(const FieldCtx& ctx, int n);  // x^n
    static Poly constant(const FieldElem& c);

    const FieldCtx& ctx() const { return ctx_; }
    int degree() const { return int(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    FieldElem coeff(int i) const;
    const std::vector<FieldElem>& coeffs() const { return c_; }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    // quotient and remainder; divisor must be nonzero
    std::pair<Poly, Poly> divmod(const Poly& d) const;
    Poly operator/(const Poly& d) const;
    Poly operator%(const Poly& d) const;
    bool operator==(const Poly& o) const;

    Poly derivative() const;
    Poly monic() const;
    FieldElem eval(const FieldElem& v) const;
    Matrix eval(const Matrix& m) const;

    std::string to_string() const;

private:
    FieldCtx ctx_;
    std::vector<FieldElem> c_;  // c_[i] is the x^i coefficient; trimmed
    void trim();
};

Poly poly_gcd(const Poly& a, const Poly& b);  // monic
Poly poly_lcm(const Poly& a, const Poly& b);  // monic

// product of distinct irreducible factors (monic); exact over Q and over
// finite fields (perfect, so p-th powers are handled by Frobenius inverse)
Poly radical(const Poly& f);

Poly char_poly(const Matrix& m);  // monic, degree n
Poly min_poly(const Matrix& m);   // monic

// n-th cyclotomic polynomial over Q
Poly cyclotomic(const FieldCtx& q_ctx, int n);

// distinct roots of f lying in its coefficient field
std::vector<FieldElem> roots_in_ctx(const Poly& f);

// d-th roots of a scalar in its own field: exhaustive over finite fields,
// sign-aware integer root extraction on numerator/denominator over Q
std::vector<FieldElem> scalar_dth_roots(const FieldElem& a, long d);

}  // namespace flatk

#endif

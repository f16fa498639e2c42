// Dense exact matrices over a FieldCtx with Gaussian-elimination kernels.

#ifndef FLATK_MATRIX_HPP
#define FLATK_MATRIX_HPP

#include <optional>
#include <string>
#include <vector>

#include "field.hpp"

namespace flatk {

class Matrix {
public:
    Matrix() = default;
    Matrix(FieldCtx ctx, int rows, int cols);
    static Matrix identity(const FieldCtx& ctx, int n);
    static Matrix from_rows(const FieldCtx& ctx, const std::vector<std::vector<FieldElem>>& rows);
    static Matrix diagonal(const FieldCtx& ctx, const std::vector<FieldElem>& diag);
    static Matrix scalar(const FieldCtx& ctx, int n, const FieldElem& v);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    const FieldCtx& ctx() const { return ctx_; }

    const FieldElem& at(int i, int j) const { return a_[size_t(i) * size_t(cols_) + size_t(j)]; }
    FieldElem& at(int i, int j) { return a_[size_t(i) * size_t(cols_) + size_t(j)]; }

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix scaled(const FieldElem& c) const;
    Matrix transpose() const;
    Matrix pow(long e) const;  // square; negative exponents via inverse
    std::vector<FieldElem> apply(const std::vector<FieldElem>& v) const;

    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }
    bool is_identity() const;
    bool is_zero() const;

    FieldElem det() const;
    std::optional<Matrix> inverse() const;
    Matrix inverse_or_throw() const;
    int rank() const;
    // columns spanning {v : Mv = 0}
    std::vector<std::vector<FieldElem>> kernel_basis() const;
    // one solution of Mv = b if consistent
    std::optional<std::vector<FieldElem>> solve(const std::vector<FieldElem>& b) const;

    Matrix kronecker(const Matrix& o) const;

    // compact canonical serialization, usable as a hash key
    std::string key() const;
    std::string to_string() const;
    // canonical order on same-shape matrices (entrywise, row major)
    int cmp(const Matrix& o) const;

private:
    FieldCtx ctx_;
    int rows_ = 0, cols_ = 0;
    std::vector<FieldElem> a_;
    void check_compat(const Matrix& o, bool same_shape) const;
};

// Primes dividing any entry denominator or any determinant numerator of the
// given invertible rational matrices; the matrices then lie in GL_r over the
// integers localized away from this set.
std::vector<mpz_class> denominator_primes(const std::vector<Matrix>& mats);

// Entrywise reduction a/b -> a b^{-1} mod p. Requires p outside
// denominator_primes; every output matrix is invertible over F_p.
std::vector<Matrix> reduce_mod_p(const std::vector<Matrix>& mats, long p);

}  // namespace flatk

#endif

#include "matrix.hpp"

#include <algorithm>
#include <sstream>

namespace flatk {

Matrix::Matrix(FieldCtx ctx, int rows, int cols) : ctx_(std::move(ctx)), rows_(rows), cols_(cols) {
    a_.assign(size_t(rows) * size_t(cols), ctx_.zero());
}

Matrix Matrix::identity(const FieldCtx& ctx, int n) {
    Matrix m(ctx, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = ctx.one();
    return m;
}

Matrix Matrix::from_rows(const FieldCtx& ctx, const std::vector<std::vector<FieldElem>>& rows) {
    int r = int(rows.size());
    int c = r == 0 ? 0 : int(rows[0].size());
    Matrix m(ctx, r, c);
    for (int i = 0; i < r; ++i) {
        if (int(rows[size_t(i)].size()) != c) throw err_shape("ragged rows");
        for (int j = 0; j < c; ++j) {
            if (rows[size_t(i)][size_t(j)].ctx() != ctx) throw err_ctx_mismatch("matrix entry ctx");
            m.at(i, j) = rows[size_t(i)][size_t(j)];
        }
    }
    return m;
}

Matrix Matrix::diagonal(const FieldCtx& ctx, const std::vector<FieldElem>& diag) {
    int n = int(diag.size());
    Matrix m(ctx, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = diag[size_t(i)];
    return m;
}

Matrix Matrix::scalar(const FieldCtx& ctx, int n, const FieldElem& v) {
    Matrix m(ctx, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = v;
    return m;
}

void Matrix::check_compat(const Matrix& o, bool same_shape) const {
    if (ctx_ != o.ctx_) throw err_ctx_mismatch("matrix ctx mismatch");
    if (same_shape && (rows_ != o.rows_ || cols_ != o.cols_)) throw err_shape("shape mismatch");
}

Matrix Matrix::operator*(const Matrix& o) const {
    check_compat(o, false);
    if (cols_ != o.rows_)
        throw err_shape("inner dimensions " + std::to_string(cols_) + " vs " + std::to_string(o.rows_));
    Matrix r(ctx_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const FieldElem& aik = at(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) = r.at(i, j) + aik * o.at(k, j);
        }
    return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
    check_compat(o, true);
    Matrix r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = r.a_[i] + o.a_[i];
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    check_compat(o, true);
    Matrix r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = r.a_[i] - o.a_[i];
    return r;
}

Matrix Matrix::scaled(const FieldElem& c) const {
    Matrix r = *this;
    for (auto& x : r.a_) x = x * c;
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(ctx_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

Matrix Matrix::pow(long e) const {
    if (!is_square()) throw err_shape("pow on non-square matrix");
    Matrix base = *this;
    if (e < 0) {
        base = inverse_or_throw();
        e = -e;
    }
    Matrix acc = identity(ctx_, rows_);
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

std::vector<FieldElem> Matrix::apply(const std::vector<FieldElem>& v) const {
    if (int(v.size()) != cols_) throw err_shape("vector length mismatch");
    std::vector<FieldElem> r(size_t(rows_), ctx_.zero());
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (!at(i, j).is_zero()) r[size_t(i)] = r[size_t(i)] + at(i, j) * v[size_t(j)];
    return r;
}

bool Matrix::operator==(const Matrix& o) const {
    if (ctx_ != o.ctx_ || rows_ != o.rows_ || cols_ != o.cols_) return false;
    return a_ == o.a_;
}

bool Matrix::is_identity() const {
    if (!is_square()) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            if (i == j && !at(i, j).is_one()) return false;
            if (i != j && !at(i, j).is_zero()) return false;
        }
    return true;
}

bool Matrix::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

namespace {

// in-place row echelon; returns rank, records pivot columns; optionally full
// reduction (rref) and an augmented matrix transformed alongside
int echelon(Matrix& m, std::vector<int>& pivot_cols, bool reduce) {
    int rank = 0;
    int rows = m.rows(), cols = m.cols();
    pivot_cols.clear();
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pr = -1;
        for (int row = rank; row < rows; ++row)
            if (!m.at(row, col).is_zero()) { pr = row; break; }
        if (pr < 0) continue;
        if (pr != rank)
            for (int j = 0; j < cols; ++j) std::swap(m.at(pr, j), m.at(rank, j));
        FieldElem inv = m.at(rank, col).inv();
        for (int j = col; j < cols; ++j) m.at(rank, j) = m.at(rank, j) * inv;
        int row_start = reduce ? 0 : rank + 1;
        for (int row = row_start; row < rows; ++row) {
            if (row == rank) continue;
            FieldElem f = m.at(row, col);
            if (f.is_zero()) continue;
            for (int j = col; j < cols; ++j) m.at(row, j) = m.at(row, j) - f * m.at(rank, j);
        }
        pivot_cols.push_back(col);
        ++rank;
    }
    return rank;
}

}  // namespace

FieldElem Matrix::det() const {
    if (!is_square()) throw err_shape("det of non-square matrix");
    Matrix m = *this;
    FieldElem d = ctx_.one();
    int n = rows_;
    for (int col = 0; col < n; ++col) {
        int pr = -1;
        for (int row = col; row < n; ++row)
            if (!m.at(row, col).is_zero()) { pr = row; break; }
        if (pr < 0) return ctx_.zero();
        if (pr != col) {
            for (int j = 0; j < n; ++j) std::swap(m.at(pr, j), m.at(col, j));
            d = -d;
        }
        d = d * m.at(col, col);
        FieldElem inv = m.at(col, col).inv();
        for (int row = col + 1; row < n; ++row) {
            FieldElem f = m.at(row, col);
            if (f.is_zero()) continue;
            f = f * inv;
            for (int j = col; j < n; ++j) m.at(row, j) = m.at(row, j) - f * m.at(col, j);
        }
    }
    return d;
}

std::optional<Matrix> Matrix::inverse() const {
    if (!is_square()) throw err_shape("inverse of non-square matrix");
    int n = rows_;
    Matrix aug(ctx_, n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, n + i) = ctx_.one();
    }
    std::vector<int> piv;
    int rank = echelon(aug, piv, true);
    if (rank < n) return std::nullopt;
    Matrix inv(ctx_, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

Matrix Matrix::inverse_or_throw() const {
    auto inv = inverse();
    if (!inv) throw err_singular("matrix not invertible");
    return *inv;
}

int Matrix::rank() const {
    Matrix m = *this;
    std::vector<int> piv;
    return echelon(m, piv, false);
}

std::vector<std::vector<FieldElem>> Matrix::kernel_basis() const {
    Matrix m = *this;
    std::vector<int> piv;
    int rank = echelon(m, piv, true);
    std::vector<bool> is_pivot(size_t(cols_), false);
    for (int c : piv) is_pivot[size_t(c)] = true;
    std::vector<std::vector<FieldElem>> basis;
    for (int free = 0; free < cols_; ++free) {
        if (is_pivot[size_t(free)]) continue;
        std::vector<FieldElem> v(size_t(cols_), ctx_.zero());
        v[size_t(free)] = ctx_.one();
        for (int r = 0; r < rank; ++r) v[size_t(piv[size_t(r)])] = -m.at(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<FieldElem>> Matrix::solve(const std::vector<FieldElem>& b) const {
    if (int(b.size()) != rows_) throw err_shape("rhs length mismatch");
    Matrix aug(ctx_, rows_, cols_ + 1);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, cols_) = b[size_t(i)];
    }
    std::vector<int> piv;
    int rank = echelon(aug, piv, true);
    // inconsistent iff a pivot lands in the augmented column
    if (!piv.empty() && piv.back() == cols_) return std::nullopt;
    (void)rank;
    std::vector<FieldElem> x(size_t(cols_), ctx_.zero());
    for (size_t r = 0; r < piv.size(); ++r) x[size_t(piv[r])] = aug.at(int(r), cols_);
    return x;
}

Matrix Matrix::kronecker(const Matrix& o) const {
    check_compat(o, false);
    Matrix r(ctx_, rows_ * o.rows_, cols_ * o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            if (at(i, j).is_zero()) continue;
            for (int k = 0; k < o.rows_; ++k)
                for (int l = 0; l < o.cols_; ++l)
                    r.at(i * o.rows_ + k, j * o.cols_ + l) = at(i, j) * o.at(k, l);
        }
    return r;
}

std::string Matrix::key() const {
    std::ostringstream os;
    os << rows_ << 'x' << cols_ << ';';
    for (const auto& x : a_) os << x.to_string() << ',';
    return os.str();
}

std::string Matrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (int j = 0; j < cols_; ++j) os << (j ? ", " : "") << at(i, j).to_string();
        os << "]";
    }
    os << "]";
    return os.str();
}

int Matrix::cmp(const Matrix& o) const {
    check_compat(o, true);
    for (size_t i = 0; i < a_.size(); ++i) {
        int c = a_[i].cmp(o.a_[i]);
        if (c != 0) return c;
    }
    return 0;
}

std::vector<mpz_class> denominator_primes(const std::vector<Matrix>& mats) {
    std::vector<mpz_class> primes;
    for (const auto& m : mats) {
        if (!m.is_square()) throw err_shape("denominator_primes expects square matrices");
        if (!m.ctx().is_rationals()) throw err_ctx_mismatch("denominator_primes expects Q");
        FieldElem d = m.det();
        if (d.is_zero()) throw err_singular("singular matrix in denominator_primes");
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) {
                const mpq_class& q = m.at(i, j).rat();
                if (q.get_den() != 1)
                    for (auto& p : prime_factors(mpz_class(q.get_den()))) primes.push_back(p);
            }
        mpz_class num = d.rat().get_num();
        if (num != 1 && num != -1)
            for (auto& p : prime_factors(num)) primes.push_back(p);
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    return primes;
}

std::vector<Matrix> reduce_mod_p(const std::vector<Matrix>& mats, long p) {
    FieldCtx fp = FieldCtx::prime(p);
    std::vector<Matrix> out;
    out.reserve(mats.size());
    for (const auto& m : mats) {
        if (!m.ctx().is_rationals()) throw err_ctx_mismatch("reduce_mod_p expects Q");
        Matrix r(fp, m.rows(), m.cols());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) {
                const mpq_class& q = m.at(i, j).rat();
                mpz_class den = q.get_den();
                if (mpz_divisible_ui_p(den.get_mpz_t(), (unsigned long)p))
                    throw DomainError("PrimeDividesDenominatorOrDet",
                                      "entry denominator divisible by " + std::to_string(p));
                mpz_class num_m = q.get_num() % p, den_m = den % p;
                long n = num_m.get_si();
                if (n < 0) n += p;
                FieldElem fe = fp.from_int(n) / fp.from_int(den_m.get_si());
                r.at(i, j) = fe;
            }
        if (r.is_square() && r.det().is_zero())
            throw DomainError("PrimeDividesDenominatorOrDet",
                              "determinant vanishes mod " + std::to_string(p));
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace flatk

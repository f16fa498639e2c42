#include "matgroup.hpp"

#include <deque>
#include <numeric>
#include <random>

namespace flatk {

int FiniteMatrixGroup::find(const Matrix& m) const {
    auto it = index.find(m.key());
    return it == index.end() ? -1 : it->second;
}

int FiniteMatrixGroup::mul(int i, int j) const {
    int k = find(elements[size_t(i)] * elements[size_t(j)]);
    if (k < 0) throw DomainError("ClosureViolation", "product left the element set");
    return k;
}

int FiniteMatrixGroup::inv(int i) const {
    int k = find(elements[size_t(i)].inverse_or_throw());
    if (k < 0) throw DomainError("ClosureViolation", "inverse left the element set");
    return k;
}

bool has_finite_order_over_q(const Matrix& m) {
    Poly mp = min_poly(m);
    const FieldCtx& ctx = m.ctx();
    int deg = mp.degree();
    Poly prod(ctx, {ctx.one()});
    int bound = 2 * deg * deg + 2;
    for (int n = 1; n <= bound; ++n) {
        int phi = 0;
        for (int i = 1; i <= n; ++i)
            if (std::gcd(i, n) == 1) ++phi;
        if (phi > deg) continue;
        Poly cyc = cyclotomic(ctx, n);
        if ((mp % cyc).is_zero()) prod = prod * cyc;
    }
    return prod == mp;
}

std::optional<FiniteMatrixGroup> group_closure(const FieldCtx& ctx, int r,
                                               const std::vector<Matrix>& gens, long cap) {
    for (const auto& g : gens) {
        if (g.ctx() != ctx) throw err_ctx_mismatch("generator ctx");
        if (!g.is_square() || g.rows() != r) throw err_shape("generator shape");
        if (g.det().is_zero()) throw DomainError("SingularGenerator", "generator not invertible");
    }
    if (ctx.is_rationals())
        for (const auto& g : gens)
            if (!has_finite_order_over_q(g)) return std::nullopt;

    FiniteMatrixGroup grp;
    grp.ctx = ctx;
    grp.r = r;
    Matrix id = Matrix::identity(ctx, r);
    grp.elements.push_back(id);
    grp.index.emplace(id.key(), 0);
    std::deque<int> queue{0};
    while (!queue.empty()) {
        int i = queue.front();
        queue.pop_front();
        for (const auto& g : gens) {
            Matrix prod = grp.elements[size_t(i)] * g;
            std::string key = prod.key();
            if (grp.index.count(key)) continue;
            if (long(grp.elements.size()) >= cap) return std::nullopt;
            int idx = int(grp.elements.size());
            grp.index.emplace(std::move(key), idx);
            grp.elements.push_back(std::move(prod));
            queue.push_back(idx);
        }
    }
    for (const auto& g : gens) grp.generators.push_back(grp.find(g));
    return grp;
}

bool verify_closure_axioms(const FiniteMatrixGroup& g) {
    if (g.elements.empty() || !g.elements[0].is_identity()) return false;
    for (size_t i = 0; i < g.elements.size(); ++i) {
        if (g.find(g.elements[i].inverse_or_throw()) < 0) return false;
        for (size_t j = 0; j < g.elements.size(); ++j)
            if (g.find(g.elements[i] * g.elements[j]) < 0) return false;
    }
    return true;
}

std::vector<Matrix> intertwiner_basis(const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
    if (a.size() != b.size()) throw err_shape("intertwiner lists differ in length");
    if (a.empty()) throw err_shape("intertwiner of empty lists");
    const FieldCtx& ctx = a[0].ctx();
    int r = a[0].rows();
    for (const auto& m : a)
        if (!m.is_square() || m.rows() != r || m.ctx() != ctx) throw err_shape("intertwiner shapes");
    for (const auto& m : b)
        if (!m.is_square() || m.rows() != r || m.ctx() != ctx) throw err_shape("intertwiner shapes");
    // unknowns T_{il}, row-major; equations T A_k = B_k T entrywise
    int n_eq = int(a.size()) * r * r;
    Matrix sys(ctx, n_eq, r * r);
    int eq = 0;
    for (size_t k = 0; k < a.size(); ++k) {
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                for (int l = 0; l < r; ++l) {
                    sys.at(eq, i * r + l) = sys.at(eq, i * r + l) + a[k].at(l, j);
                    sys.at(eq, l * r + j) = sys.at(eq, l * r + j) - b[k].at(i, l);
                }
                ++eq;
            }
    }
    std::vector<Matrix> basis;
    for (const auto& v : sys.kernel_basis()) {
        Matrix t(ctx, r, r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) t.at(i, j) = v[size_t(i * r + j)];
        basis.push_back(std::move(t));
    }
    return basis;
}

ConjugacyOutcome conjugacy_witness(const std::vector<Matrix>& a, const std::vector<Matrix>& b,
                                   int trials, unsigned long seed) {
    if (a.size() != b.size()) throw err_shape("conjugacy lists differ in length");
    if (a.empty()) throw err_shape("conjugacy of empty lists");
    const FieldCtx& ctx = a[0].ctx();
    int r = a[0].rows();
    if (a == b) return {ConjugacyStatus::Witness, Matrix::identity(ctx, r)};
    for (size_t k = 0; k < a.size(); ++k) {
        if (!(char_poly(a[k]) == char_poly(b[k]))) return {ConjugacyStatus::ProvablyDistinct, {}};
        if (!(min_poly(a[k]) == min_poly(b[k]))) return {ConjugacyStatus::ProvablyDistinct, {}};
    }

    auto basis = intertwiner_basis(a, b);
    size_t dim = basis.size();
    if (dim == 0) return {ConjugacyStatus::ProvablyDistinct, {}};

    auto combine = [&](const std::vector<FieldElem>& coeffs) {
        Matrix t(ctx, r, r);
        for (size_t i = 0; i < dim; ++i)
            if (!coeffs[i].is_zero()) t = t + basis[i].scaled(coeffs[i]);
        return t;
    };
    auto verify = [&](const Matrix& t) {
        Matrix ti = t.inverse_or_throw();
        for (size_t k = 0; k < a.size(); ++k)
            if (!(t * a[k] * ti == b[k]))
                throw DomainError("InternalError", "intertwiner failed conjugacy verification");
    };

    if (ctx.is_finite()) {
        double space = 1;
        for (size_t i = 0; i < dim; ++i) space *= double(ctx.order());
        if (space <= 1e6) {
            long q = ctx.order();
            long total = 1;
            for (size_t i = 0; i < dim; ++i) total *= q;
            for (long counter = 1; counter < total; ++counter) {
                long c = counter;
                std::vector<FieldElem> coeffs;
                coeffs.reserve(dim);
                for (size_t i = 0; i < dim; ++i) {
                    coeffs.push_back(ctx.from_index(c % q));
                    c /= q;
                }
                Matrix t = combine(coeffs);
                if (!t.det().is_zero()) {
                    verify(t);
                    return {ConjugacyStatus::Witness, t};
                }
            }
            return {ConjugacyStatus::ProvablyDistinct, {}};  // exhaustive: no invertible intertwiner
        }
    }

    std::mt19937_64 rng(seed);
    long range = 2;
    for (int t = 0; t < trials; ++t) {
        std::vector<FieldElem> coeffs;
        coeffs.reserve(dim);
        for (size_t i = 0; i < dim; ++i) {
            if (ctx.is_rationals()) {
                std::uniform_int_distribution<long> dist(-range, range);
                coeffs.push_back(ctx.from_int(dist(rng)));
            } else {
                std::uniform_int_distribution<long> dist(0, ctx.order() - 1);
                coeffs.push_back(ctx.from_index(dist(rng)));
            }
        }
        Matrix m = combine(coeffs);
        if (!m.det().is_zero()) {
            verify(m);
            return {ConjugacyStatus::Witness, m};
        }
        if (range < (1L << 30)) range *= 2;
    }
    return {ConjugacyStatus::NotFoundInTrials, {}};
}

JordanPair jordan_multiplicative(const Matrix& m) {
    if (!m.is_square()) throw err_shape("jordan of non-square matrix");
    if (m.det().is_zero()) throw err_singular("jordan of singular matrix");
    const FieldCtx& ctx = m.ctx();
    int r = m.rows();
    Poly f = radical(char_poly(m));
    Poly fp = f.derivative();
    Matrix x = m;
    bool converged = false;
    for (int it = 0; it < 64; ++it) {
        Matrix fx = f.eval(x);
        if (fx.is_zero()) {
            converged = true;
            break;
        }
        Matrix fpx = fp.eval(x);
        auto inv = fpx.inverse();
        if (!inv) throw DomainError("InternalError", "Newton step not invertible");
        x = x - fx * *inv;
    }
    if (!converged && !f.eval(x).is_zero())
        throw DomainError("InternalError", "Newton iteration did not converge");
    Matrix s = x;
    Matrix u = s.inverse_or_throw() * m;
    (void)r;
    return {std::move(s), std::move(u)};
}

MatrixRootOutcome matrix_root(const Matrix& m, long d) {
    if (!m.is_square()) throw err_shape("matrix_root of non-square matrix");
    if (m.det().is_zero()) throw err_singular("matrix_root of singular matrix");
    if (d <= 0) throw DomainError("BadArgument", "root degree must be positive");
    const FieldCtx& ctx = m.ctx();
    int r = m.rows();
    if (d == 1) return {RootStatus::Found, m};
    Poly mp = min_poly(m);
    std::vector<FieldElem> eigs = roots_in_ctx(mp);
    Poly split(ctx, {ctx.one()});
    Poly xp = Poly::x_power(ctx, 1);
    for (const auto& lam : eigs) split = split * (xp - Poly::constant(lam));
    if (!(split == mp.monic())) {
        // minimal polynomial does not split into distinct linear factors here
        return {RootStatus::UnsupportedClass, {}};
    }
    std::vector<FieldElem> root_of;
    for (const auto& lam : eigs) {
        auto rts = scalar_dth_roots(lam, d);
        if (rts.empty()) return {RootStatus::NoRootFound, {}};
        root_of.push_back(rts[0]);
    }
    // assemble eigenbasis
    Matrix p(ctx, r, r);
    std::vector<FieldElem> diag;
    int col = 0;
    for (size_t e = 0; e < eigs.size(); ++e) {
        Matrix shifted = m - Matrix::scalar(ctx, r, eigs[e]);
        for (const auto& v : shifted.kernel_basis()) {
            if (col >= r) throw DomainError("InternalError", "eigenbasis overflow");
            for (int i = 0; i < r; ++i) p.at(i, col) = v[size_t(i)];
            diag.push_back(root_of[e]);
            ++col;
        }
    }
    if (col != r) throw DomainError("InternalError", "eigenbasis incomplete for split minimal polynomial");
    Matrix n = p * Matrix::diagonal(ctx, diag) * p.inverse_or_throw();
    if (!(n.pow(d) == m)) throw DomainError("InternalError", "root verification failed");
    return {RootStatus::Found, n};
}

}  // namespace flatk

#include "cohomology.hpp"

#include <cmath>
#include <map>

namespace flatk {

CochainData cochain_data(const TwoComplex& x, const FieldCtx& ctx) {
    validate_or_throw(x);
    int nv = int(x.vertices.size()), ne = int(x.edges.size()), nf = int(x.faces.size());
    CochainData d{ctx, Matrix(ctx, ne, nv), Matrix(ctx, nf, ne)};
    for (int e = 0; e < ne; ++e) {
        d.d0.at(e, x.edges[size_t(e)].dst) = d.d0.at(e, x.edges[size_t(e)].dst) + ctx.one();
        d.d0.at(e, x.edges[size_t(e)].src) = d.d0.at(e, x.edges[size_t(e)].src) - ctx.one();
    }
    for (int f = 0; f < nf; ++f)
        for (const auto& r : x.faces[size_t(f)])
            d.d1.at(f, r.edge) =
                d.d1.at(f, r.edge) + (r.sign > 0 ? ctx.one() : -ctx.one());
    return d;
}

namespace {

// incremental rank bookkeeping for picking representatives
struct RankTracker {
    Matrix cols;  // n x k
    int n;
    explicit RankTracker(const FieldCtx& ctx, int n_) : cols(ctx, n_, 0), n(n_) {}
    int rank() const { return cols.cols() == 0 ? 0 : cols.rank(); }
    bool try_add(const std::vector<FieldElem>& v) {
        Matrix next(cols.ctx(), n, cols.cols() + 1);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < cols.cols(); ++j) next.at(i, j) = cols.at(i, j);
            next.at(i, cols.cols()) = v[size_t(i)];
        }
        if (next.rank() > cols.rank()) {
            cols = std::move(next);
            return true;
        }
        return false;
    }
};

}  // namespace

CohomBasis h1_constant(const TwoComplex& x, const FieldCtx& ctx) {
    CochainData d = cochain_data(x, ctx);
    int ne = int(x.edges.size());
    std::vector<std::vector<FieldElem>> kernel;
    if (d.d1.rows() == 0) {
        for (int e = 0; e < ne; ++e) {
            std::vector<FieldElem> v(size_t(ne), ctx.zero());
            v[size_t(e)] = ctx.one();
            kernel.push_back(std::move(v));
        }
    } else {
        kernel = d.d1.kernel_basis();
    }
    RankTracker tracker(ctx, ne);
    for (int c = 0; c < d.d0.cols(); ++c) {
        std::vector<FieldElem> col(size_t(ne), ctx.zero());
        for (int e = 0; e < ne; ++e) col[size_t(e)] = d.d0.at(e, c);
        tracker.try_add(col);
    }
    CohomBasis out;
    for (auto& v : kernel)
        if (tracker.try_add(v)) out.basis.push_back(v);
    out.dim = int(out.basis.size());
    return out;
}

CohomBasis hom_to_additive(const SpacePtr& x, const FieldCtx& ctx) {
    const auto& pres = x->pres();
    int n = int(pres.generators.size());
    int nr = int(pres.relators.size());
    CohomBasis out;
    if (n == 0) {
        out.dim = 0;
        return out;
    }
    if (nr == 0) {
        for (int g = 0; g < n; ++g) {
            std::vector<FieldElem> v(size_t(n), ctx.zero());
            v[size_t(g)] = ctx.one();
            out.basis.push_back(std::move(v));
        }
        out.dim = n;
        return out;
    }
    Matrix rel(ctx, nr, n);
    for (int i = 0; i < nr; ++i)
        for (const auto& l : pres.relators[size_t(i)])
            rel.at(i, l.gen) = rel.at(i, l.gen) + (l.sign > 0 ? ctx.one() : -ctx.one());
    out.basis = rel.kernel_basis();
    out.dim = int(out.basis.size());
    return out;
}

bool cohomologous(const TwoComplex& x, const FieldCtx& ctx, const std::vector<FieldElem>& a,
                  const std::vector<FieldElem>& b) {
    CochainData d = cochain_data(x, ctx);
    if (a.size() != x.edges.size() || b.size() != x.edges.size())
        throw err_shape("cochain length mismatch");
    std::vector<FieldElem> diff(a.size(), ctx.zero());
    for (size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
    return d.d0.solve(diff).has_value();
}

LocalSystem unipotent_from_class(const SpacePtr& x, const FieldCtx& ctx,
                                 const std::vector<FieldElem>& xi) {
    const auto& cx = x->complex();
    if (xi.size() != cx.edges.size()) throw err_shape("cochain length mismatch");
    CochainData d = cochain_data(cx, ctx);
    auto img = d.d1.apply(xi);
    for (const auto& v : img)
        if (!v.is_zero()) throw DomainError("NotACocycle", "the edge cochain is not closed");
    const auto& pres = x->pres();
    auto loop_sum = [&](int gen_edge) {
        FieldElem acc = ctx.zero();
        const auto& e = cx.edges[size_t(gen_edge)];
        for (const auto& r : pres.path_from_base(e.src))
            acc = acc + (r.sign > 0 ? xi[size_t(r.edge)] : -xi[size_t(r.edge)]);
        acc = acc + xi[size_t(gen_edge)];
        for (const auto& r : pres.path_from_base(e.dst))
            acc = acc - (r.sign > 0 ? xi[size_t(r.edge)] : -xi[size_t(r.edge)]);
        return acc;
    };
    std::vector<Matrix> rep;
    for (int ei : pres.generators) {
        Matrix m = Matrix::identity(ctx, 2);
        m.at(0, 1) = loop_sum(ei);
        rep.push_back(std::move(m));
    }
    return LocalSystem(x, ctx, 2, std::move(rep));
}

std::vector<FieldElem> class_from_unipotent(const LocalSystem& e) {
    if (e.rank() != 2) throw err_shape("unipotent class extraction needs rank 2");
    const auto& cx = e.space()->complex();
    const auto& pres = e.space()->pres();
    for (const auto& m : e.reps())
        if (!(m.at(0, 0).is_one() && m.at(1, 1).is_one() && m.at(1, 0).is_zero()))
            throw DomainError("NotUnipotent", "representation is not upper unitriangular");
    std::vector<FieldElem> xi(cx.edges.size(), e.ctx().zero());
    for (size_t ei = 0; ei < cx.edges.size(); ++ei)
        if (!pres.edge_in_tree[ei]) xi[ei] = e.rep(pres.gen_of_edge[ei]).at(0, 1);
    return xi;
}

GlrClasses h1_glr_enumerate(const SpacePtr& x, const FieldCtx& ctx, int r, long cap) {
    if (!ctx.is_finite()) throw err_ctx_mismatch("class enumeration needs a finite field");
    const auto& pres = x->pres();
    int n = int(pres.generators.size());
    long q = ctx.order();
    double size = std::pow(double(q), double(r) * r * std::max(n, 1));
    if (size > double(cap))
        throw DomainError("CapExceeded", "enumeration space exceeds the cap");

    // all invertible matrices, ascending in the entrywise order used by
    // Matrix::cmp (row-major, first entry most significant)
    std::vector<Matrix> gl;
    long cells = 1;
    for (int i = 0; i < r * r; ++i) cells *= q;
    for (long code = 0; code < cells; ++code) {
        Matrix m(ctx, r, r);
        long c = code;
        for (int cell = r * r - 1; cell >= 0; --cell) {
            m.at(cell / r, cell % r) = ctx.from_index(c % q);
            c /= q;
        }
        if (!m.det().is_zero()) gl.push_back(std::move(m));
    }
    std::vector<Matrix> gl_inv;
    gl_inv.reserve(gl.size());
    for (const auto& m : gl) gl_inv.push_back(m.inverse_or_throw());

    GlrClasses out;
    out.q = q;
    out.r = r;
    if (n == 0) {
        out.representatives.push_back({});
        out.orbit_sizes.push_back(1);
        out.total_tuples = 1;
        return out;
    }

    auto eval_word = [&](const std::vector<int>& tuple, const Word& w) {
        Matrix acc = Matrix::identity(ctx, r);
        for (const auto& l : w) {
            const Matrix& m = gl[size_t(tuple[size_t(l.gen)])];
            acc = (l.sign > 0 ? m : gl_inv[size_t(tuple[size_t(l.gen)])]) * acc;
        }
        return acc;
    };

    // enumerate valid tuples in lexicographic order (first generator most
    // significant; gl is already sorted entrywise)
    long ngl = long(gl.size());
    std::vector<std::vector<int>> tuples;
    std::vector<int> tuple(size_t(n), 0);
    while (true) {
        bool ok = true;
        for (const auto& rel : pres.relators)
            if (!eval_word(tuple, rel).is_identity()) {
                ok = false;
                break;
            }
        if (ok) tuples.push_back(tuple);
        int pos = n - 1;
        while (pos >= 0 && tuple[size_t(pos)] == int(ngl) - 1) {
            tuple[size_t(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++tuple[size_t(pos)];
    }
    out.total_tuples = long(tuples.size());

    std::map<std::vector<int>, size_t> pos_of;
    for (size_t i = 0; i < tuples.size(); ++i) pos_of.emplace(tuples[i], i);
    std::vector<bool> used(tuples.size(), false);
    for (size_t i = 0; i < tuples.size(); ++i) {
        if (used[i]) continue;
        // orbit of tuples[i] under simultaneous conjugation
        long orbit = 0;
        std::vector<size_t> stack{i};
        used[i] = true;
        while (!stack.empty()) {
            size_t cur = stack.back();
            stack.pop_back();
            ++orbit;
            for (size_t tknum = 0; tknum < gl.size(); ++tknum) {
                std::vector<int> img(static_cast<size_t>(n));
                bool bad = false;
                for (int g = 0; g < n; ++g) {
                    Matrix conj = gl[tknum] * gl[size_t(tuples[cur][size_t(g)])] * gl_inv[tknum];
                    // find conj in gl by key
                    long lo = 0, hi = long(gl.size()) - 1, found = -1;
                    while (lo <= hi) {
                        long mid = (lo + hi) / 2;
                        int cmp = gl[size_t(mid)].cmp(conj);
                        if (cmp == 0) { found = mid; break; }
                        if (cmp < 0) lo = mid + 1; else hi = mid - 1;
                    }
                    if (found < 0) { bad = true; break; }
                    img[size_t(g)] = int(found);
                }
                if (bad) throw DomainError("InternalError", "conjugate escaped GL enumeration");
                auto it = pos_of.find(img);
                if (it == pos_of.end())
                    throw DomainError("InternalError", "conjugate tuple fails the relators");
                if (!used[it->second]) {
                    used[it->second] = true;
                    stack.push_back(it->second);
                }
            }
        }
        std::vector<Matrix> rep_mats;
        for (int g = 0; g < n; ++g) rep_mats.push_back(gl[size_t(tuples[i][size_t(g)])]);
        out.representatives.push_back(std::move(rep_mats));
        out.orbit_sizes.push_back(orbit);
    }
    return out;
}

}  // namespace flatk

#include "locsys.hpp"

namespace flatk {

std::shared_ptr<const PresentedSpace> PresentedSpace::make(TwoComplex cx) {
    auto sp = std::make_shared<PresentedSpace>();
    sp->cx_ = std::move(cx);
    sp->pres_ = fundamental_presentation(sp->cx_);
    return sp;
}

void check_same_space(const SpacePtr& a, const SpacePtr& b) {
    if (a == b) return;
    if (!a || !b || !(a->complex() == b->complex()))
        throw err_space_mismatch("operands live on different complexes");
}

CechCocycle::CechCocycle(TwoComplex cx, FieldCtx ctx, int rank, std::vector<Matrix> labels)
    : cx_(std::move(cx)), ctx_(std::move(ctx)), rank_(rank), labels_(std::move(labels)) {
    if (labels_.size() != cx_.edges.size())
        throw err_shape("cocycle needs one label per edge");
    for (const auto& m : labels_) {
        if (m.ctx() != ctx_) throw err_ctx_mismatch("cocycle label ctx");
        if (!m.is_square() || m.rows() != rank_) throw err_shape("cocycle label shape");
        if (m.det().is_zero()) throw err_singular("cocycle label not invertible");
    }
    for (size_t f = 0; f < cx_.faces.size(); ++f) {
        if (!transport(cx_.faces[f]).is_identity())
            throw DomainError("FaceProductNotIdentity",
                              "face " + std::to_string(f) + " has non-identity product");
    }
}

Matrix CechCocycle::label(const EdgeRef& r) const {
    return r.sign > 0 ? labels_[size_t(r.edge)] : labels_[size_t(r.edge)].inverse_or_throw();
}

Matrix CechCocycle::transport(const std::vector<EdgeRef>& path) const {
    Matrix acc = Matrix::identity(ctx_, rank_);
    for (const auto& r : path) acc = label(r) * acc;
    return acc;
}

LocalSystem::LocalSystem(SpacePtr space, FieldCtx ctx, int rank, std::vector<Matrix> rep)
    : space_(std::move(space)), ctx_(std::move(ctx)), rank_(rank), rep_(std::move(rep)) {
    if (!space_) throw err_space_mismatch("null space");
    if (int(rep_.size()) != space_->n_gens())
        throw err_shape("need one matrix per generator (" + std::to_string(space_->n_gens()) + ")");
    for (const auto& m : rep_) {
        if (m.ctx() != ctx_) throw err_ctx_mismatch("representation matrix ctx");
        if (!m.is_square() || m.rows() != rank_) throw err_shape("representation matrix shape");
        if (m.det().is_zero()) throw err_singular("representation matrix not invertible");
    }
    for (const auto& rel : space_->pres().relators)
        if (!evaluate(rel).is_identity())
            throw DomainError("RelatorViolation", "a face relator does not map to the identity");
}

Matrix LocalSystem::evaluate(const Word& w) const {
    Matrix acc = Matrix::identity(ctx_, rank_);
    for (const auto& l : w) {
        const Matrix& m = rep_[size_t(l.gen)];
        acc = (l.sign > 0 ? m : m.inverse_or_throw()) * acc;
    }
    return acc;
}

bool LocalSystem::is_trivial() const {
    for (const auto& m : rep_)
        if (!m.is_identity()) return false;
    return true;
}

LocalSystem trivial_system(const SpacePtr& space, const FieldCtx& ctx, int rank) {
    std::vector<Matrix> rep(size_t(space->n_gens()), Matrix::identity(ctx, rank));
    return LocalSystem(space, ctx, rank, std::move(rep));
}

LocalSystem from_cocycle(const CechCocycle& c, SpacePtr space_hint) {
    SpacePtr space = (space_hint && space_hint->complex() == c.complex())
                         ? space_hint
                         : PresentedSpace::make(c.complex());
    const auto& pres = space->pres();
    const auto& cx = space->complex();
    // transport from the basepoint to every vertex along the tree, in BFS
    // discovery order so parents are ready
    std::vector<Matrix> to_vertex(cx.vertices.size());
    for (int v : pres.bfs_order) {
        int parent = pres.parent_vertex[size_t(v)];
        to_vertex[size_t(v)] = parent == -1 ? Matrix::identity(c.ctx(), c.rank())
                                            : c.label(pres.parent_edge[size_t(v)]) * to_vertex[size_t(parent)];
    }
    std::vector<Matrix> rep;
    rep.reserve(pres.generators.size());
    for (int ei : pres.generators) {
        const auto& e = cx.edges[size_t(ei)];
        rep.push_back(to_vertex[size_t(e.dst)].inverse_or_throw() * c.label(ei) *
                      to_vertex[size_t(e.src)]);
    }
    return LocalSystem(space, c.ctx(), c.rank(), std::move(rep));
}

CechCocycle to_cocycle(const LocalSystem& e) {
    const auto& cx = e.space()->complex();
    const auto& pres = e.space()->pres();
    std::vector<Matrix> labels;
    labels.reserve(cx.edges.size());
    for (size_t ei = 0; ei < cx.edges.size(); ++ei)
        labels.push_back(pres.edge_in_tree[ei] ? Matrix::identity(e.ctx(), e.rank())
                                               : e.rep(pres.gen_of_edge[ei]));
    return CechCocycle(cx, e.ctx(), e.rank(), std::move(labels));
}

LocalSystem direct_sum(const LocalSystem& e, const LocalSystem& f) {
    check_same_space(e.space(), f.space());
    if (e.ctx() != f.ctx()) throw err_ctx_mismatch("direct_sum over different fields");
    int r = e.rank() + f.rank();
    std::vector<Matrix> rep;
    for (int g = 0; g < e.space()->n_gens(); ++g) {
        Matrix m(e.ctx(), r, r);
        for (int i = 0; i < e.rank(); ++i)
            for (int j = 0; j < e.rank(); ++j) m.at(i, j) = e.rep(g).at(i, j);
        for (int i = 0; i < f.rank(); ++i)
            for (int j = 0; j < f.rank(); ++j) m.at(e.rank() + i, e.rank() + j) = f.rep(g).at(i, j);
        rep.push_back(std::move(m));
    }
    return LocalSystem(e.space(), e.ctx(), r, std::move(rep));
}

LocalSystem tensor(const LocalSystem& e, const LocalSystem& f) {
    check_same_space(e.space(), f.space());
    if (e.ctx() != f.ctx()) throw err_ctx_mismatch("tensor over different fields");
    std::vector<Matrix> rep;
    for (int g = 0; g < e.space()->n_gens(); ++g) rep.push_back(e.rep(g).kronecker(f.rep(g)));
    return LocalSystem(e.space(), e.ctx(), e.rank() * f.rank(), std::move(rep));
}

LocalSystem dual(const LocalSystem& e) {
    std::vector<Matrix> rep;
    for (int g = 0; g < e.space()->n_gens(); ++g)
        rep.push_back(e.rep(g).inverse_or_throw().transpose());
    return LocalSystem(e.space(), e.ctx(), e.rank(), std::move(rep));
}

LocalSystem hom(const LocalSystem& e, const LocalSystem& f) { return tensor(dual(e), f); }

std::optional<FiniteMatrixGroup> monodromy_image(const LocalSystem& e, long cap) {
    return group_closure(e.ctx(), e.rank(), e.reps(), cap);
}

IsoOutcome iso_test(const LocalSystem& e, const LocalSystem& f, int trials, unsigned long seed) {
    check_same_space(e.space(), f.space());
    if (e.ctx() != f.ctx()) throw err_ctx_mismatch("iso_test over different fields");
    if (e.rank() != f.rank()) return {IsoStatus::ProvablyDistinct, {}};
    int n = e.space()->n_gens();
    if (n == 0) return {IsoStatus::Isomorphic, Matrix::identity(e.ctx(), e.rank())};
    // characteristic polynomials of matched short words are conjugacy
    // invariants; compare a deterministic batch before searching
    std::vector<Word> probes;
    for (int g = 0; g < n; ++g) probes.push_back({{g, 1}});
    for (int g = 0; g < n && n > 1; ++g)
        for (int h = 0; h < n; ++h)
            if (g != h) probes.push_back({{g, 1}, {h, 1}});
    for (const auto& w : probes)
        if (!(char_poly(e.evaluate(w)) == char_poly(f.evaluate(w))))
            return {IsoStatus::ProvablyDistinct, {}};
    auto out = conjugacy_witness(e.reps(), f.reps(), trials, seed);
    switch (out.status) {
        case ConjugacyStatus::Witness: return {IsoStatus::Isomorphic, out.witness};
        case ConjugacyStatus::ProvablyDistinct: return {IsoStatus::ProvablyDistinct, {}};
        case ConjugacyStatus::NotFoundInTrials: return {IsoStatus::Inconclusive, {}};
    }
    return {IsoStatus::Inconclusive, {}};
}

std::vector<std::vector<FieldElem>> global_sections(const LocalSystem& e) {
    int n = e.space()->n_gens();
    int r = e.rank();
    Matrix stacked(e.ctx(), n * r, r);
    for (int g = 0; g < n; ++g) {
        Matrix diff = e.rep(g) - Matrix::identity(e.ctx(), r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) stacked.at(g * r + i, j) = diff.at(i, j);
    }
    if (n == 0) {
        std::vector<std::vector<FieldElem>> full;
        for (int j = 0; j < r; ++j) {
            std::vector<FieldElem> v(size_t(r), e.ctx().zero());
            v[size_t(j)] = e.ctx().one();
            full.push_back(std::move(v));
        }
        return full;
    }
    return stacked.kernel_basis();
}

TrivialSub max_trivial_sub(const LocalSystem& e) {
    auto basis = global_sections(e);
    int d = int(basis.size());
    Matrix inc(e.ctx(), e.rank(), d);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < e.rank(); ++i) inc.at(i, j) = basis[size_t(j)][size_t(i)];
    return {d, inc, trivial_system(e.space(), e.ctx(), d)};
}

}  // namespace flatk

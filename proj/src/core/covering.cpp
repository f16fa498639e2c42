#include "covering.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace flatk {

int Covering::basepoint_lift(int fiber) const {
    if (fiber < 0 || fiber >= degree) throw DomainError("BadArgument", "fiber out of range");
    return total_vertex(base->complex().basepoint, fiber);
}

namespace {

std::vector<int> inverse_perm(const std::vector<int>& p) {
    std::vector<int> r(p.size());
    for (size_t i = 0; i < p.size(); ++i) r[size_t(p[i])] = int(i);
    return r;
}

Covering build_cover(SpacePtr base, int deg, const std::vector<std::vector<int>>& gen_act,
                     GroupPtr group, std::vector<int> rho, bool group_mode) {
    const auto& cx = base->complex();
    const auto& pres = base->pres();
    Covering c;
    c.base = std::move(base);
    c.degree = deg;
    c.group = std::move(group);
    c.rho = std::move(rho);
    c.group_mode = group_mode;

    std::vector<int> id(static_cast<size_t>(deg));
    for (int i = 0; i < deg; ++i) id[size_t(i)] = i;
    c.edge_act.assign(cx.edges.size(), id);
    for (size_t g = 0; g < pres.generators.size(); ++g)
        c.edge_act[size_t(pres.generators[g])] = gen_act[g];
    std::vector<std::vector<int>> inv_act;
    inv_act.reserve(c.edge_act.size());
    for (const auto& a : c.edge_act) inv_act.push_back(inverse_perm(a));

    // faces must act trivially on every fiber point
    for (size_t f = 0; f < cx.faces.size(); ++f) {
        std::vector<int> acc = id;
        for (const auto& r : cx.faces[f]) {
            const auto& step = r.sign > 0 ? c.edge_act[size_t(r.edge)] : inv_act[size_t(r.edge)];
            for (auto& v : acc) v = step[size_t(v)];
        }
        if (acc != id)
            throw DomainError("RelatorViolation",
                              "face " + std::to_string(f) + " does not act trivially on the fiber");
    }

    TwoComplex& t = c.total;
    for (size_t v = 0; v < cx.vertices.size(); ++v)
        for (int s = 0; s < deg; ++s) {
            t.vertices.push_back(cx.vertices[v] + "@" + std::to_string(s));
            c.vert_base.push_back(int(v));
            c.vert_fiber.push_back(s);
        }
    for (size_t e = 0; e < cx.edges.size(); ++e)
        for (int s = 0; s < deg; ++s) {
            const auto& be = cx.edges[e];
            t.edges.push_back({be.id + "@" + std::to_string(s),
                               c.total_vertex(be.src, s),
                               c.total_vertex(be.dst, c.edge_act[e][size_t(s)])});
            c.edge_base.push_back(int(e));
            c.edge_fiber.push_back(s);
        }
    for (size_t f = 0; f < cx.faces.size(); ++f)
        for (int s = 0; s < deg; ++s) {
            std::vector<EdgeRef> lifted;
            int at = s;
            for (const auto& r : cx.faces[f]) {
                if (r.sign > 0) {
                    lifted.push_back({c.total_edge(r.edge, at), 1});
                    at = c.edge_act[size_t(r.edge)][size_t(at)];
                } else {
                    int from = inv_act[size_t(r.edge)][size_t(at)];
                    lifted.push_back({c.total_edge(r.edge, from), -1});
                    at = from;
                }
            }
            t.faces.push_back(std::move(lifted));
        }
    t.basepoint = c.total_vertex(cx.basepoint, 0);

    // connectivity of the fiber action decides connectivity of the total
    std::vector<bool> seen(size_t(deg), false);
    std::deque<int> queue{0};
    seen[0] = true;
    int reached = 1;
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        for (size_t g = 0; g < pres.generators.size(); ++g) {
            int ge = pres.generators[g];
            for (int nxt : {c.edge_act[size_t(ge)][size_t(s)], inv_act[size_t(ge)][size_t(s)]}) {
                if (!seen[size_t(nxt)]) {
                    seen[size_t(nxt)] = true;
                    ++reached;
                    queue.push_back(nxt);
                }
            }
        }
    }
    c.connected = reached == deg;
    c.galois = c.group_mode && c.connected;
    return c;
}

}  // namespace

Covering schreier_cover(SpacePtr base, GroupPtr group, std::vector<int> rho) {
    const auto& pres = base->pres();
    if (rho.size() != pres.generators.size())
        throw err_shape("rho needs one group element per generator");
    int n = group->size();
    for (int e : rho)
        if (e < 0 || e >= n) throw DomainError("BadArgument", "rho element out of range");
    std::vector<std::vector<int>> gen_act;
    for (size_t g = 0; g < rho.size(); ++g) {
        std::vector<int> act(static_cast<size_t>(n));
        for (int s = 0; s < n; ++s) act[size_t(s)] = group->mul(s, rho[g]);
        gen_act.push_back(std::move(act));
    }
    return build_cover(std::move(base), n, gen_act, group, std::move(rho), true);
}

Covering schreier_cover_action(SpacePtr base, int n, const std::vector<std::vector<int>>& action) {
    const auto& pres = base->pres();
    if (action.size() != pres.generators.size())
        throw err_shape("action needs one permutation per generator");
    for (const auto& a : action) {
        if (int(a.size()) != n) throw err_shape("permutation degree mismatch");
        std::vector<bool> seen(size_t(n), false);
        for (int v : a) {
            if (v < 0 || v >= n || seen[size_t(v)])
                throw DomainError("BadArgument", "not a permutation of the fiber");
            seen[size_t(v)] = true;
        }
    }
    return build_cover(std::move(base), n, action, nullptr, {}, false);
}

std::vector<std::string> validate_covering(const Covering& c) {
    std::vector<std::string> errs;
    const auto& base = c.base->complex();
    const auto& t = c.total;
    if (c.vert_base.size() != t.vertices.size() || c.edge_base.size() != t.edges.size()) {
        errs.push_back("ProjectionIncomplete: projection tables do not match the total complex");
        return errs;
    }
    for (size_t e = 0; e < t.edges.size(); ++e) {
        const auto& te = t.edges[e];
        const auto& be = base.edges[size_t(c.edge_base[e])];
        if (c.vert_base[size_t(te.src)] != be.src || c.vert_base[size_t(te.dst)] != be.dst) {
            errs.push_back("ProjectionMismatch: edge " + te.id + " does not lie over its base edge");
            return errs;
        }
    }
    std::vector<int> fiber_count(base.vertices.size(), 0);
    for (int b : c.vert_base) ++fiber_count[size_t(b)];
    for (size_t v = 0; v < fiber_count.size(); ++v)
        if (fiber_count[v] != c.degree)
            errs.push_back("FiberSizeMismatch: vertex " + base.vertices[v] + " has fiber size " +
                           std::to_string(fiber_count[v]));
    // unique edge lifting at every total vertex, source and target side
    std::vector<std::vector<int>> out_count(t.vertices.size(),
                                            std::vector<int>(base.edges.size(), 0));
    std::vector<std::vector<int>> in_count(t.vertices.size(),
                                           std::vector<int>(base.edges.size(), 0));
    for (size_t e = 0; e < t.edges.size(); ++e) {
        ++out_count[size_t(t.edges[e].src)][size_t(c.edge_base[e])];
        ++in_count[size_t(t.edges[e].dst)][size_t(c.edge_base[e])];
    }
    for (size_t v = 0; v < t.vertices.size(); ++v)
        for (size_t e = 0; e < base.edges.size(); ++e) {
            bool src_here = base.edges[e].src == c.vert_base[v];
            bool dst_here = base.edges[e].dst == c.vert_base[v];
            if (out_count[v][e] != (src_here ? 1 : 0) || in_count[v][e] != (dst_here ? 1 : 0)) {
                errs.push_back("EdgeLiftingFailure: vertex " + t.vertices[v] +
                               " does not lift edge " + base.edges[e].id + " uniquely");
                return errs;
            }
        }
    // every base face lifts degree times
    std::vector<int> face_lifts(base.faces.size(), 0);
    for (const auto& tf : t.faces) {
        std::vector<EdgeRef> proj;
        for (const auto& r : tf) proj.push_back({c.edge_base[size_t(r.edge)], r.sign});
        bool matched = false;
        for (size_t f = 0; f < base.faces.size(); ++f)
            if (proj == base.faces[f]) {
                ++face_lifts[f];
                matched = true;
                break;
            }
        if (!matched) errs.push_back("FaceLiftMismatch: a total face projects to no base face");
    }
    for (size_t f = 0; f < base.faces.size(); ++f)
        if (face_lifts[f] != c.degree)
            errs.push_back("FaceLiftMismatch: base face " + std::to_string(f) + " lifts " +
                           std::to_string(face_lifts[f]) + " times, expected " +
                           std::to_string(c.degree));
    return errs;
}

std::vector<Covering> decompose(const Covering& c) {
    const auto& t = c.total;
    size_t nv = t.vertices.size();
    std::vector<int> comp(nv, -1);
    std::vector<std::vector<int>> adj(nv);
    for (const auto& e : t.edges) {
        adj[size_t(e.src)].push_back(e.dst);
        adj[size_t(e.dst)].push_back(e.src);
    }
    int n_comp = 0;
    for (size_t v0 = 0; v0 < nv; ++v0) {
        if (comp[v0] != -1) continue;
        std::deque<int> queue{int(v0)};
        comp[v0] = n_comp;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int w : adj[size_t(u)])
                if (comp[size_t(w)] == -1) {
                    comp[size_t(w)] = n_comp;
                    queue.push_back(w);
                }
        }
        ++n_comp;
    }
    std::vector<Covering> out;
    for (int k = 0; k < n_comp; ++k) {
        Covering sub;
        sub.base = c.base;
        sub.group_mode = false;
        sub.connected = true;
        std::vector<int> new_vertex(nv, -1);
        for (size_t v = 0; v < nv; ++v) {
            if (comp[v] != k) continue;
            new_vertex[v] = int(sub.total.vertices.size());
            sub.total.vertices.push_back(t.vertices[v]);
            sub.vert_base.push_back(c.vert_base[v]);
            sub.vert_fiber.push_back(c.vert_fiber[v]);
        }
        std::vector<int> new_edge(t.edges.size(), -1);
        for (size_t e = 0; e < t.edges.size(); ++e) {
            if (comp[size_t(t.edges[e].src)] != k) continue;
            new_edge[e] = int(sub.total.edges.size());
            sub.total.edges.push_back({t.edges[e].id, new_vertex[size_t(t.edges[e].src)],
                                       new_vertex[size_t(t.edges[e].dst)]});
            sub.edge_base.push_back(c.edge_base[e]);
            sub.edge_fiber.push_back(c.edge_fiber[e]);
        }
        for (const auto& f : t.faces) {
            if (f.empty() || comp[size_t(t.ref_start(f[0]))] != k) continue;
            std::vector<EdgeRef> w;
            for (const auto& r : f) w.push_back({new_edge[size_t(r.edge)], r.sign});
            sub.total.faces.push_back(std::move(w));
        }
        int bp = -1, deg = 0;
        for (size_t v = 0; v < sub.vert_base.size(); ++v)
            if (sub.vert_base[v] == c.base->complex().basepoint) {
                ++deg;
                if (bp == -1) bp = int(v);
            }
        sub.total.basepoint = bp;
        sub.degree = deg;
        out.push_back(std::move(sub));
    }
    return out;
}

namespace {

SpacePtr rebased_total(const Covering& c, int lift_fiber) {
    TwoComplex t = c.total;
    t.basepoint = c.basepoint_lift(lift_fiber);
    return PresentedSpace::make(std::move(t));
}

}  // namespace

SubgroupData subgroup_generators(const Covering& c, int lift_fiber) {
    if (!c.connected) throw DomainError("Disconnected", "subgroup generators need a connected cover");
    SubgroupData out;
    out.total = rebased_total(c, lift_fiber);
    const auto& tp = out.total->pres();
    const auto& tx = out.total->complex();
    const auto& base = c.base->complex();
    const auto& bp = c.base->pres();
    for (int ei : tp.generators) {
        std::vector<EdgeRef> path = tp.path_from_base(tx.edges[size_t(ei)].src);
        path.push_back({ei, 1});
        auto back = tp.path_from_base(tx.edges[size_t(ei)].dst);
        for (size_t i = back.size(); i-- > 0;) path.push_back({back[i].edge, -back[i].sign});
        std::vector<EdgeRef> projected;
        projected.reserve(path.size());
        for (const auto& r : path) projected.push_back({c.edge_base[size_t(r.edge)], r.sign});
        out.words.push_back(loop_word(base, bp, projected));
    }
    return out;
}

LocalSystem pullback(const LocalSystem& e, const Covering& c, int lift_fiber) {
    check_same_space(e.space(), c.base);
    if (!c.connected) throw DomainError("Disconnected", "pullback needs a connected cover");
    CechCocycle base_coc = to_cocycle(e);
    std::vector<Matrix> labels;
    labels.reserve(c.total.edges.size());
    for (size_t te = 0; te < c.total.edges.size(); ++te)
        labels.push_back(base_coc.label(c.edge_base[te]));
    TwoComplex t = c.total;
    t.basepoint = c.basepoint_lift(lift_fiber);
    return from_cocycle(CechCocycle(std::move(t), e.ctx(), e.rank(), std::move(labels)));
}

LocalSystem pullback_via_words(const LocalSystem& e, const Covering& c, int lift_fiber) {
    check_same_space(e.space(), c.base);
    auto sub = subgroup_generators(c, lift_fiber);
    std::vector<Matrix> rep;
    rep.reserve(sub.words.size());
    for (const auto& w : sub.words) rep.push_back(e.evaluate(w));
    return LocalSystem(sub.total, e.ctx(), e.rank(), std::move(rep));
}

LocalSystem pushforward(const Covering& c, const CechCocycle& f) {
    const auto& tx = f.complex();
    if (!(tx.vertices == c.total.vertices && tx.edges == c.total.edges && tx.faces == c.total.faces))
        throw err_space_mismatch("cocycle does not live on the covering total");
    const auto& base = c.base->complex();
    int rf = f.rank();
    int r = c.degree * rf;
    std::vector<Matrix> labels;
    labels.reserve(base.edges.size());
    for (size_t e = 0; e < base.edges.size(); ++e) {
        Matrix b(f.ctx(), r, r);
        for (int s = 0; s < c.degree; ++s) {
            int dst = c.edge_act[e][size_t(s)];
            const Matrix& blk = f.label(c.total_edge(int(e), s));
            for (int i = 0; i < rf; ++i)
                for (int j = 0; j < rf; ++j) b.at(dst * rf + i, s * rf + j) = blk.at(i, j);
        }
        labels.push_back(std::move(b));
    }
    return from_cocycle(CechCocycle(base, f.ctx(), r, std::move(labels)), c.base);
}

LocalSystem pushforward(const Covering& c, const LocalSystem& f) {
    return pushforward(c, to_cocycle(f));
}

bool trivializes(const LocalSystem& e, const Covering& c) {
    if (!c.connected) throw DomainError("Disconnected", "trivializes needs a connected cover");
    return pullback(e, c).is_trivial();
}

ExactSequenceReport exact_sequence_report(const LocalSystem& e, const Covering& c) {
    if (!c.galois) throw DomainError("NotGalois", "exact-sequence check needs a Galois cover");
    check_same_space(e.space(), c.base);
    ExactSequenceReport rep;
    rep.group_order = size_t(c.group->size());

    LocalSystem via_cocycle = pullback(e, c);
    LocalSystem via_words = pullback_via_words(e, c);
    rep.n_subgroup_generators = via_words.reps().size();
    rep.kernel_match = via_cocycle.reps().size() == via_words.reps().size();
    if (rep.kernel_match)
        for (size_t i = 0; i < via_words.reps().size(); ++i)
            if (!(via_cocycle.reps()[i] == via_words.reps()[i])) {
                rep.kernel_match = false;
                break;
            }
    if (!rep.kernel_match)
        rep.violations.push_back("pullback monodromy differs from subgroup-word images");

    // does the representation factor through the deck group? propagate values
    // over the right-multiplication graph of G and check every transition
    int n = c.group->size();
    int ngen = int(c.base->pres().generators.size());
    std::vector<Matrix> phi(static_cast<size_t>(n));
    std::vector<bool> have(size_t(n), false);
    phi[0] = Matrix::identity(e.ctx(), e.rank());
    have[0] = true;
    std::deque<int> queue{0};
    rep.factors_through = true;
    while (!queue.empty()) {
        int g = queue.front();
        queue.pop_front();
        for (int a = 0; a < ngen; ++a) {
            int h = c.group->mul(g, c.rho[size_t(a)]);
            Matrix cand = e.rep(a) * phi[size_t(g)];
            if (!have[size_t(h)]) {
                phi[size_t(h)] = std::move(cand);
                have[size_t(h)] = true;
                queue.push_back(h);
            } else if (!(phi[size_t(h)] == cand)) {
                rep.factors_through = false;
            }
        }
    }
    for (bool b : have)
        if (!b) rep.factors_through = false;  // unreachable element: rho not onto
    rep.pullback_trivial = via_cocycle.is_trivial();
    rep.iff_holds = rep.factors_through == rep.pullback_trivial;
    if (!rep.iff_holds)
        rep.violations.push_back("factoring through the deck group disagrees with triviality of the pullback");
    return rep;
}

Matrix parallel_transport(const LocalSystem& e, const Covering& c, int gamma, int lift_fiber) {
    if (!c.galois) throw DomainError("NotGalois", "parallel transport needs a Galois cover");
    if (gamma < 0 || gamma >= c.group->size())
        throw DomainError("BadArgument", "deck element out of range");
    if (!trivializes(e, c))
        throw DomainError("NotTrivializedBy", "the cover does not trivialize this system");
    const auto& t = c.total;
    int r = e.rank();
    int nv = int(t.vertices.size());
    int ne = int(t.edges.size());
    CechCocycle base_coc = to_cocycle(e);
    // flat sections: w_dst = L w_src for every total edge, one stacked solve
    Matrix sys(e.ctx(), ne * r, nv * r);
    for (int te = 0; te < ne; ++te) {
        const auto& edge = t.edges[size_t(te)];
        const Matrix& l = base_coc.label(c.edge_base[size_t(te)]);
        for (int i = 0; i < r; ++i) {
            sys.at(te * r + i, edge.dst * r + i) = e.ctx().one();
            for (int j = 0; j < r; ++j)
                sys.at(te * r + i, edge.src * r + j) = sys.at(te * r + i, edge.src * r + j) - l.at(i, j);
        }
    }
    auto sections = sys.kernel_basis();
    if (int(sections.size()) != r)
        throw DomainError("InternalError", "flat-section space has unexpected dimension " +
                                               std::to_string(sections.size()));
    // the path-level fiber bijection indexed by gamma is the right
    // translation s -> s*gamma: it commutes with the (left) deck action, and
    // that commutation is what makes the result independent of the lift
    int y = c.basepoint_lift(lift_fiber);
    int gy = c.total_vertex(c.base->complex().basepoint, c.group->mul(lift_fiber, gamma));
    Matrix at_y(e.ctx(), r, r), at_gy(e.ctx(), r, r);
    for (int j = 0; j < r; ++j)
        for (int i = 0; i < r; ++i) {
            at_y.at(i, j) = sections[size_t(j)][size_t(y * r + i)];
            at_gy.at(i, j) = sections[size_t(j)][size_t(gy * r + i)];
        }
    return at_gy * at_y.inverse_or_throw();
}

int etale_image_size(const Covering& c, int base_vertex) {
    if (!c.galois) throw DomainError("NotGalois", "fiber-bijection count needs a Galois cover");
    if (base_vertex < 0 || base_vertex >= int(c.base->complex().vertices.size()))
        throw DomainError("BadArgument", "base vertex out of range");
    std::set<std::vector<int>> bijections;
    for (int g = 0; g < c.group->size(); ++g) {
        std::vector<int> b(static_cast<size_t>(c.degree));
        for (int s = 0; s < c.degree; ++s) b[size_t(s)] = c.group->mul(s, g);
        bijections.insert(std::move(b));
    }
    return int(bijections.size());
}

int deck_vertex(const Covering& c, int gamma, int total_vertex) {
    if (!c.group_mode) throw DomainError("NotGalois", "deck action needs a group-mode cover");
    return c.total_vertex(c.vert_base[size_t(total_vertex)],
                          c.group->mul(gamma, c.vert_fiber[size_t(total_vertex)]));
}

int deck_edge(const Covering& c, int gamma, int total_edge) {
    if (!c.group_mode) throw DomainError("NotGalois", "deck action needs a group-mode cover");
    return c.total_edge(c.edge_base[size_t(total_edge)],
                        c.group->mul(gamma, c.edge_fiber[size_t(total_edge)]));
}

CechCocycle sigma_star(const Covering& c, int gamma, const CechCocycle& f) {
    std::vector<Matrix> labels;
    labels.reserve(c.total.edges.size());
    for (size_t te = 0; te < c.total.edges.size(); ++te)
        labels.push_back(f.label(deck_edge(c, gamma, int(te))));
    return CechCocycle(c.total, f.ctx(), f.rank(), std::move(labels));
}

}  // namespace flatk

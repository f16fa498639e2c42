#include "descent.hpp"

#include <algorithm>
#include <numeric>

namespace flatk {

Matrix embed_matrix(const Embedding& emb, const Matrix& m) {
    Matrix out(emb.target(), m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out.at(i, j) = emb.apply(m.at(i, j));
    return out;
}

std::optional<Matrix> restrict_matrix(const Embedding& emb, const Matrix& m) {
    Matrix out(emb.source(), m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            auto r = emb.restrict(m.at(i, j));
            if (!r) return std::nullopt;
            out.at(i, j) = *r;
        }
    return out;
}

bool is_trivialization(const Trivialization& t, const CechCocycle& c, const Embedding* emb) {
    if (!(t.space->complex() == c.complex())) return false;
    if (t.rank != c.rank()) return false;
    const auto& cx = c.complex();
    for (size_t e = 0; e < cx.edges.size(); ++e) {
        Matrix label = emb ? embed_matrix(*emb, c.label(int(e))) : c.label(int(e));
        const Matrix& ls = t.vertex_maps[size_t(cx.edges[e].src)];
        const Matrix& ld = t.vertex_maps[size_t(cx.edges[e].dst)];
        if (!(ls.inverse_or_throw() * ld == label)) return false;
    }
    return true;
}

Trivialization field_descent(const CechCocycle& c_over_k, const Trivialization& t_over_l,
                             const Embedding& emb) {
    if (emb.source() != c_over_k.ctx()) throw err_ctx_mismatch("cocycle field vs embedding source");
    if (emb.target() != t_over_l.ctx) throw err_ctx_mismatch("trivialization field vs embedding target");
    if (!is_trivialization(t_over_l, c_over_k, &emb))
        throw DomainError("NotATrivialization",
                          "the vertex maps do not trivialize the embedded cocycle");
    const auto& cx = c_over_k.complex();
    const Matrix a_inv = t_over_l.vertex_maps[size_t(cx.basepoint)].inverse_or_throw();
    Trivialization out;
    out.space = t_over_l.space;
    out.ctx = c_over_k.ctx();
    out.rank = t_over_l.rank;
    for (size_t v = 0; v < cx.vertices.size(); ++v) {
        Matrix h = a_inv * t_over_l.vertex_maps[v];
        auto restricted = restrict_matrix(emb, h);
        if (!restricted)
            throw DomainError("DescentFailure",
                              "normalized vertex map has an entry outside the base field at " +
                                  cx.vertices[v]);
        out.vertex_maps.push_back(std::move(*restricted));
    }
    if (!is_trivialization(out, c_over_k, nullptr))
        throw DomainError("DescentFailure", "descended maps fail the edge identities");
    return out;
}

ModPResult mod_p_pipeline(const LocalSystem& e_over_q, long p, long cap) {
    if (!e_over_q.ctx().is_rationals())
        throw err_ctx_mismatch("mod-p pipeline starts from a rational system");
    auto reduced_mats = reduce_mod_p(e_over_q.reps(), p);
    FieldCtx fp = FieldCtx::prime(p);
    LocalSystem reduced(e_over_q.space(), fp, e_over_q.rank(), reduced_mats);
    auto grp = group_closure(fp, e_over_q.rank(), reduced_mats, cap);
    if (!grp) throw DomainError("CapExceeded", "monodromy image exceeded the closure cap");
    // generators map to the inverses of their monodromy images: path products
    // compose opposite to fiber products, and this choice makes the cover
    // kill exactly the transport kernel, so it trivializes the reduction
    std::vector<int> rho;
    rho.reserve(reduced_mats.size());
    for (const auto& m : reduced_mats) rho.push_back(grp->find(m.inverse_or_throw()));
    Covering cover = schreier_cover(e_over_q.space(), matrix_group(*grp), rho);
    return {std::move(reduced), std::move(*grp), std::move(cover)};
}

bool Tower::has_level(long lambda) const {
    return std::find(indices.begin(), indices.end(), lambda) != indices.end();
}

Tower tower_make(std::vector<long> primes, long depth) {
    if (depth < 1) throw DomainError("BadDepth", "tower depth must be >= 1");
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (long p : primes)
        if (!is_prime_long(p)) throw err_non_prime(p);
    Tower t;
    t.primes = std::move(primes);
    t.depth = depth;
    std::vector<long> idx{1};
    for (size_t i = 0; i < idx.size(); ++i)
        for (long p : t.primes) {
            if (idx[i] > depth / p) continue;
            long next = idx[i] * p;
            if (std::find(idx.begin(), idx.end(), next) == idx.end()) idx.push_back(next);
        }
    std::sort(idx.begin(), idx.end());
    t.indices = std::move(idx);
    return t;
}

Covering tower_transition(const Tower& t, long lambda, long mu) {
    if (!t.has_level(lambda) || !t.has_level(mu))
        throw DomainError("LevelNotInTower", "transition endpoints must be tower levels");
    if (lambda % mu != 0)
        throw DomainError("LevelNotInTower", "transitions go from a level to its divisors");
    long d = lambda / mu;
    auto circle = PresentedSpace::make(make_circle());
    return schreier_cover(circle, cyclic_group(d), {int(1 % d)});
}

LevelOfDefinition level_of_definition(const Tower& t, long lambda, const LocalSystem& e) {
    if (!t.has_level(lambda)) throw DomainError("LevelNotInTower", std::to_string(lambda));
    if (e.space()->n_gens() != 1)
        throw DomainError("BadArgument", "tower levels are circles with a single generator");
    const Matrix& m = e.rep(0);
    for (long mu : t.indices) {
        if (lambda % mu != 0) continue;
        auto out = matrix_root(m, lambda / mu);
        if (out.status == RootStatus::UnsupportedClass)
            return {LevelOfDefinition::Status::UnsupportedClass, lambda, std::nullopt};
        if (out.status == RootStatus::Found) {
            LocalSystem witness(e.space(), e.ctx(), e.rank(), {*out.root});
            return {LevelOfDefinition::Status::Found, mu, std::move(witness)};
        }
    }
    throw DomainError("InternalError", "level scan did not terminate at lambda");
}

long finite_quotient_survival(const Tower& t, long m) {
    if (m < 1) throw DomainError("BadModulus", "modulus must be >= 1");
    long d = 1;  // the image subgroup is d * (Z/m); the chain only descends
    for (long lambda : t.indices) {
        long g = std::gcd(lambda, m);
        d = d / std::gcd(d, g) * g;  // lcm(d, g), a divisor of m
    }
    return m / d;
}

std::vector<std::pair<long, long>> etale_quotients(const Tower& t, long bound) {
    if (bound < 1) throw DomainError("BadModulus", "bound must be >= 1");
    std::vector<std::pair<long, long>> rows;
    rows.reserve(size_t(bound));
    for (long m = 1; m <= bound; ++m) rows.emplace_back(m, finite_quotient_survival(t, m));
    return rows;
}

}  // namespace flatk

#include <doctest.h>

#include <random>

#include "locsys.hpp"

using namespace flatk;

namespace {

Matrix fmat(const FieldCtx& ctx, std::vector<std::vector<long>> rows) {
    std::vector<std::vector<FieldElem>> grid;
    for (auto& r : rows) {
        std::vector<FieldElem> row;
        for (long v : r) row.push_back(ctx.from_int(v));
        grid.push_back(row);
    }
    return Matrix::from_rows(ctx, grid);
}

Matrix random_invertible(const FieldCtx& ctx, int r, std::mt19937_64& rng) {
    while (true) {
        Matrix m(ctx, r, r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                if (ctx.is_finite()) {
                    std::uniform_int_distribution<long> dist(0, ctx.order() - 1);
                    m.at(i, j) = ctx.from_index(dist(rng));
                } else {
                    std::uniform_int_distribution<long> dist(-3, 3);
                    m.at(i, j) = ctx.from_int(dist(rng));
                }
            }
        if (!m.det().is_zero()) return m;
    }
}

}  // namespace

TEST_CASE("relators are enforced at construction") {
    auto torus = PresentedSpace::make(make_torus());
    FieldCtx f5 = FieldCtx::prime(5);
    // commuting diagonal pair passes
    LocalSystem ok(torus, f5, 2, {fmat(f5, {{2, 0}, {0, 1}}), fmat(f5, {{3, 0}, {0, 1}})});
    CHECK(ok.rank() == 2);
    // non-commuting pair violates the commutator relator
    CHECK_THROWS_WITH_AS(
        LocalSystem(torus, f5, 2, {fmat(f5, {{1, 1}, {0, 1}}), fmat(f5, {{1, 0}, {1, 1}})}),
        "RelatorViolation: a face relator does not map to the identity", DomainError);
}

TEST_CASE("cocycle to representation and back") {
    FieldCtx f5 = FieldCtx::prime(5);
    SUBCASE("circle with a single label") {
        CechCocycle c(make_circle(), f5, 1, {fmat(f5, {{2}})});
        LocalSystem e = from_cocycle(c);
        CHECK(e.rep(0) == fmat(f5, {{2}}));
    }
    SUBCASE("identity labels give the trivial system") {
        CechCocycle c(make_wedge2(), f5, 2,
                      {Matrix::identity(f5, 2), Matrix::identity(f5, 2)});
        CHECK(from_cocycle(c).is_trivial());
    }
    SUBCASE("triangle normalizes along the tree") {
        FieldCtx q = FieldCtx::rationals();
        Matrix m = fmat(q, {{2, 0}, {0, 3}});
        Matrix n = fmat(q, {{1, 1}, {0, 1}});
        // labels: e1 -> m, e2 -> m^{-1} n, e3 -> identity
        CechCocycle c(make_triangle(), q, 2,
                      {m, m.inverse_or_throw() * n, Matrix::identity(q, 2)});
        LocalSystem e = from_cocycle(c);
        // based loop of e3: up e1, across e3, back down e2
        Matrix expected =
            (m.inverse_or_throw() * n).inverse_or_throw() * Matrix::identity(q, 2) * m;
        CHECK(e.rep(0) == expected);
    }
    SUBCASE("roundtrip through to_cocycle is the identity on representations") {
        std::mt19937_64 rng(31);
        FieldCtx f3 = FieldCtx::prime(3);
        auto w2 = PresentedSpace::make(make_wedge2());
        for (int t = 0; t < 20; ++t) {
            LocalSystem e(w2, f3, 2, {random_invertible(f3, 2, rng), random_invertible(f3, 2, rng)});
            LocalSystem back = from_cocycle(to_cocycle(e), w2);
            for (int g = 0; g < 2; ++g) CHECK(back.rep(g) == e.rep(g));
        }
    }
    SUBCASE("face products are verified") {
        FieldCtx q = FieldCtx::rationals();
        CHECK_THROWS_AS(CechCocycle(make_torus(), q, 2,
                                    {fmat(q, {{1, 1}, {0, 1}}), fmat(q, {{1, 0}, {1, 1}})}),
                        DomainError);
    }
}

TEST_CASE("triviality") {
    FieldCtx f5 = FieldCtx::prime(5);
    auto c1 = PresentedSpace::make(make_circle());
    CHECK(trivial_system(c1, f5, 3).is_trivial());
    CHECK(!LocalSystem(c1, f5, 1, {fmat(f5, {{2}})}).is_trivial());
    auto torus = PresentedSpace::make(make_torus());
    CHECK(LocalSystem(torus, f5, 2, {Matrix::identity(f5, 2), Matrix::identity(f5, 2)}).is_trivial());
}

TEST_CASE("tensor operations") {
    FieldCtx f5 = FieldCtx::prime(5);
    auto c1 = PresentedSpace::make(make_circle());
    LocalSystem e(c1, f5, 1, {fmat(f5, {{2}})});

    SUBCASE("dual inverts rank-one monodromy") {
        CHECK(dual(e).rep(0) == fmat(f5, {{3}}));  // 2^{-1} = 3 in F_5
    }
    SUBCASE("evaluation pairing trivializes E tensor dual(E) in rank one") {
        CHECK(tensor(e, dual(e)).is_trivial());
    }
    SUBCASE("direct sum of ranks 2 and 3 has rank 5") {
        std::mt19937_64 rng(37);
        LocalSystem a(c1, f5, 2, {random_invertible(f5, 2, rng)});
        LocalSystem b(c1, f5, 3, {random_invertible(f5, 3, rng)});
        LocalSystem sum = direct_sum(a, b);
        CHECK(sum.rank() == 5);
        CHECK(sum.rep(0).at(0, 0) == a.rep(0).at(0, 0));
        CHECK(sum.rep(0).at(2, 2) == b.rep(0).at(0, 0));
        CHECK(sum.rep(0).at(0, 2).is_zero());
    }
    SUBCASE("double dual is the identity entrywise") {
        std::mt19937_64 rng(41);
        LocalSystem a(c1, f5, 3, {random_invertible(f5, 3, rng)});
        LocalSystem dd = dual(dual(a));
        CHECK(dd.rep(0) == a.rep(0));
    }
    SUBCASE("hom is dual tensor") {
        std::mt19937_64 rng(43);
        LocalSystem a(c1, f5, 2, {random_invertible(f5, 2, rng)});
        LocalSystem b(c1, f5, 2, {random_invertible(f5, 2, rng)});
        LocalSystem h = hom(a, b);
        CHECK(h.rank() == 4);
        CHECK(h.rep(0) == dual(a).rep(0).kronecker(b.rep(0)));
    }
}

TEST_CASE("monodromy image through the closure") {
    FieldCtx q = FieldCtx::rationals();
    auto c1 = PresentedSpace::make(make_circle());
    auto rot = LocalSystem(
        c1, q, 2, {Matrix::from_rows(q, {{q.from_int(0), q.from_int(-1)},
                                         {q.from_int(1), q.from_int(0)}})});
    auto grp = monodromy_image(rot);
    REQUIRE(grp.has_value());
    CHECK(grp->order() == 4);

    FieldCtx f2 = FieldCtx::prime(2);
    auto fib = LocalSystem(c1, f2, 2, {fmat(f2, {{0, 1}, {1, 1}})});
    CHECK(monodromy_image(fib)->order() == 3);

    auto uni = LocalSystem(c1, q, 2,
                           {Matrix::from_rows(q, {{q.one(), q.one()}, {q.zero(), q.one()}})});
    CHECK(!monodromy_image(uni).has_value());
}

TEST_CASE("isomorphism testing") {
    FieldCtx q = FieldCtx::rationals();
    auto c1 = PresentedSpace::make(make_circle());
    auto mk = [&](std::vector<std::vector<long>> rows) {
        return LocalSystem(c1, q, int(rows.size()), {fmat(q, rows)});
    };
    SUBCASE("conjugate unipotents are isomorphic with a verified witness") {
        LocalSystem a = mk({{1, 1}, {0, 1}}), b = mk({{1, 2}, {0, 1}});
        auto out = iso_test(a, b);
        REQUIRE(out.status == IsoStatus::Isomorphic);
        Matrix t = *out.witness;
        CHECK(t * a.rep(0) * t.inverse_or_throw() == b.rep(0));
    }
    SUBCASE("rank mismatch is provably distinct") {
        LocalSystem a = mk({{2}});
        LocalSystem b = mk({{1, 0}, {0, 1}});
        CHECK(iso_test(a, b).status == IsoStatus::ProvablyDistinct);
    }
    SUBCASE("self-comparison returns the identity") {
        LocalSystem a = mk({{1, 1}, {0, 1}});
        auto out = iso_test(a, a);
        REQUIRE(out.status == IsoStatus::Isomorphic);
        CHECK(out.witness->is_identity());
    }
    SUBCASE("random conjugates are isomorphic") {
        std::mt19937_64 rng(47);
        FieldCtx f5 = FieldCtx::prime(5);
        auto w2 = PresentedSpace::make(make_wedge2());
        for (int t = 0; t < 15; ++t) {
            LocalSystem e(w2, f5, 2,
                          {random_invertible(f5, 2, rng), random_invertible(f5, 2, rng)});
            Matrix c = random_invertible(f5, 2, rng);
            Matrix ci = c.inverse_or_throw();
            LocalSystem conj(w2, f5, 2, {c * e.rep(0) * ci, c * e.rep(1) * ci});
            CHECK(iso_test(e, conj).status == IsoStatus::Isomorphic);
        }
    }
}

TEST_CASE("global sections and the maximal trivial subsystem") {
    FieldCtx q = FieldCtx::rationals();
    FieldCtx f5 = FieldCtx::prime(5);
    auto c1 = PresentedSpace::make(make_circle());

    SUBCASE("trivial systems have a full fixed space") {
        auto triv = trivial_system(c1, q, 3);
        CHECK(global_sections(triv).size() == 3);
        CHECK(max_trivial_sub(triv).dim == 3);
    }
    SUBCASE("unipotent fixes exactly the first axis") {
        LocalSystem e(c1, q, 2,
                      {Matrix::from_rows(q, {{q.one(), q.one()}, {q.zero(), q.one()}})});
        auto basis = global_sections(e);
        REQUIRE(basis.size() == 1);
        CHECK(!basis[0][0].is_zero());
        CHECK(basis[0][1].is_zero());
        CHECK(max_trivial_sub(e).dim == 1);
    }
    SUBCASE("scaling by 2 over F_5 fixes only zero") {
        LocalSystem e(c1, f5, 1, {fmat(f5, {{2}})});
        CHECK(global_sections(e).empty());
        CHECK(max_trivial_sub(e).dim == 0);
    }
    SUBCASE("subrepresentations of trivial systems are trivial at every rank") {
        for (int r = 1; r <= 4; ++r) CHECK(max_trivial_sub(trivial_system(c1, f5, r)).dim == r);
    }
}

#include <doctest.h>

#include <numeric>
#include <random>

#include "descent.hpp"

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
            for (int j = 0; j < r; ++j) m.at(i, j) = ctx.from_index(long(rng() % ctx.order()));
        if (!m.det().is_zero()) return m;
    }
}

}  // namespace

TEST_CASE("field descent on the triangle with identity labels") {
    FieldCtx f2 = FieldCtx::prime(2);
    FieldCtx f4 = FieldCtx::parse("F(2, x^2+x+1)");
    Embedding emb = Embedding::make(f2, f4);
    TwoComplex tri = make_triangle();
    CechCocycle c(tri, f2, 1, {Matrix::identity(f2, 1), Matrix::identity(f2, 1),
                               Matrix::identity(f2, 1)});
    Trivialization t;
    t.space = PresentedSpace::make(tri);
    t.ctx = f4;
    t.rank = 1;
    Matrix omega(f4, 1, 1);
    omega.at(0, 0) = f4.generator();
    t.vertex_maps = {omega, omega, omega};
    Trivialization down = field_descent(c, t, emb);
    for (const auto& m : down.vertex_maps) CHECK(m.is_identity());
    CHECK(down.ctx == f2);
}

TEST_CASE("field descent roundtrips on randomized constructions") {
    std::mt19937_64 rng(67);
    struct Pair { const char *k, *l; };
    for (auto [k, l] : {Pair{"F(2)", "F(2, x^2+x+1)"}, Pair{"F(3)", "F(3, x^2+1)"}}) {
        FieldCtx kc = FieldCtx::parse(k), lc = FieldCtx::parse(l);
        Embedding emb = Embedding::make(kc, lc);
        TwoComplex tri = make_triangle();
        auto space = PresentedSpace::make(tri);
        for (int t = 0; t < 25; ++t) {
            int r = 1 + int(rng() % 2);
            // build a K-trivialization h, define the cocycle it trivializes
            std::vector<Matrix> h;
            for (int v = 0; v < 3; ++v) h.push_back(random_invertible(kc, r, rng));
            std::vector<Matrix> labels;
            for (const auto& e : tri.edges)
                labels.push_back(h[size_t(e.src)].inverse_or_throw() * h[size_t(e.dst)]);
            CechCocycle coc(tri, kc, r, labels);
            // hide the trivialization behind a random L-level change of frame
            Matrix a = random_invertible(lc, r, rng);
            Trivialization hidden;
            hidden.space = space;
            hidden.ctx = lc;
            hidden.rank = r;
            for (const auto& m : h) hidden.vertex_maps.push_back(a * embed_matrix(emb, m));
            Trivialization down = field_descent(coc, hidden, emb);
            CHECK(is_trivialization(down, coc, nullptr));
            for (const auto& m : down.vertex_maps) CHECK(m.ctx() == kc);
        }
    }
}

TEST_CASE("field descent with the identity embedding") {
    FieldCtx f3 = FieldCtx::prime(3);
    Embedding emb = Embedding::make(f3, f3);
    TwoComplex tri = make_triangle();
    std::mt19937_64 rng(71);
    std::vector<Matrix> h;
    for (int v = 0; v < 3; ++v) h.push_back(random_invertible(f3, 2, rng));
    std::vector<Matrix> labels;
    for (const auto& e : tri.edges)
        labels.push_back(h[size_t(e.src)].inverse_or_throw() * h[size_t(e.dst)]);
    CechCocycle coc(tri, f3, 2, labels);
    Trivialization t;
    t.space = PresentedSpace::make(tri);
    t.ctx = f3;
    t.rank = 2;
    t.vertex_maps = h;
    Trivialization down = field_descent(coc, t, emb);
    CHECK(down.vertex_maps[size_t(tri.basepoint)].is_identity());
    CHECK(is_trivialization(down, coc, nullptr));
}

TEST_CASE("descent rejects non-trivializations") {
    FieldCtx f2 = FieldCtx::prime(2);
    FieldCtx f4 = FieldCtx::parse("F(2, x^2+x+1)");
    TwoComplex tri = make_triangle();
    CechCocycle c(tri, f2, 1,
                  {Matrix::identity(f2, 1), Matrix::identity(f2, 1), Matrix::identity(f2, 1)});
    Trivialization bad;
    bad.space = PresentedSpace::make(tri);
    bad.ctx = f4;
    bad.rank = 1;
    Matrix omega(f4, 1, 1);
    omega.at(0, 0) = f4.generator();
    bad.vertex_maps = {omega, omega, Matrix::identity(f4, 1)};
    CHECK_THROWS_WITH_AS(field_descent(c, bad, Embedding::make(f2, f4)),
                         "NotATrivialization: the vertex maps do not trivialize the embedded cocycle",
                         DomainError);
}

TEST_CASE("mod-p pipeline") {
    FieldCtx q = FieldCtx::rationals();
    auto c1 = PresentedSpace::make(make_circle());
    SUBCASE("the worked bundle at p = 2") {
        Matrix m(q, 2, 2);
        m.at(0, 0) = q.one();
        m.at(0, 1) = q.parse_elem("1/3");
        m.at(1, 1) = q.one();
        LocalSystem e(c1, q, 2, {m});
        auto res = mod_p_pipeline(e, 2);
        CHECK(res.group.order() == 2);
        CHECK(res.cover.degree == 2);
        CHECK(res.cover.connected);
        CHECK(res.cover.galois);
        CHECK(trivializes(res.reduced, res.cover));
    }
    SUBCASE("p = 3 violates the precondition") {
        Matrix m(q, 2, 2);
        m.at(0, 0) = q.one();
        m.at(0, 1) = q.parse_elem("1/3");
        m.at(1, 1) = q.one();
        LocalSystem e(c1, q, 2, {m});
        CHECK_THROWS_AS(mod_p_pipeline(e, 3), DomainError);
    }
    SUBCASE("Fibonacci matrix at p = 2") {
        LocalSystem e(c1, q, 2, {fmat(q, {{0, 1}, {1, 1}})});
        auto res = mod_p_pipeline(e, 2);
        CHECK(res.group.order() == 3);
        CHECK(res.cover.degree == 3);
        CHECK(trivializes(res.reduced, res.cover));
    }
    SUBCASE("trivial bundles stay trivial") {
        auto res = mod_p_pipeline(trivial_system(c1, q, 2), 5);
        CHECK(res.group.order() == 1);
        CHECK(res.cover.degree == 1);
        CHECK(trivializes(res.reduced, res.cover));
    }
}

TEST_CASE("tower construction") {
    SUBCASE("dyadic") {
        Tower t = tower_make({2}, 8);
        CHECK(t.indices == std::vector<long>{1, 2, 4, 8});
    }
    SUBCASE("two primes") {
        Tower t = tower_make({2, 3}, 6);
        CHECK(t.indices == std::vector<long>{1, 2, 3, 4, 6});
    }
    SUBCASE("empty prime set gives the constant tower") {
        Tower t = tower_make({}, 10);
        CHECK(t.indices == std::vector<long>{1});
    }
    SUBCASE("bad inputs") {
        CHECK_THROWS_AS(tower_make({2}, 0), DomainError);
        CHECK_THROWS_AS(tower_make({4}, 8), DomainError);
    }
    SUBCASE("transitions compose on fiber data") {
        Tower t = tower_make({2}, 8);
        Covering c84 = tower_transition(t, 8, 4);
        Covering c41 = tower_transition(t, 4, 1);
        Covering c81 = tower_transition(t, 8, 1);
        CHECK(c84.degree * c41.degree == c81.degree);
        CHECK(c84.galois);
        CHECK(c81.galois);
    }
}

TEST_CASE("level of definition") {
    FieldCtx q = FieldCtx::rationals();
    auto c1 = PresentedSpace::make(make_circle());
    Tower t = tower_make({2}, 8);
    SUBCASE("16 descends to the bottom of the dyadic tower") {
        LocalSystem e(c1, q, 1, {fmat(q, {{16}})});
        auto res = level_of_definition(t, 4, e);
        REQUIRE(res.status == LevelOfDefinition::Status::Found);
        CHECK(res.level == 1);
        CHECK(res.witness->rep(0).pow(4) == e.rep(0));
        // pullback along the transition cover reproduces the bundle
        Covering trans = tower_transition(t, 4, 1);
        LocalSystem lifted = pullback(*res.witness, trans);
        CHECK(lifted.rep(0) == e.rep(0));
    }
    SUBCASE("3 does not descend from level 2") {
        LocalSystem e(c1, q, 1, {fmat(q, {{3}})});
        auto res = level_of_definition(t, 2, e);
        REQUIRE(res.status == LevelOfDefinition::Status::Found);
        CHECK(res.level == 2);
        CHECK(res.witness->rep(0) == e.rep(0));
    }
    SUBCASE("the identity lives at the coarsest level") {
        auto res = level_of_definition(t, 8, trivial_system(c1, q, 2));
        REQUIRE(res.status == LevelOfDefinition::Status::Found);
        CHECK(res.level == 1);
    }
    SUBCASE("non-diagonalizable monodromy is out of the supported class") {
        LocalSystem e(c1, q, 2, {fmat(q, {{1, 1}, {0, 1}})});
        auto res = level_of_definition(t, 2, e);
        CHECK(res.status == LevelOfDefinition::Status::UnsupportedClass);
    }
}

TEST_CASE("finite-quotient survival") {
    Tower dyadic = tower_make({2}, 64);
    SUBCASE("worked values") {
        CHECK(finite_quotient_survival(dyadic, 12) == 3);
        CHECK(finite_quotient_survival(dyadic, 5) == 5);
        CHECK(finite_quotient_survival(dyadic, 1) == 1);
    }
    SUBCASE("multiplicative across coprime moduli up to 100") {
        Tower deep = tower_make({2}, 128);
        for (long m1 = 1; m1 <= 100; ++m1)
            for (long m2 = 1; m1 * m2 <= 100; ++m2) {
                if (std::gcd(m1, m2) != 1) continue;
                CHECK(finite_quotient_survival(deep, m1 * m2) ==
                      finite_quotient_survival(deep, m1) * finite_quotient_survival(deep, m2));
            }
    }
    SUBCASE("agrees with the coprime-part formula") {
        Tower deep = tower_make({2, 3}, 1000);
        for (long m = 1; m <= 200; ++m) {
            long expected = m;
            while (expected % 2 == 0) expected /= 2;
            while (expected % 3 == 0) expected /= 3;
            CHECK(finite_quotient_survival(deep, m) == expected);
        }
    }
}

TEST_CASE("survival tables") {
    Tower dyadic = tower_make({2}, 64);
    auto rows = etale_quotients(dyadic, 10);
    REQUIRE(rows.size() == 10);
    std::vector<long> expected{1, 1, 3, 1, 5, 3, 7, 1, 9, 5};
    for (size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].first == long(i) + 1);
        CHECK(rows[i].second == expected[i]);
    }
    SUBCASE("full-solenoid truncation collapses everything") {
        Tower full = tower_make({2, 3, 5, 7, 11, 13, 17, 19}, 100);
        for (auto& [m, order] : etale_quotients(full, 20)) {
            (void)m;
            CHECK(order == 1);
        }
    }
}

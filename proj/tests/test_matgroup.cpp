#include <doctest.h>

#include <random>

#include "matgroup.hpp"

using namespace flatk;

namespace {

Matrix qmat(std::vector<std::vector<const char*>> rows) {
    FieldCtx q = FieldCtx::rationals();
    std::vector<std::vector<FieldElem>> grid;
    for (auto& r : rows) {
        std::vector<FieldElem> row;
        for (auto* s : r) row.push_back(q.parse_elem(s));
        grid.push_back(row);
    }
    return Matrix::from_rows(q, grid);
}

Matrix fmat(const FieldCtx& ctx, std::vector<std::vector<long>> rows) {
    std::vector<std::vector<FieldElem>> grid;
    for (auto& r : rows) {
        std::vector<FieldElem> row;
        for (long v : r) row.push_back(ctx.from_int(v));
        grid.push_back(row);
    }
    return Matrix::from_rows(ctx, grid);
}

Matrix random_invertible(const FieldCtx& ctx, int r, std::mt19937_64& rng, long spread = 3) {
    while (true) {
        Matrix m(ctx, r, r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                if (ctx.is_finite()) {
                    std::uniform_int_distribution<long> dist(0, ctx.order() - 1);
                    m.at(i, j) = ctx.from_index(dist(rng));
                } else {
                    std::uniform_int_distribution<long> dist(-spread, spread);
                    m.at(i, j) = ctx.from_int(dist(rng));
                }
            }
        if (!m.det().is_zero()) return m;
    }
}

}  // namespace

TEST_CASE("exact linear algebra basics") {
    Matrix m = qmat({{"1", "1/2"}, {"0", "2"}});
    CHECK(m.det().to_string() == "2");
    Matrix mi = m.inverse_or_throw();
    CHECK((m * mi).is_identity());
    CHECK(m.rank() == 2);

    Matrix sing = qmat({{"1", "2"}, {"2", "4"}});
    CHECK(sing.det().is_zero());
    CHECK(sing.rank() == 1);
    auto ker = sing.kernel_basis();
    REQUIRE(ker.size() == 1);
    CHECK(sing.apply(ker[0]) == std::vector<FieldElem>{FieldCtx::rationals().zero(),
                                                       FieldCtx::rationals().zero()});
}

TEST_CASE("kronecker determinant identity") {
    std::mt19937_64 rng(5);
    FieldCtx q = FieldCtx::rationals();
    Matrix a = random_invertible(q, 2, rng), b = random_invertible(q, 3, rng);
    FieldElem lhs = a.kronecker(b).det();
    FieldElem rhs = a.det().pow(3) * b.det().pow(2);
    CHECK(lhs == rhs);
}

TEST_CASE("finite order detection over Q") {
    CHECK(has_finite_order_over_q(qmat({{"0", "-1"}, {"1", "0"}})));
    CHECK(!has_finite_order_over_q(qmat({{"1", "1"}, {"0", "1"}})));
    CHECK(!has_finite_order_over_q(qmat({{"0", "1"}, {"1", "1"}})));
    CHECK(has_finite_order_over_q(qmat({{"-1", "0"}, {"0", "1"}})));
    // order 6 via a primitive 6th root of unity companion block
    CHECK(has_finite_order_over_q(qmat({{"1", "-1"}, {"1", "0"}})));
}

TEST_CASE("group closure") {
    FieldCtx q = FieldCtx::rationals();
    SUBCASE("rotation of order 4") {
        auto g = group_closure(q, 2, {qmat({{"0", "-1"}, {"1", "0"}})}, 1000);
        REQUIRE(g.has_value());
        CHECK(g->order() == 4);
        CHECK(verify_closure_axioms(*g));
    }
    SUBCASE("Fibonacci matrix mod 2 has order 3") {
        FieldCtx f2 = FieldCtx::prime(2);
        Matrix m = fmat(f2, {{0, 1}, {1, 1}});
        CHECK(m * m * m == Matrix::identity(f2, 2));  // direct oracle
        auto g = group_closure(f2, 2, {m}, 1000);
        REQUIRE(g.has_value());
        CHECK(g->order() == 3);
    }
    SUBCASE("nontrivial unipotent is infinite over Q") {
        CHECK(!group_closure(q, 2, {qmat({{"1", "1"}, {"0", "1"}})}, 1000).has_value());
    }
    SUBCASE("singular generator is rejected") {
        CHECK_THROWS_AS(group_closure(q, 2, {qmat({{"1", "1"}, {"1", "1"}})}, 10), DomainError);
    }
    SUBCASE("closure axioms on randomized finite-field groups") {
        std::mt19937_64 rng(17);
        FieldCtx f3 = FieldCtx::prime(3);
        for (int t = 0; t < 10; ++t) {
            auto g = group_closure(f3, 2, {random_invertible(f3, 2, rng)}, 200);
            if (g && g->order() <= 200) CHECK(verify_closure_axioms(*g));
        }
    }
}

TEST_CASE("intertwiner spaces") {
    FieldCtx q = FieldCtx::rationals();
    SUBCASE("identity against identity spans everything") {
        auto basis = intertwiner_basis({Matrix::identity(q, 3)}, {Matrix::identity(q, 3)});
        CHECK(basis.size() == 9);
    }
    SUBCASE("the two unipotents") {
        auto basis = intertwiner_basis({qmat({{"1", "1"}, {"0", "1"}})},
                                       {qmat({{"1", "2"}, {"0", "1"}})});
        CHECK(basis.size() == 2);
        for (const auto& t : basis)
            CHECK(t * qmat({{"1", "1"}, {"0", "1"}}) == qmat({{"1", "2"}, {"0", "1"}}) * t);
    }
    SUBCASE("swapped diagonals intertwine antidiagonally") {
        auto basis = intertwiner_basis({qmat({{"1", "0"}, {"0", "2"}})},
                                       {qmat({{"2", "0"}, {"0", "1"}})});
        CHECK(basis.size() == 2);
        for (const auto& t : basis) {
            CHECK(t.at(0, 0).is_zero());
            CHECK(t.at(1, 1).is_zero());
        }
    }
}

TEST_CASE("conjugacy witnesses") {
    FieldCtx q = FieldCtx::rationals();
    Matrix a = qmat({{"1", "1"}, {"0", "1"}});
    Matrix b = qmat({{"1", "2"}, {"0", "1"}});
    SUBCASE("conjugate unipotents") {
        auto out = conjugacy_witness({a}, {b}, 64, 0);
        REQUIRE(out.status == ConjugacyStatus::Witness);
        Matrix t = *out.witness;
        CHECK(t * a * t.inverse_or_throw() == b);
    }
    SUBCASE("unipotent vs identity is provably distinct") {
        auto out = conjugacy_witness({a}, {Matrix::identity(q, 2)}, 64, 0);
        CHECK(out.status == ConjugacyStatus::ProvablyDistinct);
    }
    SUBCASE("equal tuples give the identity witness") {
        auto out = conjugacy_witness({a, b}, {a, b}, 64, 0);
        REQUIRE(out.status == ConjugacyStatus::Witness);
        CHECK(out.witness->is_identity());
    }
    SUBCASE("finite-field search is exhaustive") {
        FieldCtx f3 = FieldCtx::prime(3);
        Matrix u = fmat(f3, {{1, 1}, {0, 1}});
        auto out = conjugacy_witness({u}, {fmat(f3, {{1, 2}, {0, 1}})}, 4, 0);
        REQUIRE(out.status == ConjugacyStatus::Witness);
        // distinct semisimple vs unipotent with equal char polys cannot happen
        // over F_3 r=2 without minimal polynomials flagging it first
        auto out2 = conjugacy_witness({u}, {Matrix::identity(f3, 2)}, 4, 0);
        CHECK(out2.status == ConjugacyStatus::ProvablyDistinct);
    }
}

TEST_CASE("multiplicative Jordan decomposition") {
    FieldCtx q = FieldCtx::rationals();
    SUBCASE("the worked 2x2") {
        Matrix m = qmat({{"2", "1"}, {"0", "2"}});
        auto [s, u] = jordan_multiplicative(m);
        CHECK(s == qmat({{"2", "0"}, {"0", "2"}}));
        CHECK(u == qmat({{"1", "1/2"}, {"0", "1"}}));
        CHECK(s * u == m);
        CHECK(u * s == m);
        Matrix n = u - Matrix::identity(q, 2);
        CHECK((n * n).is_zero());
        Poly mp = min_poly(s);
        CHECK(poly_gcd(mp, mp.derivative()).degree() == 0);
    }
    SUBCASE("semisimple and identity inputs are fixed points") {
        Matrix d = qmat({{"1", "0"}, {"0", "3"}});
        auto [s, u] = jordan_multiplicative(d);
        CHECK(s == d);
        CHECK(u.is_identity());
        auto [si, ui] = jordan_multiplicative(Matrix::identity(q, 3));
        CHECK(si.is_identity());
        CHECK(ui.is_identity());
    }
    SUBCASE("randomized exactness over Q and F_p") {
        std::mt19937_64 rng(23);
        for (const char* spec : {"Q", "F(2)", "F(5)"}) {
            FieldCtx ctx = FieldCtx::parse(spec);
            for (int t = 0; t < 12; ++t) {
                int r = 2 + int(rng() % 4);  // up to 5
                Matrix m = random_invertible(ctx, r, rng, 2);
                auto [s, u] = jordan_multiplicative(m);
                CHECK(s * u == m);
                CHECK(u * s == m);
                Matrix nil = u - Matrix::identity(ctx, r);
                Matrix acc = Matrix::identity(ctx, r);
                for (int i = 0; i < r; ++i) acc = acc * nil;
                CHECK(acc.is_zero());
                Poly mp = min_poly(s);
                CHECK(poly_gcd(mp, mp.derivative()).degree() == 0);
            }
        }
    }
}

TEST_CASE("matrix roots") {
    FieldCtx q = FieldCtx::rationals();
    SUBCASE("diagonalizable square root") {
        Matrix m = qmat({{"4", "0"}, {"0", "9"}});
        auto out = matrix_root(m, 2);
        REQUIRE(out.status == RootStatus::Found);
        CHECK(out.root->pow(2) == m);
    }
    SUBCASE("identity roots are identity") {
        auto out = matrix_root(Matrix::identity(q, 3), 5);
        REQUIRE(out.status == RootStatus::Found);
        CHECK(out.root->is_identity());
    }
    SUBCASE("3 has no rational square root") {
        auto out = matrix_root(qmat({{"3"}}), 2);
        CHECK(out.status == RootStatus::NoRootFound);
    }
    SUBCASE("non-diagonalizable inputs are out of the supported class") {
        auto out = matrix_root(qmat({{"1", "1"}, {"0", "1"}}), 2);
        CHECK(out.status == RootStatus::UnsupportedClass);
    }
    SUBCASE("finite-field scalar roots by exhaustion") {
        FieldCtx f5 = FieldCtx::prime(5);
        auto none = matrix_root(fmat(f5, {{2}}), 2);
        CHECK(none.status == RootStatus::NoRootFound);  // 2 is not a square mod 5
        auto cube = matrix_root(fmat(f5, {{2}}), 3);
        REQUIRE(cube.status == RootStatus::Found);
        CHECK(cube.root->pow(3) == fmat(f5, {{2}}));
    }
    SUBCASE("non-diagonalizable over the ground field but split elsewhere") {
        // rotation by 90 degrees has no rational eigenvalues
        auto out = matrix_root(qmat({{"0", "-1"}, {"1", "0"}}), 2);
        CHECK(out.status == RootStatus::UnsupportedClass);
    }
}

TEST_CASE("characteristic and minimal polynomials") {
    FieldCtx q = FieldCtx::rationals();
    Matrix m = qmat({{"2", "1"}, {"0", "2"}});
    Poly cp = char_poly(m);
    // (x-2)^2 = x^2 - 4x + 4
    CHECK(cp.coeff(0).to_string() == "4");
    CHECK(cp.coeff(1).to_string() == "-4");
    CHECK(cp.coeff(2).is_one());
    CHECK(min_poly(m) == cp);
    CHECK(min_poly(Matrix::identity(q, 4)).degree() == 1);
    CHECK(radical(cp).degree() == 1);

    std::mt19937_64 rng(29);
    for (const char* spec : {"Q", "F(3)"}) {
        FieldCtx ctx = FieldCtx::parse(spec);
        for (int t = 0; t < 10; ++t) {
            int r = 2 + int(rng() % 3);
            Matrix a = random_invertible(ctx, r, rng, 2);
            Poly c = char_poly(a);
            CHECK(c.degree() == r);
            CHECK(c.eval(a).is_zero());       // Cayley-Hamilton, exact
            CHECK(min_poly(a).eval(a).is_zero());
            CHECK((c % min_poly(a)).is_zero());
        }
    }
}

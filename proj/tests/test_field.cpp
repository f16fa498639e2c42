#include <doctest.h>

#include <random>

#include "field.hpp"
#include "matrix.hpp"

using namespace flatk;

namespace {

FieldElem random_elem(const FieldCtx& ctx, std::mt19937_64& rng) {
    if (ctx.is_finite()) {
        std::uniform_int_distribution<long> dist(0, ctx.order() - 1);
        return ctx.from_index(dist(rng));
    }
    std::uniform_int_distribution<long> num(-20, 20), den(1, 12);
    return ctx.from_mpq(mpq_class(num(rng), den(rng)));
}

}  // namespace

TEST_CASE("field specs parse and validate") {
    CHECK(FieldCtx::parse("Q").is_rationals());
    FieldCtx f5 = FieldCtx::parse("F(5)");
    CHECK(f5.kind() == FieldKind::Prime);
    CHECK(f5.characteristic() == 5);
    FieldCtx f4 = FieldCtx::parse("F(2, x^2+x+1)");
    CHECK(f4.kind() == FieldKind::Ext);
    CHECK(f4.order() == 4);
    CHECK(f4.to_string() == "F(2, x^2+x+1)");

    CHECK_THROWS_WITH_AS(FieldCtx::prime(4), "NonPrime: 4 is not prime", DomainError);
    // x^2+1 has the root 1 over F_2
    CHECK_THROWS_AS(FieldCtx::ext(2, {1, 0, 1}), DomainError);
    // x^2+1 is irreducible over F_3
    CHECK(FieldCtx::ext(3, {1, 0, 1}).order() == 9);
}

TEST_CASE("rational elements stay in lowest terms") {
    FieldCtx q = FieldCtx::rationals();
    FieldElem e = q.parse_elem("6/4");
    CHECK(e.to_string() == "3/2");
    CHECK((e + q.parse_elem("1/2")).to_string() == "2");
    CHECK(q.parse_elem("-4/8").to_string() == "-1/2");
    CHECK_THROWS_AS(q.parse_elem("1/0"), ParseError);
}

TEST_CASE("field axioms hold exactly for randomized elements") {
    std::mt19937_64 rng(7);
    for (const char* spec : {"Q", "F(5)", "F(2, x^2+x+1)", "F(3, x^2+1)"}) {
        FieldCtx ctx = FieldCtx::parse(spec);
        for (int i = 0; i < 100; ++i) {
            FieldElem a = random_elem(ctx, rng), b = random_elem(ctx, rng), c = random_elem(ctx, rng);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + (-a) == ctx.zero());
            if (!a.is_zero()) {
                CHECK(a * a.inv() == ctx.one());
                CHECK(a.pow(-2) == (a * a).inv());
            }
        }
    }
}

TEST_CASE("extension arithmetic matches the modulus relation") {
    FieldCtx f4 = FieldCtx::parse("F(2, x^2+x+1)");
    FieldElem w = f4.generator();
    CHECK(w * w == w + f4.one());      // x^2 = x + 1
    CHECK(w * w * w == f4.one());      // the multiplicative group has order 3
    CHECK(w.pow(3) == f4.one());
    CHECK(w.inv() == w * w);
}

TEST_CASE("embeddings and restriction") {
    FieldCtx f2 = FieldCtx::prime(2);
    FieldCtx f4 = FieldCtx::parse("F(2, x^2+x+1)");
    Embedding emb = Embedding::make(f2, f4);

    CHECK(emb.restrict(f4.one()).value() == f2.one());
    FieldElem w = f4.generator();
    CHECK(!emb.restrict(w).has_value());
    CHECK(emb.restrict(w * w + w).value() == f2.one());  // x^2 + x = 1

    SUBCASE("roundtrip on the prime field") {
        std::mt19937_64 rng(11);
        for (int i = 0; i < 50; ++i) {
            FieldElem a = random_elem(f2, rng);
            CHECK(emb.restrict(emb.apply(a)).value() == a);
        }
    }
    SUBCASE("proper subfield towers") {
        FieldCtx f16 = FieldCtx::parse("F(2, x^4+x+1)");
        Embedding up = Embedding::make(f4, f16);
        std::mt19937_64 rng(13);
        for (int i = 0; i < 50; ++i) {
            FieldElem a = random_elem(f4, rng);
            CHECK(up.restrict(up.apply(a)).value() == a);
        }
        // the image is a proper subfield: some element must fall outside
        int outside = 0;
        for (long idx = 0; idx < f16.order(); ++idx)
            if (!up.restrict(f16.from_index(idx))) ++outside;
        CHECK(outside == 16 - 4);
    }
    SUBCASE("unsupported pairs are rejected") {
        CHECK_THROWS_AS(Embedding::make(FieldCtx::prime(3), f4), DomainError);
        CHECK_THROWS_AS(Embedding::make(FieldCtx::rationals(), f4), DomainError);
    }
}

TEST_CASE("embedding images are canonical") {
    FieldCtx f9a = FieldCtx::parse("F(3, x^2+1)");
    FieldCtx f9b = FieldCtx::parse("F(3, x^2+x+2)");
    Embedding e1 = Embedding::make(f9a, f9b);
    Embedding e2 = Embedding::make(f9a, f9b);
    CHECK(e1.generator_image() == e2.generator_image());
    // a root of x^2+1 in the other presentation squares to -1
    FieldElem g = e1.generator_image();
    CHECK(g * g == -f9b.one());
}

TEST_CASE("denominator primes") {
    FieldCtx q = FieldCtx::rationals();
    auto mat = [&](std::vector<std::vector<const char*>> rows) {
        std::vector<std::vector<FieldElem>> grid;
        for (auto& r : rows) {
            std::vector<FieldElem> row;
            for (auto* s : r) row.push_back(q.parse_elem(s));
            grid.push_back(row);
        }
        return Matrix::from_rows(q, grid);
    };

    auto s = denominator_primes({mat({{"1", "1/3"}, {"0", "1"}})});
    REQUIRE(s.size() == 1);
    CHECK(s[0] == 3);

    CHECK(denominator_primes({Matrix::identity(q, 3)}).empty());

    s = denominator_primes({mat({{"2", "0"}, {"0", "1/2"}})});
    REQUIRE(s.size() == 1);
    CHECK(s[0] == 2);

    CHECK_THROWS_AS(denominator_primes({mat({{"1", "1"}, {"1", "1"}})}), DomainError);

    // determinant-numerator primes are included even with integer entries
    s = denominator_primes({mat({{"5", "0"}, {"0", "1"}})});
    REQUIRE(s.size() == 1);
    CHECK(s[0] == 5);
}

TEST_CASE("reduction mod p") {
    FieldCtx q = FieldCtx::rationals();
    Matrix m(q, 2, 2);
    m.at(0, 0) = q.one();
    m.at(0, 1) = q.parse_elem("1/3");
    m.at(1, 1) = q.one();

    auto red = reduce_mod_p({m}, 2);
    FieldCtx f2 = FieldCtx::prime(2);
    CHECK(red[0].at(0, 1) == f2.one());  // 3^{-1} = 1 mod 2
    CHECK(red[0].at(0, 0) == f2.one());

    CHECK_THROWS_WITH_AS(reduce_mod_p({m}, 3),
                         "PrimeDividesDenominatorOrDet: entry denominator divisible by 3",
                         DomainError);

    CHECK(reduce_mod_p({Matrix::identity(q, 2)}, 7)[0].is_identity());

    SUBCASE("reduction is a ring homomorphism on the admissible subring") {
        std::mt19937_64 rng(3);
        std::uniform_int_distribution<long> dist(-6, 6);
        auto det_divisible = [](const Matrix& m) {
            mpz_class num = m.det().rat().get_num();
            return num == 0 || mpz_divisible_ui_p(num.get_mpz_t(), 5) != 0;
        };
        for (int t = 0; t < 40; ++t) {
            Matrix a(q, 2, 2), b(q, 2, 2);
            do {
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) {
                        a.at(i, j) = q.from_int(dist(rng));
                        b.at(i, j) = q.from_int(dist(rng));
                    }
            } while (det_divisible(a) || det_divisible(b));
            auto ra = reduce_mod_p({a}, 5)[0], rb = reduce_mod_p({b}, 5)[0];
            auto rab = reduce_mod_p({a * b}, 5)[0];
            CHECK(rab == ra * rb);
        }
    }
}

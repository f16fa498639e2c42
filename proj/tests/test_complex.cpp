#include <doctest.h>

#include <random>

#include "twocomplex.hpp"

using namespace flatk;

TEST_CASE("validation") {
    CHECK(validate(make_circle()).empty());
    CHECK(validate(make_torus()).empty());

    SUBCASE("disconnected") {
        TwoComplex x;
        x.vertices = {"u", "v"};
        x.basepoint = 0;
        auto errs = validate(x);
        REQUIRE(errs.size() == 1);
        CHECK(errs[0].rfind("Disconnected", 0) == 0);
    }
    SUBCASE("face word on the circle is closed") {
        TwoComplex x = make_circle();
        x.faces.push_back({{0, 1}});
        CHECK(validate(x).empty());
    }
    SUBCASE("open face word") {
        TwoComplex x = make_triangle();
        x.faces.push_back({{0, 1}});  // e1 alone does not close
        auto errs = validate(x);
        REQUIRE(errs.size() == 1);
        CHECK(errs[0].rfind("OpenFaceWord", 0) == 0);
    }
    SUBCASE("missing basepoint") {
        TwoComplex x = make_circle();
        x.basepoint = 5;
        auto errs = validate(x);
        REQUIRE(!errs.empty());
        CHECK(errs[0].rfind("MissingBasepoint", 0) == 0);
    }
}

TEST_CASE("presentations of the corpus") {
    SUBCASE("circle") {
        auto p = fundamental_presentation(make_circle());
        CHECK(p.generators.size() == 1);
        CHECK(p.relators.empty());
    }
    SUBCASE("wedge of two circles") {
        auto p = fundamental_presentation(make_wedge2());
        CHECK(p.generators.size() == 2);
        CHECK(p.relators.empty());
    }
    SUBCASE("torus") {
        auto p = fundamental_presentation(make_torus());
        CHECK(p.generators.size() == 2);
        REQUIRE(p.relators.size() == 1);
        Word expected{{0, 1}, {1, 1}, {0, -1}, {1, -1}};
        CHECK(p.relators[0] == expected);
    }
    SUBCASE("triangle uses the first two edges as its tree") {
        auto p = fundamental_presentation(make_triangle());
        CHECK(p.edge_in_tree[0]);
        CHECK(p.edge_in_tree[1]);
        CHECK(!p.edge_in_tree[2]);
        CHECK(p.generators == std::vector<int>{2});
    }
}

TEST_CASE("generator count equals |E| - |V| + 1") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 30; ++t) {
        int nv = 1 + int(rng() % 6);
        TwoComplex x;
        for (int v = 0; v < nv; ++v) x.vertices.push_back("v" + std::to_string(v));
        x.basepoint = 0;
        int eid = 0;
        // random spanning chain keeps it connected
        for (int v = 1; v < nv; ++v)
            x.edges.push_back({"e" + std::to_string(eid++), int(rng() % v), v});
        int extra = int(rng() % 5);
        for (int k = 0; k < extra; ++k)
            x.edges.push_back({"e" + std::to_string(eid++), int(rng() % nv), int(rng() % nv)});
        auto p = fundamental_presentation(x);
        CHECK(int(p.generators.size()) == int(x.edges.size()) - nv + 1);
    }
}

TEST_CASE("loop words") {
    SUBCASE("single loop") {
        TwoComplex x = make_circle();
        auto p = fundamental_presentation(x);
        Word w = loop_word(x, p, {{0, 1}});
        CHECK(w == Word{{0, 1}});
    }
    SUBCASE("backtracking cancels") {
        TwoComplex x = make_circle();
        auto p = fundamental_presentation(x);
        CHECK(loop_word(x, p, {{0, 1}, {0, -1}}).empty());
    }
    SUBCASE("triangle loop normalizes to the cotree edge") {
        TwoComplex x = make_triangle();
        auto p = fundamental_presentation(x);
        // e1 (v0->v1), e3 (v1->v2), e2 reversed (v2->v0)
        Word w = loop_word(x, p, {{0, 1}, {2, 1}, {1, -1}});
        CHECK(w == Word{{0, 1}});  // e3 is the only generator
    }
    SUBCASE("concatenation maps to concatenation") {
        TwoComplex x = make_wedge2();
        auto p = fundamental_presentation(x);
        std::vector<EdgeRef> p1{{0, 1}, {1, 1}}, p2{{1, -1}, {0, 1}};
        std::vector<EdgeRef> cat = p1;
        cat.insert(cat.end(), p2.begin(), p2.end());
        Word w1 = loop_word(x, p, p1), w2 = loop_word(x, p, p2);
        Word expect = w1;
        expect.insert(expect.end(), w2.begin(), w2.end());
        CHECK(loop_word(x, p, cat) == free_reduce(expect));
    }
    SUBCASE("error taxonomy") {
        TwoComplex x = make_triangle();
        auto p = fundamental_presentation(x);
        CHECK_THROWS_AS(loop_word(x, p, {{0, 1}}), DomainError);           // not closed
        CHECK_THROWS_AS(loop_word(x, p, {{2, 1}, {2, -1}}), DomainError);  // starts at v1
    }
}

TEST_CASE("presentation is deterministic") {
    TwoComplex a = make_torus(), b = make_torus();
    auto pa = fundamental_presentation(a), pb = fundamental_presentation(b);
    CHECK(pa.generators == pb.generators);
    CHECK(pa.relators == pb.relators);
    CHECK(pa.edge_in_tree == pb.edge_in_tree);
}

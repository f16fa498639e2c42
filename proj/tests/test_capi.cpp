// The shared-library surface: sessions, named-document loading, error codes,
// and a representative operation from each group, driven purely through the
// C header.

#include <doctest.h>

#include <cstring>
#include <string>

#include "flatk.h"

namespace {

const char* kCircle =
    R"({"vertices":["v"],"edges":[{"id":"a","src":"v","dst":"v"}],"faces":[],"basepoint":"v"})";

std::string take(char* out) {
    REQUIRE(out != nullptr);
    std::string s(out);
    flatk_string_free(out);
    return s;
}

}  // namespace

TEST_CASE("session lifecycle and version") {
    CHECK(std::strlen(flatk_version()) > 0);
    flatk_session* s = flatk_session_new();
    REQUIRE(s != nullptr);
    CHECK(std::string(flatk_last_error(s)).empty());
    flatk_session_free(s);
    flatk_session_free(nullptr);  // must be a no-op
}

TEST_CASE("operations report through JSON and error codes") {
    flatk_session* s = flatk_session_new();
    char* out = nullptr;

    SUBCASE("validate and present") {
        CHECK(flatk_space_validate(s, kCircle, &out) == FLATK_OK);
        CHECK(take(out).find("\"ok\": true") != std::string::npos);
        out = nullptr;
        CHECK(flatk_space_present(s, kCircle, &out) == FLATK_OK);
        CHECK(take(out).find("\"generators\"") != std::string::npos);
    }
    SUBCASE("domain errors carry their typed code") {
        const char* broken =
            R"({"vertices":["u","v"],"edges":[],"faces":[],"basepoint":"u"})";
        CHECK(flatk_space_validate(s, broken, &out) == FLATK_ERR_DOMAIN);
        CHECK(out == nullptr);
        CHECK(std::string(flatk_last_error(s)).rfind("Disconnected", 0) == 0);
    }
    SUBCASE("parse errors are distinguished") {
        CHECK(flatk_space_validate(s, "{not json", &out) == FLATK_ERR_PARSE);
        CHECK(flatk_space_validate(s, R"({"vertices":[]})", &out) == FLATK_ERR_PARSE);
    }
    SUBCASE("monodromy through a named document") {
        const char* fib =
            R"({"space":{"vertices":["v"],"edges":[{"id":"a","src":"v","dst":"v"}],"faces":[],)"
            R"("basepoint":"v"},"field":"F(2)","rank":2,"rep":{"a":[["0","1"],["1","1"]]}})";
        CHECK(flatk_load(s, "fib2", fib) == FLATK_OK);
        CHECK(flatk_locsys_monodromy(s, "fib2", 0, &out) == FLATK_OK);
        CHECK(take(out).find("\"order\": 3") != std::string::npos);
        // duplicate names are rejected
        CHECK(flatk_load(s, "fib2", fib) == FLATK_ERR_PARSE);
    }
    SUBCASE("cap exceeded is a domain error") {
        const char* uni =
            R"({"space":{"vertices":["v"],"edges":[{"id":"a","src":"v","dst":"v"}],"faces":[],)"
            R"("basepoint":"v"},"field":"Q","rank":2,"rep":{"a":[["1","1"],["0","1"]]}})";
        CHECK(flatk_locsys_monodromy(s, uni, 0, &out) == FLATK_ERR_DOMAIN);
        CHECK(std::string(flatk_last_error(s)).rfind("CapExceeded", 0) == 0);
    }
    SUBCASE("survival and cohomology round out the surface") {
        CHECK(flatk_descend_survival(s, R"({"primes":[2],"depth":64})", 12, &out) == FLATK_OK);
        std::string rep = take(out);
        CHECK(rep.find("[\n      12,\n      3\n    ]") != std::string::npos);
        out = nullptr;
        CHECK(flatk_cohom_h1(s, kCircle, "F(3)", &out) == FLATK_OK);
        CHECK(take(out).find("\"dimension\": 1") != std::string::npos);
    }
    SUBCASE("null arguments are usage errors") {
        CHECK(flatk_space_validate(nullptr, kCircle, &out) == FLATK_ERR_USAGE);
        CHECK(flatk_space_validate(s, kCircle, nullptr) == FLATK_ERR_USAGE);
    }
    flatk_session_free(s);
}

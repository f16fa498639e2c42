// Command-line front end. All computation goes through the shared-library C
// API; this file only parses arguments, reads documents, and renders reports.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "flatk.h"

using Json = nlohmann::json;

namespace {

struct Options {
    std::string format = "text";
    unsigned long seed = 0;
    long cap = 0;  // 0 = library default
    std::vector<std::string> loads;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// document arguments may be file paths or names registered via --load
std::string doc_argument(const std::string& arg) {
    std::ifstream probe(arg);
    if (probe.good()) return read_file(arg);
    return arg;  // treat as a loaded-document name
}

class Session {
public:
    Session() : s_(flatk_session_new()) {}
    ~Session() { flatk_session_free(s_); }
    Session(const Session&) = delete;
    Session& operator=(const Session&) = delete;
    flatk_session* get() { return s_; }

    void apply_loads(const std::vector<std::string>& loads) {
        for (const auto& spec : loads) {
            auto eq = spec.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error("--load expects name=path, got '" + spec + "'");
            std::string text = read_file(spec.substr(eq + 1));
            if (flatk_load(s_, spec.substr(0, eq).c_str(), text.c_str()) != FLATK_OK)
                throw std::runtime_error(flatk_last_error(s_));
        }
    }

private:
    flatk_session* s_;
};

std::string matrix_line(const Json& rows) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < rows.size(); ++i) {
        os << (i ? "; " : "");
        for (size_t j = 0; j < rows[i].size(); ++j)
            os << (j ? " " : "") << rows[i][j].get<std::string>();
    }
    os << "]";
    return os.str();
}

void render_text(const Json& r, std::ostream& os) {
    std::string op = r.value("operation", "");
    os << "operation: " << op << "\n";
    if (op == "space validation") {
        os << "ok: " << (r["ok"].get<bool>() ? "true" : "false") << "\n";
        os << "vertices: " << r["vertices"] << "  edges: " << r["edges"]
           << "  faces: " << r["faces"] << "\n";
    } else if (op == "fundamental presentation") {
        os << "spanning tree:";
        if (r["spanning_tree"].empty()) os << " (none)";
        for (const auto& e : r["spanning_tree"]) os << " " << e.get<std::string>();
        os << "\ngenerators:";
        for (const auto& g : r["generators"]) os << " " << g.get<std::string>();
        os << "\nrelators:";
        if (r["relators"].empty()) os << " (none)";
        for (const auto& rel : r["relators"]) os << " " << rel.get<std::string>();
        os << "\n";
    } else if (op == "local-system check") {
        os << "ok: true\nrank: " << r["rank"] << "\nfield: " << r["field"].get<std::string>()
           << "\n";
    } else if (op == "triviality test") {
        os << "trivial: " << (r["trivial"].get<bool>() ? "true" : "false") << "\n";
    } else if (op == "monodromy image") {
        os << "order " << r["order"] << "\n";
    } else if (op == "isomorphism test") {
        os << "status: " << r["status"].get<std::string>() << "\n";
        if (r.contains("witness")) os << "witness: " << matrix_line(r["witness"]) << "\n";
    } else if (op == "global sections") {
        os << "dimension: " << r["dimension"] << "\n";
        for (const auto& b : r["basis"]) {
            os << "  section:";
            for (const auto& x : b) os << " " << x.get<std::string>();
            os << "\n";
        }
    } else if (op == "covering construction") {
        os << "degree: " << r["degree"]
           << "\nconnected: " << (r["connected"].get<bool>() ? "true" : "false")
           << "\ngalois: " << (r["galois"].get<bool>() ? "true" : "false") << "\n";
        if (r.contains("group")) os << "group: " << r["group"].get<std::string>() << "\n";
        os << "total vertices: " << r["total"]["vertices"].size() << "\n";
    } else if (op == "covering decomposition") {
        os << "degree: " << r["degree"] << "\ncomponents: " << r["components"].size() << "\n";
        for (const auto& c : r["components"])
            os << "  degree " << c["degree"] << ", vertices " << c["vertices"] << ", valid "
               << (c["valid"].get<bool>() ? "true" : "false") << "\n";
    } else if (op == "pullback along covering" || op == "pushforward along covering") {
        const Json& sys = r["system"];
        os << "rank: " << sys["rank"] << "\nfield: " << sys["field"].get<std::string>() << "\n";
        if (r.contains("trivial"))
            os << "trivial: " << (r["trivial"].get<bool>() ? "true" : "false") << "\n";
        for (auto it = sys["rep"].begin(); it != sys["rep"].end(); ++it)
            os << "rep(" << it.key() << "): " << matrix_line(it.value()) << "\n";
    } else if (op == "parallel transport") {
        os << "group: " << r["group"].get<std::string>() << "\n";
        for (const auto& t : r["transports"])
            os << "  gamma " << t["gamma"].get<std::string>() << ": " << matrix_line(t["matrix"])
               << "\n";
        os << "fiber bijections: " << r["fiber_bijections"] << "\n";
    } else if (op == "exact-sequence check") {
        os << "group order: " << r["group_order"]
           << "\nsubgroup generators: " << r["subgroup_generators"] << "\n";
        os << "kernel match: " << (r["kernel_match"].get<bool>() ? "true" : "false") << "\n";
        os << "factors through deck group: "
           << (r["factors_through_deck_group"].get<bool>() ? "true" : "false") << "\n";
        os << "pullback trivial: " << (r["pullback_trivial"].get<bool>() ? "true" : "false")
           << "\n";
        os << "passed: " << (r["passed"].get<bool>() ? "true" : "false") << "\n";
    } else if (op == "field descent") {
        os << "from: " << r["from"].get<std::string>() << "\nto: " << r["to"].get<std::string>()
           << "\n";
        for (auto it = r["vertex_maps"].begin(); it != r["vertex_maps"].end(); ++it)
            os << "  " << it.key() << ": " << matrix_line(it.value()) << "\n";
    } else if (op == "reduction pipeline") {
        os << "prime: " << r["prime"] << "\ngroup order: " << r["group_order"]
           << "\ncover degree: " << r["cover_degree"] << "\n";
        os << "cover galois: " << (r["cover_galois"].get<bool>() ? "true" : "false") << "\n";
        os << "cover trivializes reduction: "
           << (r["cover_trivializes_reduction"].get<bool>() ? "true" : "false") << "\n";
    } else if (op == "level of definition") {
        if (r["status"].get<std::string>() == "found") {
            os << "level: " << r["level"] << "\nwitness: " << matrix_line(r["witness"]) << "\n";
        } else {
            os << "status: unsupported-class\n";
        }
    } else if (op == "finite-quotient survival") {
        os << "primes:";
        for (const auto& p : r["primes"]) os << " " << p;
        os << "\ndepth: " << r["depth"] << "\nlevels: " << r["levels"] << "\n";
        os << "  m   surviving order\n";
        for (const auto& row : r["rows"]) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%3ld   %ld", row[0].get<long>(), row[1].get<long>());
            os << buf << "\n";
        }
    } else if (op == "first cohomology, constant coefficients" ||
               op == "additive characters of the fundamental group") {
        os << "field: " << r["field"].get<std::string>() << "\ndimension: " << r["dimension"]
           << "\n";
    } else if (op == "rank-r class enumeration") {
        os << "field: " << r["field"].get<std::string>() << "\nrank: " << r["rank"]
           << "\ntuples: " << r["tuples"] << "\nclasses: " << r["count"] << "\n";
        for (const auto& c : r["classes"]) {
            os << "  orbit size " << c["orbit_size"] << ":";
            for (auto it = c["rep"].begin(); it != c["rep"].end(); ++it)
                os << " " << it.key() << "=" << matrix_line(it.value());
            os << "\n";
        }
    } else {
        os << r.dump(2) << "\n";
    }
}

int finish(flatk_session* s, const Options& opt, int status, char* out) {
    if (status != FLATK_OK) {
        std::cerr << "error: " << flatk_last_error(s) << "\n";
        flatk_string_free(out);
        return status == FLATK_ERR_PARSE ? 2 : 1;
    }
    Json report = Json::parse(out);
    flatk_string_free(out);
    if (opt.format == "rows")
        std::cout << report.dump(2) << "\n";
    else
        render_text(report, std::cout);
    // a randomized miss is reported distinctly and exits nonzero
    if (report.value("operation", "") == "isomorphism test" &&
        report.value("status", "") == "inconclusive")
        return 1;
    return 0;
}

// ---------------------------------------------------------------- demos

const char* kCircleSpace =
    R"({"vertices":["v"],"edges":[{"id":"a","src":"v","dst":"v"}],"faces":[],"basepoint":"v"})";

std::string circle_system(const std::string& field, const std::string& entries) {
    std::ostringstream os;
    os << R"({"space":)" << kCircleSpace << R"(,"field":")" << field
       << R"(","rank":2,"rep":{"a":)" << entries << "}}";
    return os.str();
}

int demo_solenoid(Session& session, const Options& opt) {
    std::cout << "dyadic tower: survival of Z/m quotients\n";
    char* out = nullptr;
    int rc = flatk_descend_survival(session.get(), R"({"primes":[2],"depth":64})", 20, &out);
    int code = finish(session.get(), opt, rc, out);
    if (code != 0) return code;
    std::cout << "\nall primes up to 20 inverted: every finite quotient collapses\n";
    out = nullptr;
    rc = flatk_descend_survival(session.get(), R"({"primes":[2,3,5,7,11,13,17,19],"depth":100})",
                                20, &out);
    return finish(session.get(), opt, rc, out);
}

int demo_fibonacci(Session& session, const Options& opt) {
    std::string fib = circle_system("Q", R"([["0","1"],["1","1"]])");
    std::cout << "rational system with infinite monodromy, reduced at p = 2\n";
    char* out = nullptr;
    int rc = flatk_descend_modp(session.get(), fib.c_str(), 2, opt.cap, &out);
    int code = finish(session.get(), opt, rc, out);
    if (code != 0) return code;

    std::cout << "\nmod-2 system on the circle: monodromy order\n";
    std::string fib2 = circle_system("F(2)", R"([["0","1"],["1","1"]])");
    out = nullptr;
    rc = flatk_locsys_monodromy(session.get(), fib2.c_str(), opt.cap, &out);
    code = finish(session.get(), opt, rc, out);
    if (code != 0) return code;

    std::cout << "\nexact sequence over the order-3 cyclic cover\n";
    std::ostringstream cover;
    cover << R"({"base":)" << kCircleSpace
          << R"(,"mode":"onto-group","group":{"kind":"cyclic","n":3},"rho":{"a":1}})";
    out = nullptr;
    rc = flatk_cover_exactseq(session.get(), fib2.c_str(), cover.str().c_str(), &out);
    return finish(session.get(), opt, rc, out);
}

int demo_torus(Session& session, const Options& opt) {
    const char* torus =
        R"({"vertices":["v"],"edges":[{"id":"a","src":"v","dst":"v"},{"id":"b","src":"v","dst":"v"}],)"
        R"("faces":[["a","b","a^-1","b^-1"]],"basepoint":"v"})";
    for (const char* field : {"Q", "F(2)", "F(3)", "F(5)"}) {
        std::cout << "== field " << field << "\n";
        char* out = nullptr;
        int rc = flatk_cohom_h1(session.get(), torus, field, &out);
        int code = finish(session.get(), opt, rc, out);
        if (code != 0) return code;
        out = nullptr;
        rc = flatk_cohom_homga(session.get(), torus, field, &out);
        code = finish(session.get(), opt, rc, out);
        if (code != 0) return code;
    }
    std::cout << "== rank-1 classes over F(3)\n";
    char* out = nullptr;
    int rc = flatk_cohom_classes(session.get(), torus, "F(3)", 1, 2000000, &out);
    return finish(session.get(), opt, rc, out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact local systems, coverings, and descent on finite 2-complexes"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--format", opt.format, "text or rows")->check(CLI::IsMember({"text", "rows"}));
    app.add_option("--seed", opt.seed, "seed for randomized searches");
    app.add_option("--cap", opt.cap, "cap for group closures and enumerations");
    app.add_option("--load", opt.loads, "register name=path documents for references");

    std::string arg1, arg2, field = "Q";
    long p = 2, level = 1, bound = 20, depth = 0, trials = 64;
    int rank = 1;
    std::vector<long> primes;

    auto* space = app.add_subcommand("space", "base-space operations");
    space->require_subcommand(1);
    auto* sp_validate = space->add_subcommand("validate", "check a complex document");
    sp_validate->add_option("space", arg1)->required();
    auto* sp_present = space->add_subcommand("present", "fundamental-group presentation");
    sp_present->add_option("space", arg1)->required();

    auto* locsys = app.add_subcommand("locsys", "local-system operations");
    locsys->require_subcommand(1);
    auto* ls_check = locsys->add_subcommand("check", "validate a local system");
    ls_check->add_option("system", arg1)->required();
    auto* ls_trivial = locsys->add_subcommand("trivial", "test literal triviality");
    ls_trivial->add_option("system", arg1)->required();
    auto* ls_mono = locsys->add_subcommand("monodromy", "finite monodromy image");
    ls_mono->add_option("system", arg1)->required();
    auto* ls_iso = locsys->add_subcommand("iso", "isomorphism test");
    ls_iso->add_option("system-a", arg1)->required();
    ls_iso->add_option("system-b", arg2)->required();
    ls_iso->add_option("--trials", trials);
    auto* ls_sections = locsys->add_subcommand("sections", "global flat sections");
    ls_sections->add_option("system", arg1)->required();

    auto* cover = app.add_subcommand("cover", "covering-space operations");
    cover->require_subcommand(1);
    auto* cv_build = cover->add_subcommand("build", "build a cover from a spec");
    cv_build->add_option("spec", arg1)->required();
    auto* cv_dec = cover->add_subcommand("decompose", "connected components");
    cv_dec->add_option("spec", arg1)->required();
    auto* cv_pull = cover->add_subcommand("pullback", "pull a system back");
    cv_pull->add_option("system", arg1)->required();
    cv_pull->add_option("spec", arg2)->required();
    auto* cv_push = cover->add_subcommand("pushforward", "induce a system down");
    cv_push->add_option("system", arg1)->required();
    cv_push->add_option("spec", arg2)->required();
    auto* cv_trans = cover->add_subcommand("transport", "parallel transport table");
    cv_trans->add_option("system", arg1)->required();
    cv_trans->add_option("spec", arg2)->required();
    auto* cv_exact = cover->add_subcommand("exactseq", "exact-sequence check");
    cv_exact->add_option("system", arg1)->required();
    cv_exact->add_option("spec", arg2)->required();

    auto* descend = app.add_subcommand("descend", "descent operations");
    descend->require_subcommand(1);
    auto* de_field = descend->add_subcommand("field", "field descent of a trivialization");
    de_field->add_option("cocycle", arg1)->required();
    de_field->add_option("trivialization", arg2)->required();
    auto* de_modp = descend->add_subcommand("modp", "reduction pipeline");
    de_modp->add_option("system", arg1)->required();
    de_modp->add_option("--p", p)->required();
    auto* de_level = descend->add_subcommand("tower-level", "level of definition");
    de_level->add_option("tower", arg1)->required();
    de_level->add_option("system", arg2)->required();
    de_level->add_option("--level", level)->required();
    auto* de_surv = descend->add_subcommand("survival", "finite-quotient survival table");
    de_surv->add_option("tower", arg1);
    de_surv->add_option("--primes", primes)->delimiter(',');
    de_surv->add_option("--depth", depth);
    de_surv->add_option("--bound", bound);

    auto* cohom = app.add_subcommand("cohom", "cohomology operations");
    cohom->require_subcommand(1);
    auto* co_h1 = cohom->add_subcommand("h1", "constant-coefficient first cohomology");
    co_h1->add_option("space", arg1)->required();
    co_h1->add_option("--field", field);
    auto* co_ga = cohom->add_subcommand("homga", "additive characters");
    co_ga->add_option("space", arg1)->required();
    co_ga->add_option("--field", field);
    auto* co_cl = cohom->add_subcommand("classes", "rank-r representation classes");
    co_cl->add_option("space", arg1)->required();
    co_cl->add_option("--field", field);
    co_cl->add_option("--rank", rank);

    auto* demo = app.add_subcommand("demo", "worked examples");
    demo->require_subcommand(1);
    auto* dm_sol = demo->add_subcommand("solenoid", "solenoid tower survival");
    auto* dm_fib = demo->add_subcommand("fibonacci", "reduction of the Fibonacci system");
    auto* dm_tor = demo->add_subcommand("torus", "torus cohomology comparison");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        Session session;
        session.apply_loads(opt.loads);
        flatk_session* s = session.get();
        char* out = nullptr;
        // sequence point: the API call fills `out` before finish reads it
        auto run = [&](int rc) { return finish(s, opt, rc, out); };

        if (sp_validate->parsed())
            return run(flatk_space_validate(s, doc_argument(arg1).c_str(), &out));
        if (sp_present->parsed())
            return run(flatk_space_present(s, doc_argument(arg1).c_str(), &out));
        if (ls_check->parsed())
            return run(flatk_locsys_check(s, doc_argument(arg1).c_str(), &out));
        if (ls_trivial->parsed())
            return run(flatk_locsys_trivial(s, doc_argument(arg1).c_str(), &out));
        if (ls_mono->parsed())
            return run(flatk_locsys_monodromy(s, doc_argument(arg1).c_str(), opt.cap, &out));
        if (ls_iso->parsed())
            return run(flatk_locsys_iso(s, doc_argument(arg1).c_str(),
                                           doc_argument(arg2).c_str(), trials, opt.seed, &out));
        if (ls_sections->parsed())
            return run(flatk_locsys_sections(s, doc_argument(arg1).c_str(), &out));
        if (cv_build->parsed())
            return run(flatk_cover_build(s, doc_argument(arg1).c_str(), &out));
        if (cv_dec->parsed())
            return run(flatk_cover_decompose(s, doc_argument(arg1).c_str(), &out));
        if (cv_pull->parsed())
            return run(flatk_cover_pullback(s, doc_argument(arg1).c_str(),
                                               doc_argument(arg2).c_str(), &out));
        if (cv_push->parsed())
            return run(flatk_cover_pushforward(s, doc_argument(arg1).c_str(),
                                                  doc_argument(arg2).c_str(), &out));
        if (cv_trans->parsed())
            return run(flatk_cover_transport(s, doc_argument(arg1).c_str(),
                                                doc_argument(arg2).c_str(), &out));
        if (cv_exact->parsed())
            return run(flatk_cover_exactseq(s, doc_argument(arg1).c_str(),
                                               doc_argument(arg2).c_str(), &out));
        if (de_field->parsed())
            return run(flatk_descend_field(s, doc_argument(arg1).c_str(),
                                              doc_argument(arg2).c_str(), &out));
        if (de_modp->parsed())
            return run(flatk_descend_modp(s, doc_argument(arg1).c_str(), p, opt.cap, &out));
        if (de_level->parsed())
            return run(flatk_descend_tower_level(s, doc_argument(arg1).c_str(),
                                                    doc_argument(arg2).c_str(), level, &out));
        if (de_surv->parsed()) {
            std::string tower;
            if (!arg1.empty()) {
                tower = doc_argument(arg1);
            } else {
                if (primes.empty() || depth <= 0)
                    throw std::runtime_error("survival needs a tower file or --primes and --depth");
                Json t{{"primes", primes}, {"depth", depth}};
                tower = t.dump();
            }
            return run(flatk_descend_survival(s, tower.c_str(), bound, &out));
        }
        if (co_h1->parsed())
            return run(flatk_cohom_h1(s, doc_argument(arg1).c_str(), field.c_str(), &out));
        if (co_ga->parsed())
            return run(flatk_cohom_homga(s, doc_argument(arg1).c_str(), field.c_str(), &out));
        if (co_cl->parsed())
            return run(flatk_cohom_classes(s, doc_argument(arg1).c_str(), field.c_str(), rank,
                                              opt.cap > 0 ? opt.cap : 2000000, &out));
        if (dm_sol->parsed()) return demo_solenoid(session, opt);
        if (dm_fib->parsed()) return demo_fibonacci(session, opt);
        if (dm_tor->parsed()) return demo_torus(session, opt);

        std::cerr << "error: no operation selected\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

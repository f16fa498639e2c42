// extern-C surface over the core library. Every operation parses JSON
// documents, runs the exact computation, and serializes a JSON report.

#include "flatk.h"

#include <cstring>
#include <string>

#include "json_io.hpp"

using namespace flatk;

struct flatk_session {
    Workspace workspace;
    std::string last_error;
};

namespace {

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
int run_op(flatk_session* s, char** out, Fn&& fn) {
    if (!s) return FLATK_ERR_USAGE;
    if (!out) {
        s->last_error = "null output pointer";
        return FLATK_ERR_USAGE;
    }
    *out = nullptr;
    try {
        Json report = fn();
        *out = dup_string(report.dump(2));
        s->last_error.clear();
        return FLATK_OK;
    } catch (const DomainError& e) {
        s->last_error = e.what();
        return FLATK_ERR_DOMAIN;
    } catch (const ParseError& e) {
        s->last_error = e.what();
        return FLATK_ERR_PARSE;
    } catch (const Json::exception& e) {
        s->last_error = e.what();
        return FLATK_ERR_PARSE;
    } catch (const std::exception& e) {
        s->last_error = e.what();
        return FLATK_ERR_DOMAIN;
    }
}

// a document argument is either inline JSON (starts with '{') or a loaded name
Json doc_arg(flatk_session* s, const char* text) {
    if (!text) throw ParseError("missing document argument");
    std::string t(text);
    size_t i = t.find_first_not_of(" \t\r\n");
    if (i != std::string::npos && (t[i] == '{' || t[i] == '[')) return Json::parse(t);
    return Json(t);  // a name; resolved against the workspace
}

Json basis_rows(const std::vector<std::vector<FieldElem>>& basis) {
    Json rows = Json::array();
    for (const auto& v : basis) {
        Json row = Json::array();
        for (const auto& x : v) row.push_back(x.to_string());
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

extern "C" {

const char* flatk_version(void) { return "flatk 0.1.0"; }

flatk_session* flatk_session_new(void) { return new flatk_session(); }

void flatk_session_free(flatk_session* s) { delete s; }

const char* flatk_last_error(const flatk_session* s) {
    return s ? s->last_error.c_str() : "no session";
}

void flatk_string_free(char* s) { delete[] s; }

int flatk_load(flatk_session* s, const char* name, const char* json_text) {
    if (!s) return FLATK_ERR_USAGE;
    try {
        if (!name || !json_text) throw ParseError("flatk_load needs a name and a document");
        s->workspace.load(name, Json::parse(json_text));
        s->last_error.clear();
        return FLATK_OK;
    } catch (const std::exception& e) {
        s->last_error = e.what();
        return FLATK_ERR_PARSE;
    }
}

int flatk_space_validate(flatk_session* s, const char* space, char** out) {
    return run_op(s, out, [&] {
        TwoComplex x = parse_complex(doc_arg(s, space), &s->workspace);
        auto errs = validate(x);
        if (!errs.empty()) {
            auto colon = errs[0].find(':');
            throw DomainError(errs[0].substr(0, colon), errs[0].substr(colon + 2));
        }
        return Json{{"operation", "space validation"},
                    {"ok", true},
                    {"vertices", x.vertices.size()},
                    {"edges", x.edges.size()},
                    {"faces", x.faces.size()}};
    });
}

int flatk_space_present(flatk_session* s, const char* space, char** out) {
    return run_op(s, out, [&] {
        SpacePtr sp = parse_space(doc_arg(s, space), &s->workspace);
        const auto& cx = sp->complex();
        const auto& pres = sp->pres();
        Json gens = Json::array(), tree = Json::array(), rels = Json::array();
        for (int g : pres.generators) gens.push_back(cx.edges[size_t(g)].id);
        for (size_t e = 0; e < cx.edges.size(); ++e)
            if (pres.edge_in_tree[e]) tree.push_back(cx.edges[e].id);
        for (const auto& r : pres.relators) rels.push_back(word_to_string(cx, pres, r));
        return Json{{"operation", "fundamental presentation"},
                    {"spanning_tree", std::move(tree)},
                    {"generators", std::move(gens)},
                    {"relators", std::move(rels)}};
    });
}

int flatk_locsys_check(flatk_session* s, const char* locsys, char** out) {
    return run_op(s, out, [&] {
        LocalSystem e = parse_locsys(doc_arg(s, locsys), &s->workspace);
        return Json{{"operation", "local-system check"},
                    {"ok", true},
                    {"rank", e.rank()},
                    {"field", e.ctx().to_string()},
                    {"generators", e.reps().size()}};
    });
}

int flatk_locsys_trivial(flatk_session* s, const char* locsys, char** out) {
    return run_op(s, out, [&] {
        LocalSystem e = parse_locsys(doc_arg(s, locsys), &s->workspace);
        return Json{{"operation", "triviality test"}, {"trivial", e.is_trivial()}};
    });
}

int flatk_locsys_monodromy(flatk_session* s, const char* locsys, long cap, char** out) {
    return run_op(s, out, [&] {
        LocalSystem e = parse_locsys(doc_arg(s, locsys), &s->workspace);
        auto grp = monodromy_image(e, cap > 0 ? cap : kDefaultClosureCap);
        if (!grp)
            throw DomainError("CapExceeded",
                              "monodromy image is infinite or exceeds the closure cap");
        return Json{{"operation", "monodromy image"},
                    {"order", grp->order()},
                    {"field", e.ctx().to_string()},
                    {"rank", e.rank()}};
    });
}

int flatk_locsys_iso(flatk_session* s, const char* a, const char* b, long trials,
                     unsigned long seed, char** out) {
    return run_op(s, out, [&] {
        LocalSystem ea = parse_locsys(doc_arg(s, a), &s->workspace);
        LocalSystem eb = parse_locsys(doc_arg(s, b), &s->workspace);
        auto iso = iso_test(ea, eb, trials > 0 ? int(trials) : 64, seed);
        Json j{{"operation", "isomorphism test"}};
        switch (iso.status) {
            case IsoStatus::Isomorphic:
                j["status"] = "isomorphic";
                j["witness"] = matrix_to_json(*iso.witness);
                break;
            case IsoStatus::ProvablyDistinct: j["status"] = "provably-distinct"; break;
            case IsoStatus::Inconclusive: j["status"] = "inconclusive"; break;
        }
        return j;
    });
}

int flatk_locsys_sections(flatk_session* s, const char* locsys, char** out) {
    return run_op(s, out, [&] {
        LocalSystem e = parse_locsys(doc_arg(s, locsys), &s->workspace);
        auto basis = global_sections(e);
        return Json{{"operation", "global sections"},
                    {"dimension", basis.size()},
                    {"basis", basis_rows(basis)}};
    });
}

int flatk_cover_build(flatk_session* s, const char* spec, char** out) {
    return run_op(s, out, [&] {
        Covering c = parse_cover_spec(doc_arg(s, spec), &s->workspace);
        Json j = covering_to_json(c);
        j["operation"] = "covering construction";
        return j;
    });
}

int flatk_cover_decompose(flatk_session* s, const char* spec, char** out) {
    return run_op(s, out, [&] {
        Covering c = parse_cover_spec(doc_arg(s, spec), &s->workspace);
        auto comps = decompose(c);
        Json arr = Json::array();
        for (const auto& comp : comps) {
            arr.push_back(Json{{"degree", comp.degree},
                               {"vertices", comp.total.vertices.size()},
                               {"valid", validate_covering(comp).empty()}});
        }
        return Json{{"operation", "covering decomposition"},
                    {"degree", c.degree},
                    {"components", std::move(arr)}};
    });
}

int flatk_cover_pullback(flatk_session* s, const char* locsys, const char* spec, char** out) {
    return run_op(s, out, [&] {
        LocalSystem e = parse_locsys(doc_arg(s, locsys), &s->workspace);
        Covering c = parse_cover_spec(doc_arg(s, spec), &s->workspace);
        LocalSystem pb = pullback(e, c);
        Json j{{"operation", "pullback along covering"}};
        j["system"] = locsys_to_json(pb);
        j["trivial"] = pb.is_trivial();
        return j;
    });
}

int flatk_cover_pushforward(flatk_session* s, const char* cocycle_on_total, const char* spec,
                            char** out) {
    return run_op(s, out, [&] {
        Covering c = parse_cover_spec(doc_arg(s, spec), &s->workspace);
        Json doc = doc_arg(s, cocycle_on_total);
        const Json& body = doc.is_string() ? s->workspace.get(doc.get<std::string>()) : doc;
        LocalSystem pushed = body.contains("labels")
                                 ? pushforward(c, parse_cocycle(body, &s->workspace))
                                 : pushforward(c, parse_locsys(body, &s->workspace));
        Json j{{"operation", "pushforward along covering"}};
        j["system"] = locsys_to_json(pushed);
        return j;
    });
}

int flatk_cover_transport(flatk_session* s, const char* locsys, const char* spec, char** out) {
    return run_op(s, out, [&] {
        LocalSystem e = parse_locsys(doc_arg(s, locsys), &s->workspace);
        Covering c = parse_cover_spec(doc_arg(s, spec), &s->workspace);
        Json rows = Json::array();
        for (int g = 0; g < c.group->size(); ++g) {
            Matrix t = parallel_transport(e, c, g);
            rows.push_back(Json{{"gamma", c.group->elem_name(g)}, {"matrix", matrix_to_json(t)}});
        }
        return Json{{"operation", "parallel transport"},
                    {"group", c.group->describe()},
                    {"transports", std::move(rows)},
                    {"fiber_bijections", etale_image_size(c, c.base->complex().basepoint)}};
    });
}

int flatk_cover_exactseq(flatk_session* s, const char* locsys, const char* spec, char** out) {
    return run_op(s, out, [&] {
        LocalSystem e = parse_locsys(doc_arg(s, locsys), &s->workspace);
        Covering c = parse_cover_spec(doc_arg(s, spec), &s->workspace);
        auto rep = exact_sequence_report(e, c);
        return Json{{"operation", "exact-sequence check"},
                    {"group_order", rep.group_order},
                    {"subgroup_generators", rep.n_subgroup_generators},
                    {"kernel_match", rep.kernel_match},
                    {"factors_through_deck_group", rep.factors_through},
                    {"pullback_trivial", rep.pullback_trivial},
                    {"iff_holds", rep.iff_holds},
                    {"passed", rep.passed()},
                    {"violations", rep.violations}};
    });
}

int flatk_descend_field(flatk_session* s, const char* cocycle, const char* trivialization,
                        char** out) {
    return run_op(s, out, [&] {
        CechCocycle c = parse_cocycle(doc_arg(s, cocycle), &s->workspace);
        Trivialization t = parse_trivialization(doc_arg(s, trivialization), &s->workspace);
        Embedding emb = Embedding::make(c.ctx(), t.ctx);
        Trivialization down = field_descent(c, t, emb);
        Json maps;
        for (size_t v = 0; v < down.vertex_maps.size(); ++v)
            maps[down.space->complex().vertices[v]] = matrix_to_json(down.vertex_maps[v]);
        return Json{{"operation", "field descent"},
                    {"from", t.ctx.to_string()},
                    {"to", down.ctx.to_string()},
                    {"vertex_maps", std::move(maps)}};
    });
}

int flatk_descend_modp(flatk_session* s, const char* locsys, long p, long cap, char** out) {
    return run_op(s, out, [&] {
        LocalSystem e = parse_locsys(doc_arg(s, locsys), &s->workspace);
        auto res = mod_p_pipeline(e, p, cap > 0 ? cap : kDefaultClosureCap);
        bool triv = trivializes(res.reduced, res.cover);
        return Json{{"operation", "reduction pipeline"},
                    {"prime", p},
                    {"group_order", res.group.order()},
                    {"cover_degree", res.cover.degree},
                    {"cover_connected", res.cover.connected},
                    {"cover_galois", res.cover.galois},
                    {"cover_trivializes_reduction", triv},
                    {"reduced", locsys_to_json(res.reduced)}};
    });
}

int flatk_descend_tower_level(flatk_session* s, const char* tower, const char* locsys, long level,
                              char** out) {
    return run_op(s, out, [&] {
        Tower t = parse_tower(doc_arg(s, tower), &s->workspace);
        LocalSystem e = parse_locsys(doc_arg(s, locsys), &s->workspace);
        auto res = level_of_definition(t, level, e);
        Json j{{"operation", "level of definition"}, {"level_queried", level}};
        if (res.status == LevelOfDefinition::Status::UnsupportedClass) {
            j["status"] = "unsupported-class";
        } else {
            j["status"] = "found";
            j["level"] = res.level;
            j["witness"] = matrix_to_json(res.witness->rep(0));
        }
        return j;
    });
}

int flatk_descend_survival(flatk_session* s, const char* tower, long bound, char** out) {
    return run_op(s, out, [&] {
        Tower t = parse_tower(doc_arg(s, tower), &s->workspace);
        auto rows = etale_quotients(t, bound);
        Json arr = Json::array();
        for (auto& [m, order] : rows) arr.push_back(Json::array({m, order}));
        return Json{{"operation", "finite-quotient survival"},
                    {"primes", t.primes},
                    {"depth", t.depth},
                    {"levels", t.indices.size()},
                    {"rows", std::move(arr)}};
    });
}

int flatk_cohom_h1(flatk_session* s, const char* space, const char* field, char** out) {
    return run_op(s, out, [&] {
        TwoComplex x = parse_complex(doc_arg(s, space), &s->workspace);
        FieldCtx ctx = FieldCtx::parse(field ? field : "Q");
        auto h = h1_constant(x, ctx);
        Json edges = Json::array();
        for (const auto& e : x.edges) edges.push_back(e.id);
        return Json{{"operation", "first cohomology, constant coefficients"},
                    {"field", ctx.to_string()},
                    {"dimension", h.dim},
                    {"edges", std::move(edges)},
                    {"basis", basis_rows(h.basis)}};
    });
}

int flatk_cohom_homga(flatk_session* s, const char* space, const char* field, char** out) {
    return run_op(s, out, [&] {
        SpacePtr sp = parse_space(doc_arg(s, space), &s->workspace);
        FieldCtx ctx = FieldCtx::parse(field ? field : "Q");
        auto h = hom_to_additive(sp, ctx);
        Json gens = Json::array();
        for (int g : sp->pres().generators) gens.push_back(sp->complex().edges[size_t(g)].id);
        return Json{{"operation", "additive characters of the fundamental group"},
                    {"field", ctx.to_string()},
                    {"dimension", h.dim},
                    {"generators", std::move(gens)},
                    {"basis", basis_rows(h.basis)}};
    });
}

int flatk_cohom_classes(flatk_session* s, const char* space, const char* field, int rank, long cap,
                        char** out) {
    return run_op(s, out, [&] {
        SpacePtr sp = parse_space(doc_arg(s, space), &s->workspace);
        FieldCtx ctx = FieldCtx::parse(field ? field : "F(2)");
        auto classes = h1_glr_enumerate(sp, ctx, rank, cap > 0 ? cap : 2000000);
        Json arr = Json::array();
        const auto& pres = sp->pres();
        const auto& cx = sp->complex();
        for (size_t k = 0; k < classes.representatives.size(); ++k) {
            Json rep;
            for (size_t g = 0; g < classes.representatives[k].size(); ++g)
                rep[cx.edges[size_t(pres.generators[g])].id] =
                    matrix_to_json(classes.representatives[k][g]);
            arr.push_back(Json{{"orbit_size", classes.orbit_sizes[k]}, {"rep", std::move(rep)}});
        }
        return Json{{"operation", "rank-r class enumeration"},
                    {"field", ctx.to_string()},
                    {"rank", rank},
                    {"count", classes.representatives.size()},
                    {"tuples", classes.total_tuples},
                    {"classes", std::move(arr)}};
    });
}

}  // extern "C"

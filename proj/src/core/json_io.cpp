#include "json_io.hpp"

#include <algorithm>

namespace flatk {

void Workspace::load(const std::string& name, Json doc) {
    if (docs_.count(name)) throw ParseError("duplicate document name '" + name + "'");
    docs_.emplace(name, std::move(doc));
}

const Json& Workspace::get(const std::string& name) const {
    auto it = docs_.find(name);
    if (it == docs_.end()) throw ParseError("unknown document '" + name + "'");
    return it->second;
}

namespace {

const Json& resolve(const Json& ref, const Workspace* ws) {
    if (ref.is_string()) {
        if (!ws) throw ParseError("no workspace to resolve '" + ref.get<std::string>() + "'");
        return ws->get(ref.get<std::string>());
    }
    return ref;
}

std::string need_string(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string())
        throw ParseError(std::string("missing string field '") + key + "'");
    return j[key].get<std::string>();
}

EdgeRef parse_edge_ref(const TwoComplex& x, const std::string& token) {
    std::string id = token;
    int sign = 1;
    if (id.size() > 3 && id.substr(id.size() - 3) == "^-1") {
        sign = -1;
        id = id.substr(0, id.size() - 3);
    }
    int e = x.edge_index(id);
    if (e < 0) throw ParseError("face word references unknown edge '" + id + "'");
    return {e, sign};
}

}  // namespace

TwoComplex parse_complex(const Json& ref, const Workspace* ws) {
    const Json& j = resolve(ref, ws);
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
        throw ParseError("complex document needs 'vertices' and 'edges'");
    TwoComplex x;
    for (const auto& v : j["vertices"]) {
        if (!v.is_string()) throw ParseError("vertex names must be strings");
        x.vertices.push_back(v.get<std::string>());
    }
    std::sort(x.vertices.begin(), x.vertices.end());
    if (std::adjacent_find(x.vertices.begin(), x.vertices.end()) != x.vertices.end())
        throw ParseError("duplicate vertex name");
    for (const auto& e : j["edges"]) {
        TwoComplex::Edge edge;
        edge.id = need_string(e, "id");
        edge.src = x.vertex_index(need_string(e, "src"));
        edge.dst = x.vertex_index(need_string(e, "dst"));
        if (edge.src < 0 || edge.dst < 0)
            throw ParseError("edge '" + edge.id + "' references unknown vertices");
        x.edges.push_back(std::move(edge));
    }
    std::sort(x.edges.begin(), x.edges.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });
    for (size_t i = 1; i < x.edges.size(); ++i)
        if (x.edges[i].id == x.edges[i - 1].id)
            throw ParseError("duplicate edge id '" + x.edges[i].id + "'");
    if (j.contains("faces"))
        for (const auto& f : j["faces"]) {
            std::vector<EdgeRef> word;
            for (const auto& tok : f) {
                if (!tok.is_string()) throw ParseError("face words are arrays of edge tokens");
                word.push_back(parse_edge_ref(x, tok.get<std::string>()));
            }
            x.faces.push_back(std::move(word));
        }
    x.basepoint = x.vertex_index(need_string(j, "basepoint"));
    if (x.basepoint < 0) throw ParseError("basepoint is not a vertex");
    return x;
}

SpacePtr parse_space(const Json& ref, const Workspace* ws) {
    return PresentedSpace::make(parse_complex(ref, ws));
}

FieldCtx parse_field(const Json& ref) {
    if (!ref.is_string()) throw ParseError("field spec must be a string");
    return FieldCtx::parse(ref.get<std::string>());
}

Matrix parse_matrix(const FieldCtx& ctx, const Json& rows) {
    if (!rows.is_array() || rows.empty()) throw ParseError("matrix must be a non-empty array");
    std::vector<std::vector<FieldElem>> grid;
    for (const auto& row : rows) {
        if (!row.is_array()) throw ParseError("matrix rows must be arrays");
        std::vector<FieldElem> r;
        for (const auto& cell : row) {
            if (cell.is_string())
                r.push_back(ctx.parse_elem(cell.get<std::string>()));
            else if (cell.is_number_integer())
                r.push_back(ctx.from_int(cell.get<long>()));
            else
                throw ParseError("matrix entries must be strings or integers");
        }
        grid.push_back(std::move(r));
    }
    for (const auto& r : grid)
        if (r.size() != grid[0].size()) throw ParseError("ragged matrix rows");
    return Matrix::from_rows(ctx, grid);
}

LocalSystem parse_locsys(const Json& ref, const Workspace* ws) {
    const Json& j = resolve(ref, ws);
    if (!j.contains("space") || !j.contains("rep"))
        throw ParseError("local-system document needs 'space' and 'rep'");
    SpacePtr space = parse_space(j["space"], ws);
    FieldCtx ctx = parse_field(j.at("field"));
    if (!j.contains("rank") || !j["rank"].is_number_integer())
        throw ParseError("local-system document needs an integer 'rank'");
    int rank = j["rank"].get<int>();
    const auto& pres = space->pres();
    const auto& cx = space->complex();
    std::vector<Matrix> rep;
    for (int g = 0; g < int(pres.generators.size()); ++g) {
        const std::string& id = cx.edges[size_t(pres.generators[size_t(g)])].id;
        if (!j["rep"].contains(id))
            throw ParseError("rep is missing generator '" + id + "'");
        rep.push_back(parse_matrix(ctx, j["rep"][id]));
    }
    return LocalSystem(std::move(space), std::move(ctx), rank, std::move(rep));
}

CechCocycle parse_cocycle(const Json& ref, const Workspace* ws) {
    const Json& j = resolve(ref, ws);
    if (!j.contains("space") || !j.contains("labels"))
        throw ParseError("cocycle document needs 'space' and 'labels'");
    TwoComplex cx = parse_complex(j["space"], ws);
    FieldCtx ctx = parse_field(j.at("field"));
    if (!j.contains("rank") || !j["rank"].is_number_integer())
        throw ParseError("cocycle document needs an integer 'rank'");
    int rank = j["rank"].get<int>();
    std::vector<Matrix> labels;
    for (const auto& e : cx.edges) {
        if (!j["labels"].contains(e.id))
            throw ParseError("labels are missing edge '" + e.id + "'");
        labels.push_back(parse_matrix(ctx, j["labels"][e.id]));
    }
    return CechCocycle(std::move(cx), std::move(ctx), rank, std::move(labels));
}

Trivialization parse_trivialization(const Json& ref, const Workspace* ws) {
    const Json& j = resolve(ref, ws);
    if (!j.contains("space") || !j.contains("vertex_maps"))
        throw ParseError("trivialization document needs 'space' and 'vertex_maps'");
    Trivialization t;
    t.space = parse_space(j["space"], ws);
    t.ctx = parse_field(j.at("field"));
    if (!j.contains("rank") || !j["rank"].is_number_integer())
        throw ParseError("trivialization document needs an integer 'rank'");
    t.rank = j["rank"].get<int>();
    for (const auto& v : t.space->complex().vertices) {
        if (!j["vertex_maps"].contains(v))
            throw ParseError("vertex_maps are missing vertex '" + v + "'");
        t.vertex_maps.push_back(parse_matrix(t.ctx, j["vertex_maps"][v]));
    }
    return t;
}

Covering parse_cover_spec(const Json& ref, const Workspace* ws) {
    const Json& j = resolve(ref, ws);
    if (!j.contains("base")) throw ParseError("cover spec needs 'base'");
    SpacePtr base = parse_space(j["base"], ws);
    std::string mode = j.contains("mode") ? need_string(j, "mode") : "onto-group";
    const auto& pres = base->pres();
    const auto& cx = base->complex();
    auto gen_value = [&](const Json& table, int g) -> const Json& {
        const std::string& id = cx.edges[size_t(pres.generators[size_t(g)])].id;
        if (!table.contains(id)) throw ParseError("missing generator '" + id + "'");
        return table[id];
    };
    if (mode == "action") {
        if (!j.contains("action")) throw ParseError("action cover spec needs 'action'");
        int n = -1;
        std::vector<std::vector<int>> action;
        for (int g = 0; g < int(pres.generators.size()); ++g) {
            auto perm = gen_value(j["action"], g).get<std::vector<int>>();
            if (n < 0) n = int(perm.size());
            action.push_back(std::move(perm));
        }
        if (n < 0) {
            if (!j.contains("degree")) throw ParseError("action cover of a tree needs 'degree'");
            n = j["degree"].get<int>();
        }
        return schreier_cover_action(std::move(base), n, action);
    }
    if (mode != "onto-group") throw ParseError("mode must be 'onto-group' or 'action'");
    if (!j.contains("group")) throw ParseError("group-mode cover spec needs 'group'");
    const Json& gj = j["group"];
    std::string kind = need_string(gj, "kind");
    if (kind == "cyclic") {
        long n = gj.at("n").get<long>();
        GroupPtr grp = cyclic_group(n);
        std::vector<int> rho;
        for (int g = 0; g < int(pres.generators.size()); ++g) {
            long v = gen_value(j.at("rho"), g).get<long>();
            rho.push_back(int(((v % n) + n) % n));
        }
        return schreier_cover(std::move(base), std::move(grp), std::move(rho));
    }
    if (kind == "perm") {
        std::vector<std::vector<int>> gens;
        if (gj.contains("gens"))
            for (const auto& p : gj["gens"]) gens.push_back(p.get<std::vector<int>>());
        std::vector<std::vector<int>> rho_perms;
        for (int g = 0; g < int(pres.generators.size()); ++g)
            rho_perms.push_back(gen_value(j.at("rho"), g).get<std::vector<int>>());
        int degree = gj.contains("degree") ? gj["degree"].get<int>()
                                           : (rho_perms.empty() ? int(gens.empty() ? 1 : gens[0].size())
                                                                : int(rho_perms[0].size()));
        std::vector<std::vector<int>> all = gens;
        all.insert(all.end(), rho_perms.begin(), rho_perms.end());
        GroupPtr grp = perm_group(degree, all);
        std::vector<int> rho;
        for (const auto& p : rho_perms) {
            int idx = grp->find_perm(p);
            if (idx < 0) throw ParseError("rho permutation escaped the group closure");
            rho.push_back(idx);
        }
        return schreier_cover(std::move(base), std::move(grp), std::move(rho));
    }
    throw ParseError("unknown group kind '" + kind + "'");
}

Tower parse_tower(const Json& ref, const Workspace* ws) {
    const Json& j = resolve(ref, ws);
    if (!j.contains("primes") || !j.contains("depth"))
        throw ParseError("tower document needs 'primes' and 'depth'");
    return tower_make(j["primes"].get<std::vector<long>>(), j["depth"].get<long>());
}

Json complex_to_json(const TwoComplex& x) {
    Json j;
    j["vertices"] = x.vertices;
    Json edges = Json::array();
    for (const auto& e : x.edges)
        edges.push_back({{"id", e.id}, {"src", x.vertices[size_t(e.src)]}, {"dst", x.vertices[size_t(e.dst)]}});
    j["edges"] = std::move(edges);
    Json faces = Json::array();
    for (const auto& f : x.faces) {
        Json w = Json::array();
        for (const auto& r : f)
            w.push_back(x.edges[size_t(r.edge)].id + (r.sign < 0 ? "^-1" : ""));
        faces.push_back(std::move(w));
    }
    j["faces"] = std::move(faces);
    j["basepoint"] = x.vertices[size_t(x.basepoint)];
    return j;
}

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).to_string());
        rows.push_back(std::move(row));
    }
    return rows;
}

Json locsys_to_json(const LocalSystem& e) {
    Json j;
    j["space"] = complex_to_json(e.space()->complex());
    j["field"] = e.ctx().to_string();
    j["rank"] = e.rank();
    Json rep;
    const auto& pres = e.space()->pres();
    const auto& cx = e.space()->complex();
    for (int g = 0; g < int(pres.generators.size()); ++g)
        rep[cx.edges[size_t(pres.generators[size_t(g)])].id] = matrix_to_json(e.rep(g));
    j["rep"] = std::move(rep);
    return j;
}

Json cocycle_to_json(const CechCocycle& c) {
    Json j;
    j["space"] = complex_to_json(c.complex());
    j["field"] = c.ctx().to_string();
    j["rank"] = c.rank();
    Json labels;
    for (size_t e = 0; e < c.complex().edges.size(); ++e)
        labels[c.complex().edges[e].id] = matrix_to_json(c.label(int(e)));
    j["labels"] = std::move(labels);
    return j;
}

Json covering_to_json(const Covering& c) {
    Json j;
    j["base"] = complex_to_json(c.base->complex());
    j["total"] = complex_to_json(c.total);
    j["degree"] = c.degree;
    j["connected"] = c.connected;
    j["galois"] = c.galois;
    if (c.group) {
        j["group"] = c.group->describe();
        Json deck = Json::array();
        for (int g = 0; g < c.group->size(); ++g) deck.push_back(c.group->elem_name(g));
        j["deck"] = std::move(deck);
    }
    Json pv, pe;
    for (size_t v = 0; v < c.total.vertices.size(); ++v)
        pv[c.total.vertices[v]] = c.base->complex().vertices[size_t(c.vert_base[v])];
    for (size_t e = 0; e < c.total.edges.size(); ++e)
        pe[c.total.edges[e].id] = c.base->complex().edges[size_t(c.edge_base[e])].id;
    j["projection"] = Json{{"vertices", std::move(pv)}, {"edges", std::move(pe)}};
    return j;
}

}  // namespace flatk

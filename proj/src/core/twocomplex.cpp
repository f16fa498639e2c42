#include "twocomplex.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace flatk {

int TwoComplex::vertex_index(const std::string& name) const {
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == name) return int(i);
    return -1;
}

int TwoComplex::edge_index(const std::string& id) const {
    for (size_t i = 0; i < edges.size(); ++i)
        if (edges[i].id == id) return int(i);
    return -1;
}

int TwoComplex::step(const EdgeRef& r, int from) const {
    if (ref_start(r) != from) return -1;
    return ref_end(r);
}

bool TwoComplex::operator==(const TwoComplex& o) const {
    return vertices == o.vertices && edges == o.edges && faces == o.faces && basepoint == o.basepoint;
}

std::vector<std::string> validate(const TwoComplex& x) {
    std::vector<std::string> errs;
    if (x.vertices.empty()) {
        errs.push_back("MissingBasepoint: complex has no vertices");
        return errs;
    }
    if (x.basepoint < 0 || x.basepoint >= int(x.vertices.size()))
        errs.push_back("MissingBasepoint: basepoint is not a vertex");
    for (size_t f = 0; f < x.faces.size(); ++f) {
        const auto& word = x.faces[f];
        if (word.empty()) {
            errs.push_back("OpenFaceWord: face " + std::to_string(f) + " is empty");
            continue;
        }
        int at = x.ref_start(word[0]);
        bool ok = true;
        for (const auto& r : word) {
            int next = x.step(r, at);
            if (next < 0) {
                ok = false;
                break;
            }
            at = next;
        }
        if (!ok || at != x.ref_start(word[0]))
            errs.push_back("OpenFaceWord: face " + std::to_string(f) + " is not a closed edge path");
    }
    // undirected connectivity over an adjacency index
    std::vector<bool> seen(x.vertices.size(), false);
    std::vector<std::vector<int>> adj(x.vertices.size());
    for (size_t ei = 0; ei < x.edges.size(); ++ei) {
        adj[size_t(x.edges[ei].src)].push_back(int(ei));
        if (x.edges[ei].dst != x.edges[ei].src) adj[size_t(x.edges[ei].dst)].push_back(int(ei));
    }
    std::deque<int> queue;
    int start = (x.basepoint >= 0 && x.basepoint < int(x.vertices.size())) ? x.basepoint : 0;
    seen[size_t(start)] = true;
    queue.push_back(start);
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int ei : adj[size_t(u)]) {
            const auto& e = x.edges[size_t(ei)];
            int other = e.src == u ? e.dst : e.src;
            if (!seen[size_t(other)]) {
                seen[size_t(other)] = true;
                queue.push_back(other);
            }
        }
    }
    for (size_t v = 0; v < seen.size(); ++v)
        if (!seen[v]) {
            errs.push_back("Disconnected: vertex " + x.vertices[v] + " unreachable from basepoint");
            break;
        }
    return errs;
}

void validate_or_throw(const TwoComplex& x) {
    auto errs = validate(x);
    if (errs.empty()) return;
    auto colon = errs[0].find(':');
    throw DomainError(errs[0].substr(0, colon), errs[0].substr(colon + 2));
}

Word free_reduce(Word w) {
    Word out;
    for (const auto& l : w) {
        if (!out.empty() && out.back().gen == l.gen && out.back().sign == -l.sign)
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

Word word_inverse(const Word& w) {
    Word out;
    for (size_t i = w.size(); i-- > 0;) out.push_back({w[i].gen, -w[i].sign});
    return out;
}

std::vector<EdgeRef> Presentation::path_from_base(int v) const {
    std::vector<EdgeRef> path;
    while (parent_vertex[size_t(v)] != -1) {
        path.push_back(parent_edge[size_t(v)]);
        v = parent_vertex[size_t(v)];
    }
    std::reverse(path.begin(), path.end());
    return path;
}

Presentation fundamental_presentation(const TwoComplex& x) {
    validate_or_throw(x);
    Presentation p;
    size_t ne = x.edges.size();
    size_t nv = x.vertices.size();
    p.edge_in_tree.assign(ne, false);
    p.gen_of_edge.assign(ne, -1);
    p.parent_vertex.assign(nv, -1);
    p.parent_edge.assign(nv, EdgeRef{});
    std::vector<std::vector<int>> adj(nv);
    for (size_t ei = ne; ei-- > 0;) {  // reversed so each list ends up ascending
        adj[size_t(x.edges[ei].src)].push_back(int(ei));
        if (x.edges[ei].dst != x.edges[ei].src) adj[size_t(x.edges[ei].dst)].push_back(int(ei));
    }
    std::vector<bool> visited(nv, false);
    visited[size_t(x.basepoint)] = true;
    std::deque<int> queue{x.basepoint};
    p.bfs_order.push_back(x.basepoint);
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        auto& edges_here = adj[size_t(u)];
        for (size_t k = edges_here.size(); k-- > 0;) {
            int ei = edges_here[k];
            const auto& e = x.edges[size_t(ei)];
            if (e.src == u && !visited[size_t(e.dst)]) {
                visited[size_t(e.dst)] = true;
                p.edge_in_tree[size_t(ei)] = true;
                p.parent_vertex[size_t(e.dst)] = u;
                p.parent_edge[size_t(e.dst)] = {ei, 1};
                p.bfs_order.push_back(e.dst);
                queue.push_back(e.dst);
            } else if (e.dst == u && !visited[size_t(e.src)]) {
                visited[size_t(e.src)] = true;
                p.edge_in_tree[size_t(ei)] = true;
                p.parent_vertex[size_t(e.src)] = u;
                p.parent_edge[size_t(e.src)] = {ei, -1};
                p.bfs_order.push_back(e.src);
                queue.push_back(e.src);
            }
        }
    }
    for (size_t ei = 0; ei < ne; ++ei)
        if (!p.edge_in_tree[ei]) {
            p.gen_of_edge[ei] = int(p.generators.size());
            p.generators.push_back(int(ei));
        }
    for (const auto& face : x.faces) {
        Word w;
        for (const auto& r : face)
            if (!p.edge_in_tree[size_t(r.edge)]) w.push_back({p.gen_of_edge[size_t(r.edge)], r.sign});
        p.relators.push_back(std::move(w));
    }
    return p;
}

Word loop_word(const TwoComplex& x, const Presentation& p, const std::vector<EdgeRef>& path) {
    int at = x.basepoint;
    for (const auto& r : path) {
        if (r.edge < 0 || r.edge >= int(x.edges.size()))
            throw DomainError("NotClosed", "path references a missing edge");
        int next = x.step(r, at);
        if (next < 0) {
            if (&r == &path.front() && x.ref_start(r) != x.basepoint)
                throw DomainError("NotAtBasepoint", "path does not start at the basepoint");
            throw DomainError("NotClosed", "path is not an edge path");
        }
        at = next;
    }
    if (at != x.basepoint) throw DomainError("NotClosed", "path does not end at the basepoint");
    Word w;
    for (const auto& r : path)
        if (!p.edge_in_tree[size_t(r.edge)]) w.push_back({p.gen_of_edge[size_t(r.edge)], r.sign});
    return free_reduce(std::move(w));
}

std::string word_to_string(const TwoComplex& x, const Presentation& p, const Word& w) {
    if (w.empty()) return "1";
    std::ostringstream os;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) os << "·";
        os << x.edges[size_t(p.generators[size_t(w[i].gen)])].id;
        if (w[i].sign < 0) os << "^-1";
    }
    return os.str();
}

namespace {

TwoComplex one_vertex(const std::vector<std::string>& loop_ids) {
    TwoComplex x;
    x.vertices = {"v"};
    for (const auto& id : loop_ids) x.edges.push_back({id, 0, 0});
    x.basepoint = 0;
    return x;
}

}  // namespace

TwoComplex make_circle() { return one_vertex({"a"}); }

TwoComplex make_wedge2() { return one_vertex({"a", "b"}); }

TwoComplex make_torus() {
    TwoComplex x = one_vertex({"a", "b"});
    x.faces.push_back({{0, 1}, {1, 1}, {0, -1}, {1, -1}});
    return x;
}

TwoComplex make_projective_plane() {
    TwoComplex x = one_vertex({"a"});
    x.faces.push_back({{0, 1}, {0, 1}});
    return x;
}

TwoComplex make_triangle() {
    TwoComplex x;
    x.vertices = {"v0", "v1", "v2"};
    x.edges.push_back({"e1", 0, 1});
    x.edges.push_back({"e2", 0, 2});
    x.edges.push_back({"e3", 1, 2});
    x.basepoint = 0;
    return x;
}

}  // namespace flatk

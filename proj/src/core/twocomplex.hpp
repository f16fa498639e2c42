// Finite pointed 2-complexes: oriented edges (loops and parallel edges
// allowed), faces as closed boundary words, spanning trees, fundamental-group
// presentations, and edge-path words.

#ifndef FLATK_TWOCOMPLEX_HPP
#define FLATK_TWOCOMPLEX_HPP

#include <string>
#include <vector>

#include "errors.hpp"

namespace flatk {

struct EdgeRef {
    int edge = -1;
    int sign = 1;  // +1 forward, -1 reversed
    bool operator==(const EdgeRef& o) const { return edge == o.edge && sign == o.sign; }
};

struct TwoComplex {
    struct Edge {
        std::string id;
        int src = -1;
        int dst = -1;
        bool operator==(const Edge& o) const { return id == o.id && src == o.src && dst == o.dst; }
    };

    std::vector<std::string> vertices;
    std::vector<Edge> edges;  // storage order is the canonical (spanning-tree) order
    std::vector<std::vector<EdgeRef>> faces;
    int basepoint = -1;

    int vertex_index(const std::string& name) const;
    int edge_index(const std::string& id) const;
    // endpoint reached by traversing the reference from `from`; -1 if it does
    // not start there
    int step(const EdgeRef& r, int from) const;
    int ref_start(const EdgeRef& r) const { return r.sign > 0 ? edges[size_t(r.edge)].src : edges[size_t(r.edge)].dst; }
    int ref_end(const EdgeRef& r) const { return r.sign > 0 ? edges[size_t(r.edge)].dst : edges[size_t(r.edge)].src; }

    bool operator==(const TwoComplex& o) const;
};

// Deterministically ordered findings; empty means valid. Covers basepoint
// membership, face closedness, and connectivity.
std::vector<std::string> validate(const TwoComplex& x);
void validate_or_throw(const TwoComplex& x);

struct Letter {
    int gen = -1;
    int sign = 1;
    bool operator==(const Letter& o) const { return gen == o.gen && sign == o.sign; }
};
using Word = std::vector<Letter>;

Word free_reduce(Word w);
Word word_inverse(const Word& w);

struct Presentation {
    std::vector<bool> edge_in_tree;
    std::vector<int> generators;   // cotree edge indices in storage order
    std::vector<int> gen_of_edge;  // edge index -> generator ordinal, -1 on tree edges
    std::vector<Word> relators;    // one per face, tree edges deleted
    std::vector<int> parent_vertex;   // tree parent, -1 at basepoint
    std::vector<EdgeRef> parent_edge; // tree edge into v, oriented parent -> v
    std::vector<int> bfs_order;       // vertices in discovery order (basepoint first)

    std::vector<EdgeRef> path_from_base(int v) const;  // tree path basepoint -> v
};

// breadth-first spanning tree from the basepoint, edges scanned in storage
// order (the parser stores user edges sorted by id, so this is reproducible)
Presentation fundamental_presentation(const TwoComplex& x);

// word of a closed edge path at the basepoint: tree edges deleted, freely
// reduced
Word loop_word(const TwoComplex& x, const Presentation& p, const std::vector<EdgeRef>& path);

std::string word_to_string(const TwoComplex& x, const Presentation& p, const Word& w);

// standard test-corpus complexes
TwoComplex make_circle();            // one vertex, one loop a
TwoComplex make_wedge2();            // one vertex, loops a and b
TwoComplex make_torus();             // one vertex, loops a b, face a b a^-1 b^-1
TwoComplex make_projective_plane();  // one vertex, loop a, face a a
TwoComplex make_triangle();          // three vertices, edges e1 e2 e3, no faces

}  // namespace flatk

#endif

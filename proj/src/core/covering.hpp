// Finite coverings of pointed 2-complexes built from fundamental-group data:
// Schreier covers from a group quotient or a permutation action, component
// decomposition, Reidemeister-Schreier subgroup generators, pullback and
// pushforward of local systems, exact-sequence checks, parallel transport
// along deck elements, and fiber-bijection counts.
//
// Fiber indexing is canonical: total vertex (v, s) sits at index v*degree+s
// and is named "v@s"; the lift of edge e at source fiber s is "e@s". In
// group mode the fiber index is the group-element index (identity = 0),
// cotree edges act by right multiplication and the deck group by left
// multiplication.

#ifndef FLATK_COVERING_HPP
#define FLATK_COVERING_HPP

#include "groupmodel.hpp"
#include "locsys.hpp"

namespace flatk {

struct Covering {
    SpacePtr base;
    TwoComplex total;  // possibly disconnected
    int degree = 0;
    std::vector<int> vert_base, vert_fiber;  // total vertex -> base vertex, fiber
    std::vector<int> edge_base, edge_fiber;  // total edge -> base edge, source fiber
    std::vector<std::vector<int>> edge_act;  // base edge -> fiber permutation
    GroupPtr group;                          // deck group (group mode only)
    std::vector<int> rho;                    // generator -> group element (group mode)
    bool group_mode = false;
    bool connected = false;
    bool galois = false;  // group mode with connected total

    int total_vertex(int base_vertex, int fiber) const { return base_vertex * degree + fiber; }
    int total_edge(int base_edge, int fiber) const { return base_edge * degree + fiber; }
    int basepoint_lift(int fiber = 0) const;
};

// Schreier cover of the quotient rho : pi_1 -> G; fibers are the elements of
// G. Non-surjective rho yields a disconnected cover with [G : image]
// components. Faces must map to the identity (RelatorViolation).
Covering schreier_cover(SpacePtr base, GroupPtr group, std::vector<int> rho);

// covering from a permutation action of the generators on {0..n-1}
Covering schreier_cover_action(SpacePtr base, int n, const std::vector<std::vector<int>>& action);

// deterministic findings list; empty means the projection is a covering map
// of complexes with constant fiber size and face lifting
std::vector<std::string> validate_covering(const Covering& c);

// connected components, each again a covering of the base; ordered by their
// smallest total-vertex index; degrees sum to c.degree
std::vector<Covering> decompose(const Covering& c);

struct SubgroupData {
    SpacePtr total;           // presented total complex, basepoint at the chosen lift
    std::vector<Word> words;  // Reidemeister-Schreier generators as base words
};

// generating words for pi_1(total, lift) inside pi_1(base); requires a
// connected total
SubgroupData subgroup_generators(const Covering& c, int lift_fiber = 0);

// pullback along the covering via the cocycle picture (labels pulled back,
// then normalized along the total spanning tree)
LocalSystem pullback(const LocalSystem& e, const Covering& c, int lift_fiber = 0);
// same system computed through Reidemeister-Schreier words; agreement with
// `pullback` is the kernel-side exact-sequence check
LocalSystem pullback_via_words(const LocalSystem& e, const Covering& c, int lift_fiber = 0);

// induced representation on the base: rank deg * rank(f); f is given as a
// cocycle on the total complex (which may be disconnected)
LocalSystem pushforward(const Covering& c, const CechCocycle& f_on_total);
LocalSystem pushforward(const Covering& c, const LocalSystem& f_on_total);

bool trivializes(const LocalSystem& e, const Covering& c);

struct ExactSequenceReport {
    bool kernel_match = false;      // pullback == rep-image of subgroup words
    bool factors_through = false;   // rep factors through the deck group
    bool pullback_trivial = false;  // trivializes(e, c)
    bool iff_holds = false;         // factors_through <=> pullback_trivial
    size_t group_order = 0;
    size_t n_subgroup_generators = 0;
    std::vector<std::string> violations;
    bool passed() const { return kernel_match && iff_holds && violations.empty(); }
};

ExactSequenceReport exact_sequence_report(const LocalSystem& e, const Covering& c);

// parallel transport along the deck element gamma through the flat-section
// space of the pullback (one stacked exact solve); requires a Galois cover
// trivializing e
Matrix parallel_transport(const LocalSystem& e, const Covering& c, int gamma, int lift_fiber = 0);

// number of distinct fiber bijections over the given base vertex induced by
// deck elements; equals the deck-group order for Galois covers
int etale_image_size(const Covering& c, int base_vertex);

int deck_vertex(const Covering& c, int gamma, int total_vertex);
int deck_edge(const Covering& c, int gamma, int total_edge);
// pull a total-complex cocycle back along the deck automorphism gamma
CechCocycle sigma_star(const Covering& c, int gamma, const CechCocycle& f);

}  // namespace flatk

#endif

// Descent machinery: trivializations over field extensions, the rational ->
// finite-field reduction pipeline, and projective-limit towers of circle
// coverings (solenoid truncations) with level-of-definition and
// finite-quotient survival.

#ifndef FLATK_DESCENT_HPP
#define FLATK_DESCENT_HPP

#include "covering.hpp"

namespace flatk {

// per-vertex matrices l_v with l_src^{-1} l_dst = label(e) for every edge
struct Trivialization {
    SpacePtr space;
    FieldCtx ctx;
    int rank = 0;
    std::vector<Matrix> vertex_maps;
};

Matrix embed_matrix(const Embedding& emb, const Matrix& m);
std::optional<Matrix> restrict_matrix(const Embedding& emb, const Matrix& m);

// does t trivialize the cocycle (embedded into t's field when emb != null)?
bool is_trivialization(const Trivialization& t, const CechCocycle& c, const Embedding* emb);

// Given a K-cocycle trivialized over L, produce a K-trivialization: divide
// out the basepoint value and restrict entrywise. DescentFailure signals a
// restriction failure, which cannot happen when the preconditions hold.
Trivialization field_descent(const CechCocycle& c_over_k, const Trivialization& t_over_l,
                             const Embedding& emb);

struct ModPResult {
    LocalSystem reduced;      // the system over F_p
    FiniteMatrixGroup group;  // its monodromy image
    Covering cover;           // connected Galois cover with that deck group
};

// reduce generator matrices mod p, materialize the finite monodromy group,
// and build the Schreier cover onto it; the cover trivializes the reduction
ModPResult mod_p_pipeline(const LocalSystem& e_over_q, long p, long cap = kDefaultClosureCap);

// single-loop cyclic tower: level spaces are circles, transitions are cyclic
// coverings of degree lambda/mu
struct Tower {
    std::vector<long> primes;
    long depth = 1;
    std::vector<long> indices;  // ascending, divisibility-directed

    bool has_level(long lambda) const;
};

Tower tower_make(std::vector<long> primes, long depth);

// the covering realizing the transition from level lambda down to level mu
Covering tower_transition(const Tower& t, long lambda, long mu);

struct LevelOfDefinition {
    enum class Status { Found, UnsupportedClass };
    Status status = Status::UnsupportedClass;
    long level = 0;                      // minimal mu with a descent witness
    std::optional<LocalSystem> witness;  // circle system whose (lambda/mu)-th power is e
};

// scan divisor levels from the coarsest; e must live on a circle-type space
// with a single generator
LevelOfDefinition level_of_definition(const Tower& t, long lambda, const LocalSystem& e);

// order of the eventual image of the system Z/m <- Z/m <- ... along the
// tower's transition degrees
long finite_quotient_survival(const Tower& t, long m);

std::vector<std::pair<long, long>> etale_quotients(const Tower& t, long bound);

}  // namespace flatk

#endif

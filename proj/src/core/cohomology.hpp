// Degree-one cohomology with constant coefficients on 2-complexes, additive
// characters of the fundamental group, unipotent rank-2 extensions, and
// exhaustive enumeration of rank-r representation classes over small finite
// fields.

#ifndef FLATK_COHOMOLOGY_HPP
#define FLATK_COHOMOLOGY_HPP

#include "locsys.hpp"

namespace flatk {

struct CochainData {
    FieldCtx ctx;
    Matrix d0;  // |E| x |V|, (d0 f)(e) = f(dst) - f(src)
    Matrix d1;  // |F| x |E|, abelianized face incidence
};

CochainData cochain_data(const TwoComplex& x, const FieldCtx& ctx);

struct CohomBasis {
    int dim = 0;
    std::vector<std::vector<FieldElem>> basis;
};

// ker d1 / im d0 with explicit edge-cochain representatives
CohomBasis h1_constant(const TwoComplex& x, const FieldCtx& ctx);

// Hom(pi_1(X), (K,+)): solutions of the abelianized relator equations,
// returned as value tuples on the generators
CohomBasis hom_to_additive(const SpacePtr& x, const FieldCtx& ctx);

// is xi - xi' a coboundary?
bool cohomologous(const TwoComplex& x, const FieldCtx& ctx, const std::vector<FieldElem>& a,
                  const std::vector<FieldElem>& b);

// rank-2 unipotent system with corner entries given by the 1-cocycle xi
// (indexed by edges); inverse reads the corners back on cotree edges
LocalSystem unipotent_from_class(const SpacePtr& x, const FieldCtx& ctx,
                                 const std::vector<FieldElem>& xi);
std::vector<FieldElem> class_from_unipotent(const LocalSystem& e);

struct GlrClasses {
    long q = 0;
    int r = 0;
    std::vector<std::vector<Matrix>> representatives;  // lexicographically least tuples
    std::vector<long> orbit_sizes;
    long total_tuples = 0;
};

// all generator tuples in GL_r(F_q) satisfying the relators, partitioned by
// simultaneous conjugation; requires q^(r^2 * n_gens) <= cap
GlrClasses h1_glr_enumerate(const SpacePtr& x, const FieldCtx& ctx, int r, long cap);

}  // namespace flatk

#endif

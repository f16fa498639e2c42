// Local systems on pointed 2-complexes, in two interchangeable pictures:
// monodromy representations (one invertible matrix per cotree generator) and
// Cech cocycles (one invertible label per oriented edge).
//
// Transport convention: a path traversed letter-by-letter acts on column
// vectors with the later letters multiplying on the left, i.e.
// evaluate(l1 l2 ... ln) = M(ln) ... M(l2) M(l1).

#ifndef FLATK_LOCSYS_HPP
#define FLATK_LOCSYS_HPP

#include <memory>

#include "matgroup.hpp"
#include "twocomplex.hpp"

namespace flatk {

// validated connected pointed complex with its canonical presentation
class PresentedSpace {
public:
    static std::shared_ptr<const PresentedSpace> make(TwoComplex cx);

    const TwoComplex& complex() const { return cx_; }
    const Presentation& pres() const { return pres_; }
    int n_gens() const { return int(pres_.generators.size()); }

private:
    TwoComplex cx_;
    Presentation pres_;
};

using SpacePtr = std::shared_ptr<const PresentedSpace>;

void check_same_space(const SpacePtr& a, const SpacePtr& b);

class CechCocycle {
public:
    // labels indexed like the complex's edges; faces are checked to have the
    // identity signed product (FaceProductNotIdentity otherwise). The complex
    // may be disconnected here.
    CechCocycle(TwoComplex cx, FieldCtx ctx, int rank, std::vector<Matrix> labels);

    const TwoComplex& complex() const { return cx_; }
    const FieldCtx& ctx() const { return ctx_; }
    int rank() const { return rank_; }
    const Matrix& label(int edge) const { return labels_[size_t(edge)]; }
    const std::vector<Matrix>& labels() const { return labels_; }
    // signed label of an edge reference (inverse on reversed edges)
    Matrix label(const EdgeRef& r) const;
    Matrix transport(const std::vector<EdgeRef>& path) const;

private:
    TwoComplex cx_;
    FieldCtx ctx_;
    int rank_;
    std::vector<Matrix> labels_;
};

class LocalSystem {
public:
    // relators are checked to evaluate to the identity (RelatorViolation)
    LocalSystem(SpacePtr space, FieldCtx ctx, int rank, std::vector<Matrix> rep);

    const SpacePtr& space() const { return space_; }
    const FieldCtx& ctx() const { return ctx_; }
    int rank() const { return rank_; }
    const Matrix& rep(int gen) const { return rep_[size_t(gen)]; }
    const std::vector<Matrix>& reps() const { return rep_; }

    Matrix evaluate(const Word& w) const;
    bool is_trivial() const;

private:
    SpacePtr space_;
    FieldCtx ctx_;
    int rank_;
    std::vector<Matrix> rep_;
};

LocalSystem trivial_system(const SpacePtr& space, const FieldCtx& ctx, int rank);

// cocycle -> representation: cotree generators pick up the tree-conjugated
// loop transport; tree labels need not be trivial. A structurally matching
// space may be passed to share the presentation.
LocalSystem from_cocycle(const CechCocycle& c, SpacePtr space_hint = nullptr);
// representation -> cocycle with identity labels on the spanning tree
CechCocycle to_cocycle(const LocalSystem& e);

LocalSystem direct_sum(const LocalSystem& e, const LocalSystem& f);
LocalSystem tensor(const LocalSystem& e, const LocalSystem& f);
LocalSystem dual(const LocalSystem& e);
LocalSystem hom(const LocalSystem& e, const LocalSystem& f);  // dual(e) ⊗ f

std::optional<FiniteMatrixGroup> monodromy_image(const LocalSystem& e, long cap = kDefaultClosureCap);

enum class IsoStatus { Isomorphic, ProvablyDistinct, Inconclusive };

struct IsoOutcome {
    IsoStatus status;
    std::optional<Matrix> witness;
};

IsoOutcome iso_test(const LocalSystem& e, const LocalSystem& f, int trials = 64,
                    unsigned long seed = 0);

// basis of the common fixed space {v : rep(g) v = v for all generators}
std::vector<std::vector<FieldElem>> global_sections(const LocalSystem& e);

struct TrivialSub {
    int dim;
    Matrix inclusion;  // rank x dim, columns span the fixed space
    LocalSystem sub;   // trivial system of rank dim on the same space
};

TrivialSub max_trivial_sub(const LocalSystem& e);

}  // namespace flatk

#endif

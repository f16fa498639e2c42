// Finite matrix groups by breadth-first closure, intertwiner spaces and
// conjugacy witnesses, multiplicative Jordan decomposition, matrix roots.

#ifndef FLATK_MATGROUP_HPP
#define FLATK_MATGROUP_HPP

#include <optional>
#include <unordered_map>
#include <vector>

#include "poly.hpp"

namespace flatk {

inline constexpr long kDefaultClosureCap = 200000;

struct FiniteMatrixGroup {
    FieldCtx ctx;
    int r = 0;
    std::vector<Matrix> elements;  // identity first, then breadth-first discovery order
    std::vector<int> generators;   // indices into elements
    std::unordered_map<std::string, int> index;

    size_t order() const { return elements.size(); }
    int find(const Matrix& m) const;
    int mul(int i, int j) const;
    int inv(int i) const;
};

// Breadth-first product closure of invertible generators; nullopt when the
// group exceeds cap or a generator is detected to have infinite order over Q.
std::optional<FiniteMatrixGroup> group_closure(const FieldCtx& ctx, int r,
                                               const std::vector<Matrix>& gens, long cap);

// closure axioms by exhaustive check; intended for small groups in tests
bool verify_closure_axioms(const FiniteMatrixGroup& g);

// exact decision: true iff min_poly(m) is a product of distinct cyclotomics
bool has_finite_order_over_q(const Matrix& m);

// basis of {T : T A_i = B_i T for all i}
std::vector<Matrix> intertwiner_basis(const std::vector<Matrix>& a, const std::vector<Matrix>& b);

enum class ConjugacyStatus { Witness, ProvablyDistinct, NotFoundInTrials };

struct ConjugacyOutcome {
    ConjugacyStatus status;
    std::optional<Matrix> witness;  // invertible T with T A_i T^{-1} = B_i
};

// Over finite fields with small intertwiner spaces the search is exhaustive
// and NotFoundInTrials cannot occur; over Q it samples integer combinations
// with a doubling coefficient range (seeded, reproducible).
ConjugacyOutcome conjugacy_witness(const std::vector<Matrix>& a, const std::vector<Matrix>& b,
                                   int trials, unsigned long seed);

struct JordanPair {
    Matrix semisimple;
    Matrix unipotent;
};

// m = s*u = u*s with s semisimple (squarefree minimal polynomial) and u
// unipotent; Newton iteration on the radical of the characteristic polynomial
JordanPair jordan_multiplicative(const Matrix& m);

enum class RootStatus { Found, NoRootFound, UnsupportedClass };

struct MatrixRootOutcome {
    RootStatus status;
    std::optional<Matrix> root;  // N with N^d = M when Found
};

// d-th roots for matrices diagonalizable over their own field (this includes
// every 1x1 matrix); NoRootFound is definitive in that class
MatrixRootOutcome matrix_root(const Matrix& m, long d);

}  // namespace flatk

#endif

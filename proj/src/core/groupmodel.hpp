// Finite groups with a canonical element indexing (identity = 0): cyclic
// groups, permutation closures, and matrix-group wrappers. Deck groups and
// Schreier-cover fiber indexing use this interface.

#ifndef FLATK_GROUPMODEL_HPP
#define FLATK_GROUPMODEL_HPP

#include <memory>
#include <string>
#include <vector>

#include "matgroup.hpp"

namespace flatk {

class GroupModel {
public:
    virtual ~GroupModel() = default;
    virtual int size() const = 0;
    virtual int mul(int a, int b) const = 0;
    virtual int inv(int a) const = 0;
    virtual std::string elem_name(int a) const = 0;
    virtual std::string describe() const = 0;
    // permutation groups answer with the element index of a one-line image;
    // other models report -1
    virtual int find_perm(const std::vector<int>&) const { return -1; }
    int identity() const { return 0; }
};

using GroupPtr = std::shared_ptr<const GroupModel>;

GroupPtr cyclic_group(long n);
// closure of permutations of {0..degree-1}; breadth-first element order
GroupPtr perm_group(int degree, const std::vector<std::vector<int>>& gens);
GroupPtr matrix_group(FiniteMatrixGroup g);

}  // namespace flatk

#endif

#include "groupmodel.hpp"

#include <deque>
#include <map>
#include <sstream>

namespace flatk {

namespace {

class CyclicGroup final : public GroupModel {
public:
    explicit CyclicGroup(long n) : n_(int(n)) {
        if (n < 1) throw DomainError("BadArgument", "cyclic group order must be >= 1");
    }
    int size() const override { return n_; }
    int mul(int a, int b) const override { return (a + b) % n_; }
    int inv(int a) const override { return (n_ - a) % n_; }
    std::string elem_name(int a) const override { return std::to_string(a); }
    std::string describe() const override { return "Z/" + std::to_string(n_); }

private:
    int n_;
};

std::vector<int> compose(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[size_t(b[i])];
    return c;
}

class PermGroup final : public GroupModel {
public:
    PermGroup(int degree, const std::vector<std::vector<int>>& gens) : degree_(degree) {
        for (const auto& g : gens) {
            if (int(g.size()) != degree) throw err_shape("permutation degree mismatch");
            std::vector<bool> seen(size_t(degree), false);
            for (int v : g) {
                if (v < 0 || v >= degree || seen[size_t(v)])
                    throw DomainError("BadArgument", "not a permutation");
                seen[size_t(v)] = true;
            }
        }
        std::vector<int> id(static_cast<size_t>(degree));
        for (int i = 0; i < degree; ++i) id[size_t(i)] = i;
        elems_.push_back(id);
        index_.emplace(id, 0);
        std::deque<int> queue{0};
        while (!queue.empty()) {
            int i = queue.front();
            queue.pop_front();
            for (const auto& g : gens) {
                auto prod = compose(elems_[size_t(i)], g);
                if (index_.count(prod)) continue;
                if (elems_.size() >= 100000)
                    throw DomainError("CapExceeded", "permutation closure too large");
                int idx = int(elems_.size());
                index_.emplace(prod, idx);
                elems_.push_back(std::move(prod));
                queue.push_back(idx);
            }
        }
    }
    int size() const override { return int(elems_.size()); }
    int mul(int a, int b) const override {
        auto it = index_.find(compose(elems_[size_t(a)], elems_[size_t(b)]));
        if (it == index_.end()) throw DomainError("ClosureViolation", "perm product escaped");
        return it->second;
    }
    int inv(int a) const override {
        std::vector<int> r(static_cast<size_t>(degree_));
        for (int i = 0; i < degree_; ++i) r[size_t(elems_[size_t(a)][size_t(i)])] = i;
        auto it = index_.find(r);
        if (it == index_.end()) throw DomainError("ClosureViolation", "perm inverse escaped");
        return it->second;
    }
    std::string elem_name(int a) const override {
        const auto& p = elems_[size_t(a)];
        std::ostringstream os;
        std::vector<bool> seen(p.size(), false);
        bool any = false;
        for (size_t i = 0; i < p.size(); ++i) {
            if (seen[i] || p[i] == int(i)) continue;
            os << "(";
            size_t j = i;
            bool first = true;
            while (!seen[j]) {
                seen[j] = true;
                os << (first ? "" : " ") << j;
                first = false;
                j = size_t(p[j]);
            }
            os << ")";
            any = true;
        }
        return any ? os.str() : "e";
    }
    std::string describe() const override {
        return "perm group of order " + std::to_string(elems_.size()) + " on " +
               std::to_string(degree_) + " points";
    }
    int find_perm(const std::vector<int>& p) const override {
        auto it = index_.find(p);
        return it == index_.end() ? -1 : it->second;
    }

private:
    int degree_;
    std::vector<std::vector<int>> elems_;
    std::map<std::vector<int>, int> index_;
};

class MatGroupModel final : public GroupModel {
public:
    explicit MatGroupModel(FiniteMatrixGroup g) : g_(std::move(g)) {}
    int size() const override { return int(g_.order()); }
    int mul(int a, int b) const override { return g_.mul(a, b); }
    int inv(int a) const override { return g_.inv(a); }
    std::string elem_name(int a) const override { return g_.elements[size_t(a)].to_string(); }
    std::string describe() const override {
        return "matrix group of order " + std::to_string(g_.order()) + " over " +
               g_.ctx.to_string();
    }

private:
    FiniteMatrixGroup g_;
};

}  // namespace

GroupPtr cyclic_group(long n) { return std::make_shared<CyclicGroup>(n); }

GroupPtr perm_group(int degree, const std::vector<std::vector<int>>& gens) {
    return std::make_shared<PermGroup>(degree, gens);
}

GroupPtr matrix_group(FiniteMatrixGroup g) { return std::make_shared<MatGroupModel>(std::move(g)); }

}  // namespace flatk

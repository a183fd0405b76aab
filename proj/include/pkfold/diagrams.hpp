#ifndef PKFOLD_DIAGRAMS_HPP
#define PKFOLD_DIAGRAMS_HPP

#include <compare>
#include <iosfwd>
#include <string>
#include <vector>

#include "pkfold/common.hpp"

namespace pkfold {

/// An arc (i,j) over 1-based positions, i < j.
struct Arc {
    int i = 0;
    int j = 0;
    auto operator<=>(const Arc&) const = default;
};

std::string to_string(const Arc& a);

/// A run of parallel arcs (i,j),(i+1,j-1),...,(i+len-1,j-len+1), written (i,j,len).
struct Stack {
    int i = 0;
    int j = 0;
    int len = 0;
    auto operator<=>(const Stack&) const = default;

    Arc outer() const { return {i, j}; }
    Arc inner() const { return {i + len - 1, j - len + 1}; }
    std::vector<Arc> arcs() const;
};

std::string to_string(const Stack& s);

struct DiagramParams {
    int k = 3;      // crossing bound: no k mutually crossing arcs
    int lambda = 4; // minimum arc length j-i
    int sigma = 3;  // minimum maximal-stack length
    auto operator<=>(const DiagramParams&) const = default;
};

/// true iff a is strictly nested in b (the partial order "a precedes b").
inline bool precedes(const Arc& a, const Arc& b) {
    return b.i < a.i && a.j < b.j;
}

/// true iff the arcs cross: i1 < i2 < j1 < j2 in one of the two roles.
inline bool crossing(const Arc& a, const Arc& b) {
    return (a.i < b.i && b.i < a.j && a.j < b.j) || (b.i < a.i && a.i < b.j && b.j < a.j);
}

/// Arc-annotated diagram over positions 1..n with validated invariants:
/// vertex degree <= 1, no k mutually crossing arcs, arc length >= lambda,
/// every maximal stack of length >= sigma. Immutable after construction.
class Structure {
public:
    Structure() = default;

    /// Validates and builds; throws Error naming the first violated invariant.
    /// Check order: degree, arc length, stack length, crossing bound.
    static Structure make(int n, std::vector<Arc> arcs, DiagramParams params = {});

    /// Builds without invariant checks (degree consistency still required).
    static Structure make_unchecked(int n, std::vector<Arc> arcs, DiagramParams params = {});

    int length() const { return n_; }
    const std::vector<Arc>& arcs() const { return arcs_; }
    const DiagramParams& params() const { return params_; }
    bool empty() const { return arcs_.empty(); }

    /// 0 if pos is unpaired, otherwise the partner position.
    int partner(int pos) const { return partner_[pos]; }
    bool paired(int pos) const { return partner_[pos] != 0; }
    bool has_arc(const Arc& a) const;

    bool operator==(const Structure& o) const {
        return n_ == o.n_ && arcs_ == o.arcs_;
    }

private:
    int n_ = 0;
    std::vector<Arc> arcs_;          // sorted by (i,j)
    std::vector<int> partner_;       // size n_+1, index 0 unused
    DiagramParams params_;

    void index_partners();
};

/// All maximal runs of parallel arcs, left to right by i. Partitions the arc set.
std::vector<Stack> maximal_stacks(const Structure& s);

/// All arcs of s crossing a. Throws ArcNotInStructure if a is not an arc of s.
std::vector<Arc> crossing_set(const Structure& s, const Arc& a);

/// Largest set of mutually crossing arcs; empty if the structure has no arcs.
std::vector<Arc> max_mutually_crossing(const std::vector<Arc>& arcs, int n);

/// Core: each maximal stack collapsed to a single arc, stack-interior endpoints
/// removed, remaining vertices relabeled 1..m. Contains no two arcs of the
/// form (i,j),(i+1,j-1). Arc length and stack constraints are relaxed to 1.
struct Core {
    Structure structure;            // over relabeled positions
    std::vector<int> to_original;   // core position -> original position (1-based, index 0 unused)
    std::vector<Stack> stacks;      // stacks[c] = original stack of core arc c (aligned with structure.arcs())
    std::vector<int> core_arc_of;   // original arc index -> core arc index
};

Core core(const Structure& s);

} // namespace pkfold

#endif

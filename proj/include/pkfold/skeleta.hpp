#ifndef PKFOLD_SKELETA_HPP
#define PKFOLD_SKELETA_HPP

#include <limits>
#include <vector>

#include "pkfold/diagrams.hpp"

namespace pkfold {

/// True iff s is a skeleton over [1,n]: both endpoints paired and every core
/// arc crossed by some arc.
bool is_skeleton(const Structure& s);

/// Irreducible shadows over [1,span]: crossing-connected, nesting-free stack
/// configurations with both endpoints paired, stack count in [2, max_stacks],
/// every stack of length >= sigma and innermost arc length >= 4.
std::vector<Structure> enumerate_irreducible_shadows(int span, int sigma, int max_stacks);

/// A skeleton paired with its insertion frontier: 0 at the root, otherwise the
/// first paired base preceding the interval of the last inserted stack origin.
struct RootedSkeleton {
    Structure skeleton;
    int frontier = 0;
};

/// Stack insertion step of the grammar. The stack's origin must be at or past
/// the frontier, its positions unpaired, (i-1,j+1) not an arc, its innermost
/// arc minimal in the result, and the result a 3-noncrossing skeleton.
RootedSkeleton insert_stack(const RootedSkeleton& rs, const Stack& st);

struct TreeLimits {
    int max_depth = std::numeric_limits<int>::max(); // insertions per branch
    int max_nodes = std::numeric_limits<int>::max();
};

struct SkeletaTree {
    struct Node {
        Structure skeleton;
        int frontier = 0;
        int parent = -1;  // -1 at the root
        Stack via;        // stack inserted on the edge from parent
        int depth = 0;
    };
    std::vector<Node> nodes; // breadth-first, children in (i,j,len) order
    bool truncated = false;  // a limit cut the expansion short
};

/// Breadth-first closure of insert_stack from (s0, 0). Duplicate skeleta are a
/// hard error (the grammar is unambiguous for k=3).
SkeletaTree build_skeleta_tree(const Structure& s0, TreeLimits limits = {});

/// All admissible child stacks of rs, in (i,j,len) order.
std::vector<Stack> admissible_insertions(const RootedSkeleton& rs);

/// One line per vertex, "depth r arc-list", depth-first with children in
/// insertion order; stable across runs.
std::string debug_dump(const SkeletaTree& tree);

} // namespace pkfold

#endif

#ifndef PKFOLD_FOLD_HPP
#define PKFOLD_FOLD_HPP

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "pkfold/decomposition.hpp"
#include "pkfold/diagrams.hpp"
#include "pkfold/energy.hpp"
#include "pkfold/skeleta.hpp"

namespace pkfold {

/// Which loop a table segment is nested in; selects the per-unpaired constant
/// and whether blocks carry a closing-pair charge.
enum class FillContext { Exterior, Multi, Pseudoknot };

struct FoldOptions {
    int sigma = 3;
    int max_shadow_stacks = 3; // stack-count cap for irreducible shadows
    int threads = 1;
    TreeLimits tree_limits{};
};

struct FoldResult {
    Structure structure;
    Energy energy = 0;
    LoopDecomposition decomposition;
    /// spans of crossing components together with their skeleton stacks
    std::vector<std::pair<std::pair<int, int>, std::vector<Stack>>> provenance;
};

/// A table entry: minimal energy plus the arc set attaining it. Ties are
/// broken by the lexicographically smallest sorted arc list.
struct Cand {
    Energy e = kEnergyInf;
    std::vector<Arc> arcs;
};

bool cand_better(const Cand& a, const Cand& b);

struct SkeletonShape;

/// The saturation tables, filled bottom-up by segment length. One fold.
class FoldTables {
public:
    FoldTables(std::string seq, const EnergyModel& em, const FoldOptions& opts);

    int length() const { return n_; }

    /// best segment structure with i paired to j (the order-1 block)
    const Cand& vp(int i, int j) const { return vp_[ix(i, j)]; }
    /// best saturated crossing skeleton over [i,j] (order >= 2 block)
    const Cand& osm_cross(int i, int j) const { return cross_[ix(i, j)]; }
    /// best block of either kind
    Cand osm(int i, int j) const;

    /// best union of blocks and unpaired positions over [i,j]; the empty
    /// filling is always admissible
    Cand os(FillContext ctx, int i, int j) const;
    Energy os_energy(FillContext ctx, int i, int j) const { return os(ctx, i, j).e; }

    /// saturates one skeleton placed at position i, filling its intervals by
    /// the context-dispatched case minima; requires all shorter cells final
    Cand saturate_skeleton(const Structure& skeleton, int i) const;

    FoldResult result() const;

private:
    friend FoldResult fold(const std::string&, const EnergyModel&, const FoldOptions&);

    int n_ = 0;
    std::string seq_;
    EnergyModel em_;
    FoldOptions opts_;
    std::vector<int> row_;
    std::vector<Cand> vp_, cross_;
    // per context: best with >= 1 block and best with >= 2 maximal arcs
    std::vector<Cand> ge1_[3], ge2_[3];

    size_t ix(int i, int j) const { return static_cast<size_t>(row_[i] + (j - i)); }

    void fill_diagonal(int len);
    void compute_vp(int i, int j);
    void compute_cross(int i, int j);
    void compute_os(int i, int j);
    Cand saturate_shape(const SkeletonShape& shape, int i) const;
    Cand fill_any(FillContext ctx, int lo, int hi) const;
    bool pairable(int i, int j) const { return em_.admissible(seq_[i - 1], seq_[j - 1]); }
};

/// Folds a sequence over {A,C,G,U} into a minimum-energy 3-noncrossing,
/// sigma-canonical structure with minimum arc length 4.
FoldResult fold(const std::string& seq, const EnergyModel& em, const FoldOptions& opts = {});

/// Precomputed skeleton candidates for one segment length, shared across
/// folds. Geometry and loop analysis only; energies are applied per fold.
struct SkeletonShape {
    std::vector<Stack> stacks;
    std::vector<Arc> arcs; // sorted
    int plain_pairs = 0;   // stacked pairs outside pseudoknots
    int pk_pairs = 0;
    int multi_loops = 0;
    int multi_closings = 0; // sum of (1 + components) over multi loops
    int pk_loops = 0;
    struct Interval {
        int lo, hi;
    };
    std::vector<Interval> pk_intervals, mul_intervals;
    struct GreenPair {
        int l_lo, l_hi, r_lo, r_hi; // gaps, possibly empty (lo > hi)
        int size_l, size_r;
    };
    std::vector<GreenPair> green_pairs;
};

/// All skeleta over [1,span] from the skeleta-trees of every irreducible
/// shadow of that span, deduplicated and analyzed. Cached per parameter set.
const std::vector<SkeletonShape>& skeleton_shapes(int span, int sigma, int max_stacks,
                                                  TreeLimits limits = {});

} // namespace pkfold

#endif

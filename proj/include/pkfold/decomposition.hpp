#ifndef PKFOLD_DECOMPOSITION_HPP
#define PKFOLD_DECOMPOSITION_HPP

#include <utility>
#include <vector>

#include "pkfold/diagrams.hpp"

namespace pkfold {

enum class Color { Purple, Green, Blue, Red, Black };

const char* color_name(Color c);

enum class LoopKind { Hairpin, Interior, Multi, Pseudoknot };

const char* loop_kind_name(LoopKind k);

/// One loop of the unique loop decomposition, in original coordinates.
///
/// Hairpin:    closing = [inner arc of the stack], one interval.
/// Interior:   closing = [outer boundary arc, inner boundary arc], <= 2 intervals.
/// Multi:      closing = [boundary arc, outermost arc of each nested component],
///             component_spans lists the nested components left to right.
/// Pseudoknot: closing = outermost arc of each member stack; intervals are the
///             unpaired runs owned by the pseudoknot.
struct Loop {
    LoopKind kind{};
    std::vector<Arc> closing;
    std::vector<std::pair<int, int>> intervals;        // unpaired runs, ascending
    std::vector<std::pair<int, int>> component_spans;  // Multi only
};

struct LoopDecomposition {
    std::vector<Loop> loops;            // sorted by leftmost involved position
    std::vector<Color> arc_colors;      // aligned with Structure::arcs()
    std::vector<Color> vertex_colors;   // 1..n (index 0 unused)
    std::vector<int> arc_loop;          // arc index -> loop index
    std::vector<int> vertex_loop;       // unpaired vertex -> loop index, -1 exterior, -2 paired
};

/// Unique loop decomposition of a <3,sigma>-structure via core arc coloring.
LoopDecomposition loop_decompose(const Structure& s);

/// True iff the pseudoknot's member arcs partition into pairs that are
/// mutually minimal-crossing. Throws InvalidParams if the loop is not a pseudoknot.
bool is_balanced(const Structure& s, const Loop& pk);

/// Splits off the shadow spanned by all stacks containing a maximal arc.
/// Both parts live over the original positions. Throws EmptyStructure.
std::pair<Structure, Structure> peel_shadow(const Structure& s);

/// Iterates peel_shadow to exhaustion; union of the results reconstructs s.
std::vector<Structure> shadow_sequence(const Structure& s);

/// Number of maximal arcs of s (its "order").
int order(const Structure& s);

} // namespace pkfold

#endif

#ifndef PKFOLD_ORACLE_HPP
#define PKFOLD_ORACLE_HPP

#include <string>
#include <vector>

#include "pkfold/diagrams.hpp"
#include "pkfold/energy.hpp"
#include "pkfold/fold.hpp"

namespace pkfold {

/// All valid structures over [n] for the given parameters, by backtracking
/// over maximal-stack placements. Throws CeilingExceeded past the ceiling.
std::vector<Structure> enumerate_structures(int n, DiagramParams params, int ceiling = 30);

/// Shared per-(n, params) cache of enumerated structures together with their
/// sequence-independent energy breakdowns.
struct StructureCensus {
    struct Entry {
        std::vector<Arc> arcs;
        // energy = stack_pairs*stack_bonus + pk_pairs*pk_stack_bonus + sum of
        // hairpin/interior terms + multis + pks + exterior*Q
        int stack_pairs = 0, pk_pairs = 0;
        std::vector<int> hairpin_sizes;
        std::vector<std::pair<int, int>> interior_sizes;
        int multi_loops = 0, multi_closings = 0, multi_unpaired = 0;
        int pk_loops = 0, pk_unpaired = 0;
        int exterior_unpaired = 0;

        Energy energy(const EnergyModel& em) const;
    };
    int n = 0;
    DiagramParams params;
    std::vector<Entry> entries;
};

const StructureCensus& structure_census(int n, DiagramParams params, int ceiling = 30);

/// Exhaustive minimum: loop_energy over every admissible enumerated
/// structure, ties broken by the lexicographically smallest arc list.
FoldResult brute_force_fold(const std::string& seq, const EnergyModel& em, DiagramParams params,
                            int ceiling = 30);

/// All skeleta over [1,span] whose maximal stacks include every stack of
/// `containing`, by filtering the census.
std::vector<Structure> enumerate_skeleta(int span, int sigma, const std::vector<Stack>& containing,
                                         int ceiling = 30);

/// The fixed disclosure printed by selftest: the published case-study
/// foldings depend on energy tables that are no longer distributed.
const char* case_study_exclusion_note();

} // namespace pkfold

#endif

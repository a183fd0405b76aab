#ifndef PKFOLD_ENERGY_HPP
#define PKFOLD_ENERGY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pkfold/decomposition.hpp"
#include "pkfold/diagrams.hpp"

namespace pkfold {

/// Energies are fixed-point centi-units so minima and tie-breaks are exact.
using Energy = long long;
constexpr Energy kEnergyInf = 1LL << 60;

std::string energy_to_string(Energy e);  // "-2.00"
Energy energy_from_string(const std::string& s); // rejects more than 2 decimals

/// Loop-based scoring parameters. Values are configurable defaults, not
/// literature constants.
struct EnergyModel {
    Energy stack_bonus = -200;          // size-0 interior loop, per adjacent pair
    Energy hairpin_base = 300;          // H = base + per_unpaired * size
    Energy hairpin_per_unpaired = 10;
    Energy interior_base = 150;         // I = base + per_unpaired * (a+b), a+b > 0
    Energy interior_per_unpaired = 20;
    Energy multi_penalty = 400;         // M
    Energy closing_pair = 100;          // P1, per closing pair of a multi-loop
    Energy unpaired_multi = 20;         // Q_mul
    Energy unpaired_pk = 30;            // Q_pk
    Energy unpaired_exterior = 0;       // Q
    Energy pk_penalty = 500;            // per pseudoknot loop
    Energy pk_stack_bonus = -180;       // per adjacent pair in a pseudoknot stack
    std::vector<std::string> pairs = {"AU", "GC", "UG"};

    Energy hairpin(int size) const { return hairpin_base + hairpin_per_unpaired * size; }
    Energy interior(int a, int b) const {
        return a + b == 0 ? stack_bonus : interior_base + interior_per_unpaired * (a + b);
    }
    bool admissible(char x, char y) const;
};

/// key=value file, one parameter per line, '#' comments; unknown keys rejected.
EnergyModel load_energy_config(const std::string& path);
EnergyModel parse_energy_config(const std::string& text);

/// Throws InvalidAlphabet unless seq is over {A,C,G,U}.
void check_alphabet(const std::string& seq);

/// Total loop-based energy: hairpins via H, interior loops (stacked pairs as
/// size-0 interiors) via I, multi-loops via M + P1 per closing pair + Q_mul
/// per unpaired, pseudoknots via stack terms + penalty + Q_pk per unpaired,
/// exterior unpaired bases via Q. Throws InadmissiblePair for an arc whose
/// bases cannot pair.
Energy loop_energy(const Structure& s, const std::string& seq, const EnergyModel& em);

/// Same sum evaluated from a precomputed decomposition.
Energy loop_energy(const Structure& s, const LoopDecomposition& dec, const std::string& seq,
                   const EnergyModel& em);

} // namespace pkfold

#endif

#ifndef PKFOLD_MOTIFS_HPP
#define PKFOLD_MOTIFS_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "pkfold/diagrams.hpp"

namespace pkfold {

enum class Step : std::uint8_t { Up, Down, Horizontal };

/// Lattice path over {Up, Down, Horizontal} starting and ending at height 0,
/// never dipping below it.
struct MotzkinPath {
    std::vector<Step> steps;
    bool operator==(const MotzkinPath&) const = default;
};

std::string to_string(const MotzkinPath& p);
MotzkinPath path_from_string(const std::string& s); // 'U','D','H'

/// Path admissibility for the motif class: nonnegative, returns to 0,
/// height <= sigma*(k-1), every maximal up/down run divisible by sigma.
bool path_admissible(const MotzkinPath& p, int k, int sigma);

/// Restricted-path counts: mu_star[n] counts motifs over [n] (paths with the
/// innermost-gap condition), mu[n] the height-reduced class without it.
struct MotifCounts {
    std::vector<mpz_class> mu_star; // mu*_{k,sigma}(0..n)
    std::vector<mpz_class> mu;      // mu_{k-1,sigma}(0..n)
};

/// Exact counts by the recurrences, arbitrary precision. k >= 2, sigma >= 2.
MotifCounts count_motifs(int n, int k, int sigma);

/// Maps an admissible path to its diagram: up/down runs split into
/// sigma-blocks left to right, the x-th up-block paired with the x-th
/// down-block, horizontal steps to isolated vertices. Arc length unchecked.
Structure path_to_motif(const MotzkinPath& p, int k, int sigma);

/// Inverse of path_to_motif; throws NotAMotif if the core has nested arcs or
/// some maximal stack length differs from sigma.
MotzkinPath motif_to_path(const Structure& m);

/// All motifs over [n]: admissible paths mapped through path_to_motif and
/// filtered by minimum arc length 4. |result| == count_motifs(n,k,sigma).mu_star[n].
std::vector<Structure> enumerate_motifs(int n, int k, int sigma);

/// Paths satisfying the literal plateau reading (every plateau at height
/// sigma has length >= 3) instead of the diagram-side arc-length filter.
/// Kept for comparison; see the dedicated test.
long long count_paths_literal_plateau(int n, int k, int sigma);

struct GrowthRate {
    double value = 0.0;    // exponential base (1/root)
    double residual = 0.0; // |f(root)| achieved by the solver
};

/// Smallest positive pole of the motif generating function for k=3; returns
/// its reciprocal. sigma >= 2.
GrowthRate motif_growth_rate(int sigma);

/// Exponential growth rate of <k,sigma>-structures: the reciprocal of the
/// minimal positive x with sqrt(w0(x))*x/v0(x) = 1/(2(k-1)). k,sigma >= 3.
GrowthRate structure_growth_rate(int k, int sigma);

} // namespace pkfold

#endif

#ifndef PKFOLD_SERIES_HPP
#define PKFOLD_SERIES_HPP

#include <gmpxx.h>

#include <vector>

#include "pkfold/common.hpp"

namespace pkfold {

/// Number of k-noncrossing perfect matchings of [2m], by backtracking
/// enumeration. Intended for small m (the series pipeline needs m <= n/(2*sigma)).
mpz_class count_noncrossing_matchings(int m, int k);

/// Coefficients 0..n_max of the structure-counting series: the composition
/// (1/v0(x)) * F_k(sqrt(w0(x)) x / v0(x)) with
/// w0 = x^(2s-2)/(1-x^2+x^(2s)), v0 = 1-x+w0(x^2+x^3+x^4),
/// computed in exact rational arithmetic. Only k=3 is wired up
/// (UnsupportedK otherwise); minimum arc length 4 is built into v0.
std::vector<mpz_class> structure_series(int n_max, int k, int sigma);

/// [x^n] of the series above.
mpz_class series_count(int n, int k, int sigma);

} // namespace pkfold

#endif

#include "pkfold/series.hpp"

#include <algorithm>
#include <functional>

#include "pkfold/diagrams.hpp"

namespace pkfold {

namespace {

using QSeries = std::vector<mpq_class>; // coefficients 0..N

QSeries mul_trunc(const QSeries& a, const QSeries& b, int n_max) {
    QSeries out(n_max + 1, 0);
    for (int x = 0; x <= n_max && x < static_cast<int>(a.size()); ++x) {
        if (a[x] == 0) continue;
        int ylim = std::min(n_max - x, static_cast<int>(b.size()) - 1);
        for (int y = 0; y <= ylim; ++y) out[x + y] += a[x] * b[y];
    }
    return out;
}

// 1/a with a[0] != 0
QSeries inverse(const QSeries& a, int n_max) {
    if (a.empty() || a[0] == 0) throw Error(Errc::InvalidParams, "series not invertible");
    QSeries inv(n_max + 1, 0);
    inv[0] = 1 / a[0];
    for (int n = 1; n <= n_max; ++n) {
        mpq_class acc = 0;
        for (int x = 1; x <= n && x < static_cast<int>(a.size()); ++x) acc += a[x] * inv[n - x];
        inv[n] = -acc / a[0];
    }
    return inv;
}

} // namespace

mpz_class count_noncrossing_matchings(int m, int k) {
    // match the smallest free vertex with each free partner, pruning when a
    // set of k mutually crossing arcs appears
    int n = 2 * m;
    std::vector<Arc> arcs;
    std::vector<char> used(n + 1, 0);
    mpz_class count = 0;
    std::function<void(int)> go = [&](int pos) {
        while (pos <= n && used[pos]) ++pos;
        if (pos > n) {
            ++count;
            return;
        }
        for (int q = pos + 1; q <= n; ++q) {
            if (used[q]) continue;
            Arc a{pos, q};
            // adding a must not complete k mutually crossing arcs: search for
            // a chain of k-1 mutually crossing arcs all crossing a
            std::vector<Arc> crossers;
            for (const Arc& b : arcs)
                if (crossing(a, b)) crossers.push_back(b);
            bool bad = false;
            if (static_cast<int>(crossers.size()) >= k - 1) {
                std::vector<Arc> all = crossers;
                all.push_back(a);
                bad = static_cast<int>(max_mutually_crossing(all, n).size()) >= k;
            }
            if (!bad) {
                used[pos] = used[q] = 1;
                arcs.push_back(a);
                go(pos + 1);
                arcs.pop_back();
                used[pos] = used[q] = 0;
            }
        }
    };
    go(1);
    return count;
}

std::vector<mpz_class> structure_series(int n_max, int k, int sigma) {
    if (k != 3) throw Error(Errc::UnsupportedK, "series pipeline wired for k=3 only");
    if (sigma < 1 || n_max < 0) throw Error(Errc::InvalidParams, "bad series parameters");

    // w0 = x^(2s-2) / A with A = 1 - x^2 + x^(2s)
    QSeries A(n_max + 1, 0);
    A[0] = 1;
    if (2 <= n_max) A[2] = -1;
    if (2 * sigma <= n_max) A[2 * sigma] += 1;
    QSeries invA = inverse(A, n_max);
    QSeries w0(n_max + 1, 0);
    for (int d = 2 * sigma - 2; d <= n_max; ++d) w0[d] = invA[d - (2 * sigma - 2)];

    // v0 = 1 - x + w0*(x^2 + x^3 + x^4)
    QSeries v0(n_max + 1, 0);
    v0[0] = 1;
    if (1 <= n_max) v0[1] = -1;
    for (int d = 0; d <= n_max; ++d) {
        if (w0[d] == 0) continue;
        for (int e = 2; e <= 4; ++e)
            if (d + e <= n_max) v0[d + e] += w0[d];
    }
    QSeries inv_v0 = inverse(v0, n_max);

    // F_k has even-degree terms only, so F_k(sqrt(w0) x / v0) is a polynomial
    // in B = w0 * x^2 / v0^2; B has valuation 2*sigma, so m <= n_max/(2*sigma)
    QSeries B = mul_trunc(w0, mul_trunc(inv_v0, inv_v0, n_max), n_max);
    B.insert(B.begin(), 2, mpq_class(0)); // times x^2
    B.resize(n_max + 1);

    int m_max = n_max / (2 * sigma);
    std::vector<mpz_class> f(m_max + 1);
    for (int m = 0; m <= m_max; ++m) f[m] = count_noncrossing_matchings(m, k);

    // Horner: G = f_0 + B*(f_1 + B*(f_2 + ...))
    QSeries G(n_max + 1, 0);
    G[0] = mpq_class(f[m_max]);
    for (int m = m_max - 1; m >= 0; --m) {
        G = mul_trunc(G, B, n_max);
        G[0] += mpq_class(f[m]);
    }
    QSeries T = mul_trunc(inv_v0, G, n_max);

    std::vector<mpz_class> out(n_max + 1);
    for (int d = 0; d <= n_max; ++d) {
        mpq_class c = T[d];
        c.canonicalize();
        if (c.get_den() != 1)
            throw Error(Errc::NoConvergence, "non-integer series coefficient at degree " + std::to_string(d));
        out[d] = c.get_num();
    }
    return out;
}

mpz_class series_count(int n, int k, int sigma) {
    if (n < 0 || n > 200) throw Error(Errc::InvalidParams, "series_count order out of range");
    return structure_series(n, k, sigma)[n];
}

} // namespace pkfold

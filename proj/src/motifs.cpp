#include "pkfold/motifs.hpp"

#include <cmath>
#include <functional>

namespace pkfold {

std::string to_string(const MotzkinPath& p) {
    std::string s;
    s.reserve(p.steps.size());
    for (Step st : p.steps)
        s.push_back(st == Step::Up ? 'U' : st == Step::Down ? 'D' : 'H');
    return s;
}

MotzkinPath path_from_string(const std::string& s) {
    MotzkinPath p;
    p.steps.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case 'U': p.steps.push_back(Step::Up); break;
            case 'D': p.steps.push_back(Step::Down); break;
            case 'H': p.steps.push_back(Step::Horizontal); break;
            default: throw Error(Errc::MalformedPath, std::string("bad step char '") + c + "'");
        }
    }
    return p;
}

bool path_admissible(const MotzkinPath& p, int k, int sigma) {
    int height = 0, run = 0;
    Step run_type = Step::Horizontal;
    int bound = sigma * (k - 1);
    for (Step st : p.steps) {
        if (st == run_type) {
            ++run;
        } else {
            if ((run_type == Step::Up || run_type == Step::Down) && run % sigma != 0) return false;
            run_type = st;
            run = 1;
        }
        height += st == Step::Up ? 1 : st == Step::Down ? -1 : 0;
        if (height < 0 || height > bound) return false;
    }
    if ((run_type == Step::Up || run_type == Step::Down) && run % sigma != 0) return false;
    return height == 0;
}

MotifCounts count_motifs(int n, int k, int sigma) {
    if (k < 2 || sigma < 2 || n < 0)
        throw Error(Errc::InvalidParams, "count_motifs needs k >= 2, sigma >= 2, n >= 0");
    // mu_1(m) = 1 for all m; build mu_j up to j = k-1, then mu* from mu_{k-1}
    std::vector<mpz_class> prev(n + 1, 1);
    std::vector<mpz_class> mu = prev;
    for (int j = 2; j <= k - 1; ++j) {
        std::vector<mpz_class> cur(n + 1);
        for (int m = 0; m <= n && m <= 2 * sigma - 1; ++m) cur[m] = 1;
        for (int m = 2 * sigma; m <= n; ++m) {
            cur[m] = cur[m - 1];
            for (int s = 0; s <= m - 2 * sigma; ++s) cur[m] += prev[m - 2 * sigma - s] * cur[s];
        }
        prev = cur;
        mu = cur;
    }
    MotifCounts out;
    out.mu = mu;
    out.mu_star.assign(n + 1, 0);
    for (int m = 0; m <= n && m <= 2 * sigma; ++m) out.mu_star[m] = 1;
    for (int m = 2 * sigma + 1; m <= n; ++m) {
        out.mu_star[m] = out.mu_star[m - 1];
        for (int s = 0; s <= m - (2 * sigma + 3); ++s)
            out.mu_star[m] += mu[m - 2 * sigma - s] * out.mu_star[s];
    }
    return out;
}

namespace {

// sigma-blocks of up and of down steps, left to right: {start position (1-based)}
void collect_blocks(const MotzkinPath& p, int sigma, std::vector<int>& ups, std::vector<int>& downs) {
    int pos = 1;
    size_t x = 0;
    const auto& st = p.steps;
    while (x < st.size()) {
        if (st[x] == Step::Horizontal) {
            ++x;
            ++pos;
            continue;
        }
        Step t = st[x];
        size_t runlen = 0;
        while (x + runlen < st.size() && st[x + runlen] == t) ++runlen;
        if (runlen % static_cast<size_t>(sigma) != 0)
            throw Error(Errc::MalformedPath, "run of length " + std::to_string(runlen) +
                                                 " not divisible by sigma=" + std::to_string(sigma));
        for (size_t b = 0; b < runlen; b += static_cast<size_t>(sigma))
            (t == Step::Up ? ups : downs).push_back(pos + static_cast<int>(b));
        pos += static_cast<int>(runlen);
        x += runlen;
    }
}

} // namespace

Structure path_to_motif(const MotzkinPath& p, int k, int sigma) {
    if (!path_admissible(p, k, sigma))
        throw Error(Errc::MalformedPath, "path violates the admissibility conditions");
    std::vector<int> ups, downs;
    collect_blocks(p, sigma, ups, downs);
    if (ups.size() != downs.size())
        throw Error(Errc::MalformedPath, "unbalanced up/down blocks");
    std::vector<Arc> arcs;
    for (size_t x = 0; x < ups.size(); ++x) {
        int a = ups[x], b = downs[x];
        if (b <= a + sigma - 1) throw Error(Errc::MalformedPath, "down block precedes its up block");
        for (int d = 0; d < sigma; ++d) arcs.push_back({a + d, b + sigma - 1 - d});
    }
    DiagramParams params{k, 1, sigma};
    return Structure::make(static_cast<int>(p.steps.size()), arcs, params);
}

MotzkinPath motif_to_path(const Structure& m) {
    int sigma = m.params().sigma;
    Core c = core(m);
    const std::vector<Arc>& ca = c.structure.arcs();
    for (size_t x = 0; x < ca.size(); ++x)
        for (size_t y = 0; y < ca.size(); ++y)
            if (x != y && precedes(ca[x], ca[y]))
                throw Error(Errc::NotAMotif, "core has nested arcs " + to_string(ca[x]) + " in " + to_string(ca[y]));
    for (const Stack& st : c.stacks)
        if (st.len != sigma)
            throw Error(Errc::NotAMotif, "stack " + to_string(st) + " has length != sigma");
    MotzkinPath p;
    p.steps.assign(m.length(), Step::Horizontal);
    for (const Arc& a : m.arcs()) {
        p.steps[a.i - 1] = Step::Up;
        p.steps[a.j - 1] = Step::Down;
    }
    return p;
}

namespace {

// DFS over admissible step sequences. At each step we either extend the
// current run or close it (runs of up/down must close at multiples of sigma).
template <typename Fn>
void walk_paths(int n, int k, int sigma, Fn&& emit) {
    int bound = sigma * (k - 1);
    std::vector<Step> steps;
    steps.reserve(n);
    std::function<void(int, int, Step, int)> go = [&](int pos, int height, Step run_type, int run) {
        if (pos == n) {
            bool run_ok = run_type == Step::Horizontal || run % sigma == 0;
            if (height == 0 && run_ok) emit(steps);
            return;
        }
        int remaining = n - pos;
        if (height > remaining) return; // cannot return to 0
        for (Step st : {Step::Up, Step::Down, Step::Horizontal}) {
            if (st != run_type && (run_type == Step::Up || run_type == Step::Down) && run % sigma != 0)
                continue; // cannot close an unfinished block
            int nh = height + (st == Step::Up ? 1 : st == Step::Down ? -1 : 0);
            if (nh < 0 || nh > bound) continue;
            steps.push_back(st);
            go(pos + 1, nh, st, st == run_type ? run + 1 : 1);
            steps.pop_back();
        }
    };
    go(0, 0, Step::Horizontal, 0);
}

bool blocks_gap_ok(const MotzkinPath& p, int sigma, int lambda) {
    std::vector<int> ups, downs;
    collect_blocks(p, sigma, ups, downs);
    for (size_t x = 0; x < ups.size(); ++x) {
        // innermost arc of pair x runs from the last up position to the first down position
        int arc_len = downs[x] - (ups[x] + sigma - 1);
        if (arc_len < lambda) return false;
    }
    return true;
}

} // namespace

std::vector<Structure> enumerate_motifs(int n, int k, int sigma) {
    if (k < 2 || sigma < 3 || n < 0)
        throw Error(Errc::InvalidParams, "enumerate_motifs needs k >= 2, sigma >= 3, n >= 0");
    std::vector<Structure> out;
    walk_paths(n, k, sigma, [&](const std::vector<Step>& steps) {
        MotzkinPath p{steps};
        if (!blocks_gap_ok(p, sigma, 4)) return;
        Structure m = path_to_motif(p, k, sigma);
        DiagramParams params{k, 4, sigma};
        out.push_back(Structure::make(m.length(), m.arcs(), params));
    });
    return out;
}

long long count_paths_literal_plateau(int n, int k, int sigma) {
    long long count = 0;
    walk_paths(n, k, sigma, [&](const std::vector<Step>& steps) {
        int height = 0;
        size_t x = 0;
        while (x < steps.size()) {
            if (steps[x] == Step::Horizontal) {
                size_t len = 0;
                while (x + len < steps.size() && steps[x + len] == Step::Horizontal) ++len;
                if (height == sigma && len < 3) return;
                x += len;
            } else {
                height += steps[x] == Step::Up ? 1 : -1;
                ++x;
            }
        }
        ++count;
    });
    return count;
}

namespace {

struct Root {
    double x = 0.0;
    double residual = 0.0;
};

// first sign change of f on (lo, hi), refined by bisection then Newton steps
template <typename Fn>
Root find_first_root(Fn&& f, double lo, double hi, double step) {
    double a = lo, fa = f(a);
    for (double b = lo + step; b <= hi; b += step) {
        double fb = f(b);
        if (std::isfinite(fb) && std::isfinite(fa) && fa * fb <= 0.0) {
            double x0 = a, x1 = b;
            for (int it = 0; it < 200; ++it) {
                double mid = 0.5 * (x0 + x1);
                double fm = f(mid);
                if (fa * fm <= 0.0)
                    x1 = mid;
                else {
                    x0 = mid;
                    fa = f(x0);
                }
            }
            double x = 0.5 * (x0 + x1);
            for (int it = 0; it < 8; ++it) {
                double h = 1e-9;
                double d = (f(x + h) - f(x - h)) / (2 * h);
                if (d == 0.0 || !std::isfinite(d)) break;
                double nx = x - f(x) / d;
                if (nx <= lo || nx >= hi || !std::isfinite(nx)) break;
                x = nx;
            }
            return {x, std::fabs(f(x))};
        }
        a = b;
        fa = fb;
    }
    throw Error(Errc::NoConvergence, "no sign change found");
}

} // namespace

GrowthRate motif_growth_rate(int sigma) {
    if (sigma < 2) throw Error(Errc::InvalidParams, "motif_growth_rate needs sigma >= 2");
    auto g2_den = [&](double z) { return 1.0 - z - std::pow(z, 2 * sigma) / (1.0 - z); };
    auto denom = [&](double z) {
        double q = g2_den(z);
        double g2 = 1.0 / q;
        return 1.0 - z - std::pow(z, 2 * sigma) * (g2 - (z * z + z + 1.0));
    };
    // stay below the inner pole: the scan stops where g2_den crosses 0
    double hi = 1.0 - 1e-9;
    for (double z = 1e-6; z < 1.0; z += 1e-4) {
        if (g2_den(z) <= 0.0) {
            hi = z - 1e-4;
            break;
        }
    }
    Root r = find_first_root(denom, 1e-6, hi, 1e-4);
    if (r.residual > 1e-12)
        throw Error(Errc::NoConvergence, "residual " + std::to_string(r.residual));
    return {1.0 / r.x, r.residual};
}

GrowthRate structure_growth_rate(int k, int sigma) {
    if (k < 3 || sigma < 3)
        throw Error(Errc::InvalidParams, "structure_growth_rate needs k >= 3, sigma >= 3");
    double rho = 1.0 / (2.0 * (k - 1));
    auto f = [&](double x) {
        double w0 = std::pow(x, 2 * sigma - 2) / (1.0 - x * x + std::pow(x, 2 * sigma));
        double v0 = 1.0 - x + w0 * (x * x + x * x * x + x * x * x * x);
        return std::sqrt(w0) * x / v0 - rho;
    };
    Root r = find_first_root(f, 1e-6, 1.0 - 1e-9, 1e-4);
    if (r.residual > 1e-12)
        throw Error(Errc::NoConvergence, "residual " + std::to_string(r.residual));
    return {1.0 / r.x, r.residual};
}

} // namespace pkfold

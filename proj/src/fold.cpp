#include "pkfold/fold.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>
#include <set>
#include <thread>
#include <tuple>

namespace pkfold {

bool cand_better(const Cand& a, const Cand& b) {
    if (a.e != b.e) return a.e < b.e;
    return a.arcs < b.arcs;
}

namespace {

Energy eadd(Energy a, Energy b) {
    return (a >= kEnergyInf || b >= kEnergyInf) ? kEnergyInf : a + b;
}

Energy eadd(Energy a, Energy b, Energy c) { return eadd(eadd(a, b), c); }

void consider(Cand& best, Energy e, std::vector<Arc> arcs) {
    if (e >= kEnergyInf) return;
    std::sort(arcs.begin(), arcs.end());
    Cand cand{e, std::move(arcs)};
    if (cand_better(cand, best)) best = std::move(cand);
}

std::vector<Arc> merge_arcs(const std::vector<Arc>& a, const std::vector<Arc>& b) {
    std::vector<Arc> out;
    out.reserve(a.size() + b.size());
    out.insert(out.end(), a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

// ---- shape cache -----------------------------------------------------------

struct ShapeKey {
    int span, sigma, max_stacks, max_depth, max_nodes;
    bool operator<(const ShapeKey& o) const {
        return std::tie(span, sigma, max_stacks, max_depth, max_nodes) <
               std::tie(o.span, o.sigma, o.max_stacks, o.max_depth, o.max_nodes);
    }
};

SkeletonShape analyze_shape(const Structure& s) {
    SkeletonShape shape;
    shape.stacks = maximal_stacks(s);
    shape.arcs = s.arcs();
    LoopDecomposition dec = loop_decompose(s);

    std::map<Arc, size_t> arc_index;
    for (size_t x = 0; x < s.arcs().size(); ++x) arc_index[s.arcs()[x]] = x;
    for (const Stack& st : shape.stacks) {
        bool red = dec.arc_colors[arc_index[st.outer()]] == Color::Red;
        (red ? shape.pk_pairs : shape.plain_pairs) += st.len - 1;
    }
    auto interval_of = [&](std::pair<int, int> iv) {
        // no skeleton interval spans an arc's full inside: every skeleton arc
        // is crossed, and a crosser's endpoint lies inside the innermost arc
        // of its stack, so a filling can never continue a skeleton stack
        if (iv.first > 1 && iv.second < s.length() && s.partner(iv.first - 1) == iv.second + 1)
            throw Error(Errc::NotASkeleton, "interval spans the whole inside of an arc");
        return SkeletonShape::Interval{iv.first, iv.second};
    };
    for (const Loop& lp : dec.loops) {
        switch (lp.kind) {
            case LoopKind::Hairpin:
                throw Error(Errc::NotASkeleton, "skeleton with a hairpin loop");
            case LoopKind::Interior: {
                const Arc& outer = lp.closing[0].i < lp.closing[1].i ? lp.closing[0] : lp.closing[1];
                const Arc& inner = lp.closing[0].i < lp.closing[1].i ? lp.closing[1] : lp.closing[0];
                SkeletonShape::GreenPair gp;
                gp.l_lo = outer.i + 1;
                gp.l_hi = inner.i - 1;
                gp.r_lo = inner.j + 1;
                gp.r_hi = outer.j - 1;
                gp.size_l = gp.l_hi - gp.l_lo + 1;
                gp.size_r = gp.r_hi - gp.r_lo + 1;
                shape.green_pairs.push_back(gp);
                break;
            }
            case LoopKind::Multi:
                ++shape.multi_loops;
                shape.multi_closings += 1 + static_cast<int>(lp.component_spans.size());
                for (auto& iv : lp.intervals) shape.mul_intervals.push_back(interval_of(iv));
                break;
            case LoopKind::Pseudoknot:
                ++shape.pk_loops;
                for (auto& iv : lp.intervals) shape.pk_intervals.push_back(interval_of(iv));
                break;
        }
    }
    return shape;
}

std::map<ShapeKey, std::vector<SkeletonShape>>& shape_cache() {
    static std::map<ShapeKey, std::vector<SkeletonShape>> cache;
    return cache;
}
std::mutex& shape_mutex() {
    static std::mutex m;
    return m;
}

} // namespace

const std::vector<SkeletonShape>& skeleton_shapes(int span, int sigma, int max_stacks, TreeLimits limits) {
    ShapeKey key{span, sigma, max_stacks, limits.max_depth, limits.max_nodes};
    std::lock_guard<std::mutex> lock(shape_mutex());
    auto& cache = shape_cache();
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::vector<SkeletonShape> shapes;
    std::set<std::vector<Arc>> seen;
    for (const Structure& s0 : enumerate_irreducible_shadows(span, sigma, max_stacks)) {
        SkeletaTree tree = build_skeleta_tree(s0, limits);
        for (const auto& node : tree.nodes) {
            if (!seen.insert(node.skeleton.arcs()).second) continue;
            shapes.push_back(analyze_shape(node.skeleton));
        }
    }
    std::sort(shapes.begin(), shapes.end(),
              [](const SkeletonShape& a, const SkeletonShape& b) { return a.arcs < b.arcs; });
    return cache.emplace(key, std::move(shapes)).first->second;
}

// ---- tables ----------------------------------------------------------------

FoldTables::FoldTables(std::string seq, const EnergyModel& em, const FoldOptions& opts)
    : n_(static_cast<int>(seq.size())), seq_(std::move(seq)), em_(em), opts_(opts) {
    check_alphabet(seq_);
    if (opts_.sigma < 3) throw Error(Errc::InvalidParams, "sigma must be >= 3");
    row_.assign(n_ + 1, 0);
    row_[1] = 0;
    for (int i = 2; i <= n_; ++i) row_[i] = row_[i - 1] + (n_ - (i - 1) + 1);
    size_t cells = static_cast<size_t>(n_) * (n_ + 1) / 2;
    vp_.assign(cells, {});
    cross_.assign(cells, {});
    for (int c = 0; c < 3; ++c) {
        ge1_[c].assign(cells, {});
        ge2_[c].assign(cells, {});
    }
    // warm the shape cache before parallel fills
    for (int len = 4 * opts_.sigma; len <= n_; ++len)
        skeleton_shapes(len, opts_.sigma, opts_.max_shadow_stacks, opts_.tree_limits);

    for (int len = 1; len <= n_; ++len) fill_diagonal(len);
}

void FoldTables::fill_diagonal(int len) {
    int count = n_ - len + 1;
    auto run = [&](void (FoldTables::*fn)(int, int)) {
        int threads = std::max(1, opts_.threads);
        if (threads <= 1 || count < 4) {
            for (int i = 1; i <= count; ++i) (this->*fn)(i, i + len - 1);
            return;
        }
        std::vector<std::thread> pool;
        int chunk = (count + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            int lo = 1 + t * chunk, hi = std::min(count, lo + chunk - 1);
            if (lo > hi) break;
            pool.emplace_back([this, fn, lo, hi, len] {
                for (int i = lo; i <= hi; ++i) (this->*fn)(i, i + len - 1);
            });
        }
        for (auto& th : pool) th.join();
    };
    // blocks first: the assembly cells of this diagonal use them at full span
    run(&FoldTables::compute_vp);
    run(&FoldTables::compute_cross);
    run(&FoldTables::compute_os);
}

Cand FoldTables::fill_any(FillContext ctx, int lo, int hi) const {
    if (lo > hi) return {0, {}};
    Energy q = ctx == FillContext::Exterior  ? em_.unpaired_exterior
               : ctx == FillContext::Multi   ? em_.unpaired_multi
                                             : em_.unpaired_pk;
    Cand best{q * (hi - lo + 1), {}};
    const Cand& g1 = ge1_[static_cast<int>(ctx)][ix(lo, hi)];
    if (cand_better(g1, best)) best = g1;
    return best;
}

void FoldTables::compute_vp(int i, int j) {
    Cand best;
    int lambda = 4;
    int sigma = opts_.sigma;
    int max_t = (j - i + 2 - lambda) / 2; // q - p = j - i + 2 - 2t >= lambda
    for (int t = sigma; t <= max_t; ++t) {
        bool ok = true;
        for (int d = 0; d < t && ok; ++d) ok = pairable(i + d, j - d);
        if (!ok) break; // longer stacks reuse the failing pair
        int p = i + t - 1, q = j - t + 1;
        if (q - p < lambda) break;
        std::vector<Arc> stack_arcs;
        for (int d = 0; d < t; ++d) stack_arcs.push_back({i + d, j - d});
        Energy stack_e = em_.stack_bonus * (t - 1);

        // hairpin
        consider(best, eadd(stack_e, em_.hairpin(q - p - 1)), stack_arcs);
        // interior: one nested block (p', q'), not both sides empty
        for (int p2 = p + 1; p2 < q; ++p2) {
            for (int q2 = p2 + 1; q2 < q; ++q2) {
                if (p2 == p + 1 && q2 == q - 1) continue;
                const Cand& inner = vp_[ix(p2, q2)];
                if (inner.e >= kEnergyInf) continue;
                Energy e = eadd(stack_e, em_.interior(p2 - p - 1, q - q2 - 1), inner.e);
                consider(best, e, merge_arcs(stack_arcs, inner.arcs));
            }
        }
        // multi: filling of order >= 2
        const Cand& mul = ge2_[static_cast<int>(FillContext::Multi)][ix(p + 1, q - 1)];
        if (mul.e < kEnergyInf) {
            Energy e = eadd(stack_e, eadd(em_.multi_penalty, em_.closing_pair), mul.e);
            consider(best, e, merge_arcs(stack_arcs, mul.arcs));
        }
    }
    vp_[ix(i, j)] = std::move(best);
}

Cand FoldTables::saturate_shape(const SkeletonShape& shape, int i) const {
    int off = i - 1;
    for (const Arc& a : shape.arcs)
        if (!pairable(a.i + off, a.j + off)) return {};
    Energy e = em_.stack_bonus * shape.plain_pairs + em_.pk_stack_bonus * shape.pk_pairs +
               em_.multi_penalty * shape.multi_loops + em_.closing_pair * shape.multi_closings +
               em_.pk_penalty * shape.pk_loops;
    std::vector<Arc> arcs;
    arcs.reserve(shape.arcs.size());
    for (const Arc& a : shape.arcs) arcs.push_back({a.i + off, a.j + off});

    for (const auto& iv : shape.pk_intervals) {
        Cand f = fill_any(FillContext::Pseudoknot, iv.lo + off, iv.hi + off);
        e = eadd(e, f.e);
        arcs = merge_arcs(arcs, f.arcs);
    }
    for (const auto& iv : shape.mul_intervals) {
        Cand f = fill_any(FillContext::Multi, iv.lo + off, iv.hi + off);
        e = eadd(e, f.e);
        arcs = merge_arcs(arcs, f.arcs);
    }
    for (const auto& gp : shape.green_pairs) {
        // interior-loop pair: keep it an interior loop or convert to a
        // multi-loop fed by fillings of order >= 1
        Cand pair_best{em_.interior(gp.size_l, gp.size_r), {}};
        Energy m2 = eadd(em_.multi_penalty, 2 * em_.closing_pair);
        const Cand* gl = nullptr;
        const Cand* gr = nullptr;
        if (gp.size_l > 0) gl = &ge1_[static_cast<int>(FillContext::Multi)][ix(gp.l_lo + off, gp.l_hi + off)];
        if (gp.size_r > 0) gr = &ge1_[static_cast<int>(FillContext::Multi)][ix(gp.r_lo + off, gp.r_hi + off)];
        if (gl && gl->e < kEnergyInf)
            consider(pair_best, eadd(m2, gl->e, em_.unpaired_multi * gp.size_r), gl->arcs);
        if (gr && gr->e < kEnergyInf)
            consider(pair_best, eadd(m2, gr->e, em_.unpaired_multi * gp.size_l), gr->arcs);
        if (gl && gr && gl->e < kEnergyInf && gr->e < kEnergyInf)
            consider(pair_best, eadd(eadd(m2, gl->e), gr->e), merge_arcs(gl->arcs, gr->arcs));
        e = eadd(e, pair_best.e);
        arcs = merge_arcs(arcs, pair_best.arcs);
    }
    Cand out;
    consider(out, e, std::move(arcs));
    return out;
}

Cand FoldTables::saturate_skeleton(const Structure& skeleton, int i) const {
    if (!is_skeleton(skeleton)) throw Error(Errc::NotASkeleton, "saturate_skeleton needs a skeleton");
    if (i < 1 || i + skeleton.length() - 1 > n_)
        throw Error(Errc::InvalidParams, "skeleton does not fit at position " + std::to_string(i));
    return saturate_shape(analyze_shape(skeleton), i);
}

void FoldTables::compute_cross(int i, int j) {
    Cand best;
    int span = j - i + 1;
    if (span >= 4 * opts_.sigma) {
        const auto& shapes = skeleton_shapes(span, opts_.sigma, opts_.max_shadow_stacks, opts_.tree_limits);
        for (const SkeletonShape& shape : shapes) {
            Cand cand = saturate_shape(shape, i);
            if (cand_better(cand, best)) best = std::move(cand);
        }
    }
    cross_[ix(i, j)] = std::move(best);
}

void FoldTables::compute_os(int i, int j) {
    for (int c = 0; c < 3; ++c) {
        FillContext ctx = static_cast<FillContext>(c);
        Energy q = ctx == FillContext::Exterior  ? em_.unpaired_exterior
                   : ctx == FillContext::Multi   ? em_.unpaired_multi
                                                 : em_.unpaired_pk;
        Energy p = ctx == FillContext::Multi ? em_.closing_pair : 0;
        Cand g1, g2;
        if (i < j) {
            const Cand& sub1 = ge1_[c][ix(i + 1, j)];
            consider(g1, eadd(q, sub1.e), sub1.arcs);
            const Cand& sub2 = ge2_[c][ix(i + 1, j)];
            consider(g2, eadd(q, sub2.e), sub2.arcs);
        }
        for (int s = i + 1; s <= j; ++s) {
            Cand rest_any = fill_any(ctx, s + 1, j);
            const Cand& blkv = vp_[ix(i, s)];
            if (blkv.e < kEnergyInf) {
                consider(g1, eadd(blkv.e, p, rest_any.e), merge_arcs(blkv.arcs, rest_any.arcs));
                const Cand& rest1 = s < j ? ge1_[c][ix(s + 1, j)] : g1; // g1 unused when s==j
                if (s < j && rest1.e < kEnergyInf)
                    consider(g2, eadd(eadd(blkv.e, p), rest1.e), merge_arcs(blkv.arcs, rest1.arcs));
            }
            const Cand& blkc = cross_[ix(i, s)];
            if (blkc.e < kEnergyInf) {
                Energy e = eadd(blkc.e, p, rest_any.e);
                std::vector<Arc> arcs = merge_arcs(blkc.arcs, rest_any.arcs);
                consider(g1, e, arcs);
                consider(g2, e, std::move(arcs));
            }
        }
        ge1_[c][ix(i, j)] = std::move(g1);
        ge2_[c][ix(i, j)] = std::move(g2);
    }
}

Cand FoldTables::osm(int i, int j) const {
    Cand best = vp_[ix(i, j)];
    if (cand_better(cross_[ix(i, j)], best)) best = cross_[ix(i, j)];
    return best;
}

Cand FoldTables::os(FillContext ctx, int i, int j) const { return fill_any(ctx, i, j); }

FoldResult FoldTables::result() const {
    Cand top = fill_any(FillContext::Exterior, 1, n_);
    FoldResult res;
    res.structure = Structure::make(n_, top.arcs, {3, 4, opts_.sigma});
    res.energy = top.e;
    res.decomposition = loop_decompose(res.structure);
    Energy check = loop_energy(res.structure, res.decomposition, seq_, em_);
    if (check != res.energy)
        throw Error(Errc::NoConvergence, "energy mismatch: table " + energy_to_string(res.energy) +
                                             " vs recomputed " + energy_to_string(check));
    // provenance: crossing components of the result and their skeleton closure
    std::vector<Stack> stacks = maximal_stacks(res.structure);
    std::vector<int> comp(stacks.size(), -1);
    for (size_t x = 0; x < stacks.size(); ++x) {
        if (comp[x] != -1) continue;
        // transitive crossing closure seeded at each unvisited stack
        std::vector<size_t> work{x};
        comp[x] = static_cast<int>(x);
        while (!work.empty()) {
            size_t u = work.back();
            work.pop_back();
            for (size_t v = 0; v < stacks.size(); ++v)
                if (comp[v] == -1 && crossing(stacks[u].outer(), stacks[v].outer())) {
                    comp[v] = comp[x];
                    work.push_back(v);
                }
        }
    }
    std::map<int, std::vector<Stack>> groups;
    for (size_t x = 0; x < stacks.size(); ++x) groups[comp[x]].push_back(stacks[x]);
    for (auto& [id, group] : groups) {
        if (group.size() < 2) continue;
        int lo = group.front().i, hi = 0;
        for (const Stack& st : group) {
            lo = std::min(lo, st.i);
            hi = std::max(hi, st.j);
        }
        res.provenance.push_back({{lo, hi}, group});
    }
    std::sort(res.provenance.begin(), res.provenance.end());
    return res;
}

FoldResult fold(const std::string& seq, const EnergyModel& em, const FoldOptions& opts) {
    FoldTables tables(seq, em, opts);
    return tables.result();
}

} // namespace pkfold

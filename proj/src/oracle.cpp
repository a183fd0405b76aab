#include "pkfold/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>

#include "pkfold/decomposition.hpp"
#include "pkfold/skeleta.hpp"

namespace pkfold {

namespace {

// incremental check: does adding this stack keep the diagram k-noncrossing?
bool stack_addable(const std::vector<Arc>& arcs, const Stack& st, int n, int k) {
    std::vector<Arc> trial = arcs;
    for (const Arc& a : st.arcs()) trial.push_back(a);
    return static_cast<int>(max_mutually_crossing(trial, n).size()) < k;
}

} // namespace

std::vector<Structure> enumerate_structures(int n, DiagramParams params, int ceiling) {
    if (n > ceiling)
        throw Error(Errc::CeilingExceeded, "n=" + std::to_string(n) + " > ceiling=" + std::to_string(ceiling));
    std::vector<Structure> out;
    std::vector<Arc> arcs;
    std::vector<char> used(n + 2, 0);
    std::vector<Stack> stacks;

    // place maximal stacks by ascending origin; a stack may not sit directly
    // beneath an existing arc (that would merge), keeping the decomposition
    // canonical and sigma-canonicity structural
    std::function<void(int)> place = [&](int from) {
        int i = from;
        while (i <= n && used[i]) ++i;
        if (i > n || i + 2 * params.sigma - 2 + params.lambda > n) {
            out.push_back(Structure::make_unchecked(n, arcs, params));
            return;
        }
        // i stays unpaired
        used[i] = 1;
        place(i + 1);
        used[i] = 0;
        // or a maximal stack starts at i
        for (int len = params.sigma;; ++len) {
            bool origin_free = true;
            for (int d = 0; d < len; ++d)
                if (i + d > n || used[i + d]) origin_free = false;
            if (!origin_free) break;
            if (i + 2 * len - 2 + params.lambda > n) break;
            for (int j = i + 2 * len - 2 + params.lambda; j <= n; ++j) {
                bool term_free = true;
                for (int d = 0; d < len; ++d)
                    if (used[j - d]) term_free = false;
                if (!term_free) continue;
                if (i > 1 && j < n) {
                    // merge guard: (i-1, j+1) already an arc
                    bool merge = false;
                    for (const Arc& a : arcs)
                        if (a.i == i - 1 && a.j == j + 1) merge = true;
                    if (merge) continue;
                }
                Stack st{i, j, len};
                if (!stack_addable(arcs, st, n, params.k)) continue;
                for (int d = 0; d < len; ++d) used[i + d] = used[j - d] = 1;
                size_t before = arcs.size();
                for (const Arc& a : st.arcs()) arcs.push_back(a);
                stacks.push_back(st);
                place(i + 1);
                stacks.pop_back();
                arcs.resize(before);
                for (int d = 0; d < len; ++d) used[i + d] = used[j - d] = 0;
            }
        }
    };
    place(1);
    std::sort(out.begin(), out.end(),
              [](const Structure& a, const Structure& b) { return a.arcs() < b.arcs(); });
    return out;
}

Energy StructureCensus::Entry::energy(const EnergyModel& em) const {
    Energy e = em.stack_bonus * stack_pairs + em.pk_stack_bonus * pk_pairs;
    for (int s : hairpin_sizes) e += em.hairpin(s);
    for (auto& [a, b] : interior_sizes) e += em.interior(a, b);
    e += em.multi_penalty * multi_loops + em.closing_pair * multi_closings +
         em.unpaired_multi * multi_unpaired;
    e += em.pk_penalty * pk_loops + em.unpaired_pk * pk_unpaired;
    e += em.unpaired_exterior * exterior_unpaired;
    return e;
}

namespace {

StructureCensus build_census(int n, DiagramParams params, int ceiling) {
    StructureCensus census;
    census.n = n;
    census.params = params;
    for (const Structure& s : enumerate_structures(n, params, ceiling)) {
        StructureCensus::Entry entry;
        entry.arcs = s.arcs();
        LoopDecomposition dec = loop_decompose(s);
        std::map<Arc, size_t> arc_index;
        for (size_t x = 0; x < s.arcs().size(); ++x) arc_index[s.arcs()[x]] = x;
        for (const Stack& st : maximal_stacks(s)) {
            bool red = dec.arc_colors[arc_index[st.outer()]] == Color::Red;
            (red ? entry.pk_pairs : entry.stack_pairs) += st.len - 1;
        }
        for (const Loop& lp : dec.loops) {
            int unpaired = 0;
            for (auto& iv : lp.intervals) unpaired += iv.second - iv.first + 1;
            switch (lp.kind) {
                case LoopKind::Hairpin:
                    entry.hairpin_sizes.push_back(lp.closing[0].j - lp.closing[0].i - 1);
                    break;
                case LoopKind::Interior: {
                    const Arc& outer = lp.closing[0].i < lp.closing[1].i ? lp.closing[0] : lp.closing[1];
                    const Arc& inner = lp.closing[0].i < lp.closing[1].i ? lp.closing[1] : lp.closing[0];
                    entry.interior_sizes.push_back({inner.i - outer.i - 1, outer.j - inner.j - 1});
                    break;
                }
                case LoopKind::Multi:
                    ++entry.multi_loops;
                    entry.multi_closings += 1 + static_cast<int>(lp.component_spans.size());
                    entry.multi_unpaired += unpaired;
                    break;
                case LoopKind::Pseudoknot:
                    ++entry.pk_loops;
                    entry.pk_unpaired += unpaired;
                    break;
            }
        }
        for (int v = 1; v <= n; ++v)
            if (!s.paired(v) && dec.vertex_loop[v] == -1) ++entry.exterior_unpaired;
        census.entries.push_back(std::move(entry));
    }
    return census;
}

} // namespace

const StructureCensus& structure_census(int n, DiagramParams params, int ceiling) {
    struct Key {
        int n, k, lambda, sigma;
        bool operator<(const Key& o) const {
            return std::tie(n, k, lambda, sigma) < std::tie(o.n, o.k, o.lambda, o.sigma);
        }
    };
    static std::map<Key, StructureCensus> cache;
    static std::mutex mtx;
    Key key{n, params.k, params.lambda, params.sigma};
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_census(n, params, ceiling)).first;
    return it->second;
}

FoldResult brute_force_fold(const std::string& seq, const EnergyModel& em, DiagramParams params,
                            int ceiling) {
    check_alphabet(seq);
    int n = static_cast<int>(seq.size());
    const StructureCensus& census = structure_census(n, params, ceiling);
    const StructureCensus::Entry* best = nullptr;
    Energy best_e = kEnergyInf;
    for (const auto& entry : census.entries) {
        bool ok = true;
        for (const Arc& a : entry.arcs)
            if (!em.admissible(seq[a.i - 1], seq[a.j - 1])) {
                ok = false;
                break;
            }
        if (!ok) continue;
        Energy e = entry.energy(em);
        if (e < best_e || (e == best_e && (!best || entry.arcs < best->arcs))) {
            best = &entry;
            best_e = e;
        }
    }
    FoldResult res;
    res.structure = Structure::make(n, best->arcs, params);
    res.energy = best_e;
    res.decomposition = loop_decompose(res.structure);
    return res;
}

std::vector<Structure> enumerate_skeleta(int span, int sigma, const std::vector<Stack>& containing,
                                         int ceiling) {
    DiagramParams params{3, 4, sigma};
    std::vector<Structure> out;
    for (const auto& entry : structure_census(span, params, ceiling).entries) {
        Structure s = Structure::make_unchecked(span, entry.arcs, params);
        if (!is_skeleton(s)) continue;
        std::vector<Stack> stacks = maximal_stacks(s);
        bool superset = true;
        for (const Stack& need : containing)
            if (std::find(stacks.begin(), stacks.end(), need) == stacks.end()) superset = false;
        if (superset) out.push_back(std::move(s));
    }
    return out;
}

const char* case_study_exclusion_note() {
    return "NOTE tRNA/HDV case studies are excluded: the published loop-energy tables"
           " are no longer available, so those foldings are not reproducible here.";
}

} // namespace pkfold

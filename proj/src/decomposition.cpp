#include "pkfold/decomposition.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>

namespace pkfold {

const char* color_name(Color c) {
    switch (c) {
        case Color::Purple: return "purple";
        case Color::Green: return "green";
        case Color::Blue: return "blue";
        case Color::Red: return "red";
        case Color::Black: return "black";
    }
    return "?";
}

const char* loop_kind_name(LoopKind k) {
    switch (k) {
        case LoopKind::Hairpin: return "HAIRPIN";
        case LoopKind::Interior: return "INTERIOR";
        case LoopKind::Multi: return "MULTI";
        case LoopKind::Pseudoknot: return "PSEUDOKNOT";
    }
    return "?";
}

namespace {

struct CoreAnalysis {
    Core core;
    int m = 0;                                   // number of core arcs
    std::vector<std::vector<char>> cross;        // crossing matrix
    std::vector<char> red;                       // minimal beta-crossing for some beta
    std::vector<std::vector<int>> children;      // maximal core arcs strictly nested in a
    std::vector<Color> color;                    // per core arc
    std::vector<int> pk_component;               // core arc -> pseudoknot component id, -1 if not red
    int pk_count = 0;
};

CoreAnalysis analyze_core(const Structure& s) {
    CoreAnalysis an;
    an.core = core(s);
    const std::vector<Arc>& ca = an.core.structure.arcs();
    an.m = static_cast<int>(ca.size());

    an.cross.assign(an.m, std::vector<char>(an.m, 0));
    for (int a = 0; a < an.m; ++a)
        for (int b = a + 1; b < an.m; ++b)
            if (crossing(ca[a], ca[b])) an.cross[a][b] = an.cross[b][a] = 1;

    // red: a is a minimal element of the crossing set of some b it crosses,
    // i.e. no arc strictly nested in a also crosses b
    an.red.assign(an.m, 0);
    for (int a = 0; a < an.m; ++a) {
        for (int b = 0; b < an.m && !an.red[a]; ++b) {
            if (!an.cross[a][b]) continue;
            bool minimal = true;
            for (int c = 0; c < an.m && minimal; ++c)
                if (an.cross[c][b] && precedes(ca[c], ca[a])) minimal = false;
            if (minimal) an.red[a] = 1;
        }
    }

    // maximal nested children
    an.children.assign(an.m, {});
    for (int a = 0; a < an.m; ++a) {
        for (int b = 0; b < an.m; ++b) {
            if (!precedes(ca[b], ca[a])) continue;
            bool maximal = true;
            for (int c = 0; c < an.m && maximal; ++c)
                if (c != b && precedes(ca[b], ca[c]) && precedes(ca[c], ca[a])) maximal = false;
            if (maximal) an.children[a].push_back(b);
        }
        std::sort(an.children[a].begin(), an.children[a].end(),
                  [&](int x, int y) { return ca[x] < ca[y]; });
    }

    an.color.assign(an.m, Color::Black);
    for (int a = 0; a < an.m; ++a) {
        if (an.red[a]) {
            an.color[a] = Color::Red;
            continue;
        }
        size_t nc = an.children[a].size();
        bool crossed = false;
        for (int b = 0; b < an.m; ++b) crossed = crossed || an.cross[a][b];
        assert(!(crossed && nc == 0)); // a crossed non-red arc has a nested minimal crosser
        an.color[a] = nc == 0 ? Color::Purple : nc == 1 ? Color::Green : Color::Blue;
    }

    // pseudoknot components: crossing-connectivity over red arcs
    an.pk_component.assign(an.m, -1);
    for (int a = 0; a < an.m; ++a) {
        if (!an.red[a] || an.pk_component[a] != -1) continue;
        int id = an.pk_count++;
        std::vector<int> stack_{a};
        an.pk_component[a] = id;
        while (!stack_.empty()) {
            int x = stack_.back();
            stack_.pop_back();
            for (int y = 0; y < an.m; ++y) {
                if (an.red[y] && an.cross[x][y] && an.pk_component[y] == -1) {
                    an.pk_component[y] = id;
                    stack_.push_back(y);
                }
            }
        }
    }
    return an;
}

} // namespace

LoopDecomposition loop_decompose(const Structure& s) {
    LoopDecomposition dec;
    CoreAnalysis an = analyze_core(s);

    dec.arc_colors.assign(s.arcs().size(), Color::Black);
    for (size_t x = 0; x < s.arcs().size(); ++x)
        dec.arc_colors[x] = an.color[an.core.core_arc_of[x]];

    // one loop per non-red core arc (the loop it closes), one per pseudoknot component
    std::vector<int> loop_of_core(an.m, -1);
    std::vector<int> loop_of_pk(an.pk_count, -1);
    for (int a = 0; a < an.m; ++a) {
        if (an.red[a]) {
            int id = an.pk_component[a];
            if (loop_of_pk[id] == -1) {
                loop_of_pk[id] = static_cast<int>(dec.loops.size());
                dec.loops.push_back({LoopKind::Pseudoknot, {}, {}, {}});
            }
            loop_of_core[a] = loop_of_pk[id];
            dec.loops[loop_of_core[a]].closing.push_back(an.core.stacks[a].outer());
            continue;
        }
        loop_of_core[a] = static_cast<int>(dec.loops.size());
        Loop lp;
        const Stack& st = an.core.stacks[a];
        if (an.children[a].empty()) {
            lp.kind = LoopKind::Hairpin;
            lp.closing = {st.inner()};
        } else if (an.children[a].size() == 1) {
            lp.kind = LoopKind::Interior;
            lp.closing = {st.inner(), an.core.stacks[an.children[a][0]].outer()};
        } else {
            lp.kind = LoopKind::Multi;
            lp.closing = {st.inner()};
            // group children into crossing-connected components
            const std::vector<int>& ch = an.children[a];
            std::vector<int> comp(ch.size(), -1);
            int ncomp = 0;
            for (size_t x = 0; x < ch.size(); ++x) {
                if (comp[x] != -1) continue;
                comp[x] = ncomp;
                std::vector<size_t> work{x};
                while (!work.empty()) {
                    size_t u = work.back();
                    work.pop_back();
                    for (size_t v = 0; v < ch.size(); ++v)
                        if (comp[v] == -1 && an.cross[ch[u]][ch[v]]) {
                            comp[v] = ncomp;
                            work.push_back(v);
                        }
                }
                ++ncomp;
            }
            std::vector<std::pair<int, int>> spans(ncomp, {s.length() + 1, 0});
            for (size_t x = 0; x < ch.size(); ++x) {
                const Stack& cs = an.core.stacks[ch[x]];
                spans[comp[x]].first = std::min(spans[comp[x]].first, cs.i);
                spans[comp[x]].second = std::max(spans[comp[x]].second, cs.j);
                lp.closing.push_back(cs.outer());
            }
            std::sort(spans.begin(), spans.end());
            std::sort(lp.closing.begin() + 1, lp.closing.end());
            lp.component_spans = std::move(spans);
        }
        dec.loops.push_back(std::move(lp));
    }
    for (Loop& lp : dec.loops) std::sort(lp.closing.begin(), lp.closing.end());

    dec.arc_loop.assign(s.arcs().size(), -1);
    for (size_t x = 0; x < s.arcs().size(); ++x)
        dec.arc_loop[x] = loop_of_core[an.core.core_arc_of[x]];

    // vertex assignment: loop of the minimal non-red enclosing arc; red if the
    // minimal enclosers are all red; black if nothing encloses. A vertex with
    // several candidates sits under crossing multi-closing arcs (all blue);
    // the lexicographically smallest arc takes it.
    dec.vertex_colors.assign(s.length() + 1, Color::Black);
    dec.vertex_loop.assign(s.length() + 1, -1);
    const std::vector<Arc>& fa = s.arcs();
    std::map<Arc, int> arc_index;
    for (size_t x = 0; x < fa.size(); ++x) arc_index[fa[x]] = static_cast<int>(x);

    for (int v = 1; v <= s.length(); ++v) {
        if (s.paired(v)) {
            dec.vertex_loop[v] = -2;
            // endpoints take their own arc's color
            Arc own{std::min(v, s.partner(v)), std::max(v, s.partner(v))};
            dec.vertex_colors[v] = dec.arc_colors[arc_index[own]];
            continue;
        }
        std::vector<int> enclosing;
        for (size_t x = 0; x < fa.size(); ++x)
            if (fa[x].i < v && v < fa[x].j) enclosing.push_back(static_cast<int>(x));
        if (enclosing.empty()) continue; // exterior, Black, loop -1

        std::vector<int> candidates;
        for (int x : enclosing) {
            if (dec.arc_colors[x] == Color::Red) continue;
            bool minimal = true;
            for (int y : enclosing)
                if (y != x && precedes(fa[y], fa[x])) minimal = false;
            if (minimal) candidates.push_back(x);
        }
        if (candidates.empty()) {
            dec.vertex_colors[v] = Color::Red;
            // pseudoknot of the innermost red encloser
            int best = -1;
            for (int x : enclosing) {
                bool minimal = true;
                for (int y : enclosing)
                    if (y != x && precedes(fa[y], fa[x])) minimal = false;
                if (minimal && (best == -1 || fa[x] < fa[best])) best = x;
            }
            dec.vertex_loop[v] = dec.arc_loop[best];
        } else {
            int best = candidates[0];
            for (int x : candidates)
                if (fa[x] < fa[best]) best = x;
            if (candidates.size() > 1)
                for (int x : candidates) assert(dec.arc_colors[x] == Color::Blue);
            dec.vertex_colors[v] = dec.arc_colors[best];
            dec.vertex_loop[v] = dec.arc_loop[best];
        }
    }

    // intervals = maximal unpaired runs owned by each loop
    for (int v = 1; v <= s.length(); ++v) {
        int lp = dec.vertex_loop[v];
        if (lp < 0) continue;
        int end = v;
        if (!dec.loops[lp].intervals.empty() && dec.loops[lp].intervals.back().second == v - 1 &&
            !s.paired(v - 1) && dec.vertex_loop[v - 1] == lp) {
            dec.loops[lp].intervals.back().second = end;
        } else {
            dec.loops[lp].intervals.push_back({v, end});
        }
    }

    // stable order: loops by leftmost involved position
    std::vector<int> perm(dec.loops.size());
    for (size_t x = 0; x < perm.size(); ++x) perm[x] = static_cast<int>(x);
    auto leftmost = [&](int lx) {
        const Loop& lp = dec.loops[lx];
        int lm = s.length() + 1;
        for (const Arc& a : lp.closing) lm = std::min(lm, a.i);
        for (auto& iv : lp.intervals) lm = std::min(lm, iv.first);
        return lm;
    };
    std::sort(perm.begin(), perm.end(), [&](int x, int y) {
        int lx = leftmost(x), ly = leftmost(y);
        if (lx != ly) return lx < ly;
        return x < y;
    });
    std::vector<int> rank(perm.size());
    for (size_t x = 0; x < perm.size(); ++x) rank[perm[x]] = static_cast<int>(x);
    std::vector<Loop> sorted_loops(dec.loops.size());
    for (size_t x = 0; x < perm.size(); ++x) sorted_loops[x] = std::move(dec.loops[perm[x]]);
    dec.loops = std::move(sorted_loops);
    for (int& l : dec.arc_loop) l = rank[l];
    for (int& l : dec.vertex_loop)
        if (l >= 0) l = rank[l];

    return dec;
}

bool is_balanced(const Structure& s, const Loop& pk) {
    if (pk.kind != LoopKind::Pseudoknot)
        throw Error(Errc::InvalidParams, "is_balanced expects a pseudoknot loop");
    CoreAnalysis an = analyze_core(s);
    const std::vector<Arc>& ca = an.core.structure.arcs();

    // member core arcs, identified by their stacks' outer arcs
    std::vector<int> members;
    for (const Arc& outer : pk.closing)
        for (int a = 0; a < an.m; ++a)
            if (an.core.stacks[a].outer() == outer) members.push_back(a);
    int t = static_cast<int>(members.size());
    if (t % 2 != 0) return false;
    if (t > 62) throw Error(Errc::LimitExceeded, "pseudoknot too large for pairing search");

    auto minimal_crossing = [&](int a, int b) {
        // a is a minimal element of the crossing set of b
        if (!an.cross[a][b]) return false;
        for (int c = 0; c < an.m; ++c)
            if (an.cross[c][b] && precedes(ca[c], ca[a])) return false;
        return true;
    };
    std::vector<std::vector<char>> balanced(t, std::vector<char>(t, 0));
    for (int x = 0; x < t; ++x)
        for (int y = x + 1; y < t; ++y)
            if (minimal_crossing(members[x], members[y]) && minimal_crossing(members[y], members[x]))
                balanced[x][y] = balanced[y][x] = 1;

    // perfect matching in the balanced-pair graph by backtracking
    std::vector<char> used(t, 0);
    std::function<bool(int)> match = [&](int covered) {
        if (covered == t) return true;
        int x = 0;
        while (used[x]) ++x;
        used[x] = 1;
        for (int y = x + 1; y < t; ++y) {
            if (used[y] || !balanced[x][y]) continue;
            used[y] = 1;
            if (match(covered + 2)) return true;
            used[y] = 0;
        }
        used[x] = 0;
        return false;
    };
    return match(0);
}

std::pair<Structure, Structure> peel_shadow(const Structure& s) {
    if (s.empty()) throw Error(Errc::EmptyStructure, "peel_shadow on empty structure");
    const std::vector<Arc>& fa = s.arcs();
    std::vector<char> maximal(fa.size(), 1);
    for (size_t x = 0; x < fa.size(); ++x)
        for (size_t y = 0; y < fa.size(); ++y)
            if (x != y && precedes(fa[x], fa[y])) {
                maximal[x] = 0;
                break;
            }

    std::vector<Arc> shadow_arcs, rest_arcs;
    for (const Stack& st : maximal_stacks(s)) {
        bool has_max = false;
        for (const Arc& a : st.arcs()) {
            auto it = std::lower_bound(fa.begin(), fa.end(), a);
            if (maximal[static_cast<size_t>(it - fa.begin())]) has_max = true;
        }
        for (const Arc& a : st.arcs()) (has_max ? shadow_arcs : rest_arcs).push_back(a);
    }
    Structure shadow = Structure::make(s.length(), shadow_arcs, s.params());
    Structure rest = Structure::make(s.length(), rest_arcs, s.params());
    return {shadow, rest};
}

std::vector<Structure> shadow_sequence(const Structure& s) {
    std::vector<Structure> out;
    Structure cur = s;
    while (!cur.empty()) {
        auto [shadow, rest] = peel_shadow(cur);
        out.push_back(shadow);
        cur = rest;
    }
    return out;
}

int order(const Structure& s) {
    const std::vector<Arc>& fa = s.arcs();
    int count = 0;
    for (size_t x = 0; x < fa.size(); ++x) {
        bool maximal = true;
        for (size_t y = 0; y < fa.size() && maximal; ++y)
            if (x != y && precedes(fa[x], fa[y])) maximal = false;
        if (maximal) ++count;
    }
    return count;
}

} // namespace pkfold

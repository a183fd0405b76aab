#include "pkfold/skeleta.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <string>

namespace pkfold {

bool is_skeleton(const Structure& s) {
    if (s.length() < 2 || !s.paired(1) || !s.paired(s.length())) return false;
    if (s.empty()) return false;
    Core c = core(s);
    for (const Arc& a : c.structure.arcs()) {
        bool crossed = false;
        for (const Arc& b : c.structure.arcs())
            if (crossing(a, b)) crossed = true;
        if (!crossed) return false;
    }
    return true;
}

namespace {

bool arcs_noncrossing_ok(const std::vector<Arc>& arcs, int n, int k) {
    return static_cast<int>(max_mutually_crossing(arcs, n).size()) < k;
}

bool stacks_connected(const std::vector<Stack>& stacks) {
    if (stacks.empty()) return false;
    std::vector<int> comp(stacks.size(), -1);
    std::vector<size_t> work{0};
    comp[0] = 0;
    while (!work.empty()) {
        size_t u = work.back();
        work.pop_back();
        for (size_t v = 0; v < stacks.size(); ++v)
            if (comp[v] == -1 && crossing(stacks[u].outer(), stacks[v].outer())) {
                comp[v] = 0;
                work.push_back(v);
            }
    }
    return std::none_of(comp.begin(), comp.end(), [](int c) { return c == -1; });
}

} // namespace

std::vector<Structure> enumerate_irreducible_shadows(int span, int sigma, int max_stacks) {
    if (max_stacks < 2 || sigma < 3)
        throw Error(Errc::InvalidParams, "need max_stacks >= 2 and sigma >= 3");
    std::vector<Structure> out;
    if (span < 4 * sigma) return out; // two crossing sigma-stacks need 4*sigma positions

    std::vector<Stack> chosen;
    std::vector<char> used(span + 1, 0);
    std::vector<Arc> arcs;

    auto try_emit = [&]() {
        if (chosen.size() < 2) return;
        if (!used[1] || !used[span]) return;
        if (!stacks_connected(chosen)) return;
        out.push_back(Structure::make(span, arcs, {3, 4, sigma}));
    };

    // stacks placed by ascending origin; nesting-free keeps outer arcs an antichain
    std::function<void(int)> place = [&](int min_i) {
        try_emit();
        if (static_cast<int>(chosen.size()) >= max_stacks) return;
        for (int i = min_i; i + 2 * sigma - 2 + 4 <= span; ++i) {
            if (used[i]) continue;
            bool origin_room = true;
            for (int len = sigma; origin_room; ++len) {
                for (int d = 0; d < len; ++d)
                    if (used[i + d]) {
                        origin_room = false;
                        break;
                    }
                if (!origin_room) break;
                int jmin = i + 2 * len - 2 + 4; // innermost arc length >= 4
                for (int j = jmin; j <= span; ++j) {
                    bool free_term = true;
                    for (int d = 0; d < len; ++d)
                        if (used[j - d]) {
                            free_term = false;
                            break;
                        }
                    if (!free_term) continue;
                    Stack st{i, j, len};
                    // nesting-free among outer arcs
                    bool nested = false;
                    for (const Stack& other : chosen)
                        if (precedes(st.outer(), other.outer()) || precedes(other.outer(), st.outer()))
                            nested = true;
                    if (nested) continue;
                    std::vector<Arc> trial = arcs;
                    for (const Arc& a : st.arcs()) trial.push_back(a);
                    if (!arcs_noncrossing_ok(trial, span, 3)) continue;
                    for (int d = 0; d < len; ++d) used[i + d] = used[j - d] = 1;
                    chosen.push_back(st);
                    std::swap(arcs, trial);
                    place(i + 1);
                    std::swap(arcs, trial);
                    chosen.pop_back();
                    for (int d = 0; d < len; ++d) used[i + d] = used[j - d] = 0;
                }
                if (i + 2 * (len + 1) - 2 + 4 > span) break;
            }
        }
    };
    place(1);
    std::sort(out.begin(), out.end(), [](const Structure& a, const Structure& b) { return a.arcs() < b.arcs(); });
    return out;
}

RootedSkeleton insert_stack(const RootedSkeleton& rs, const Stack& st) {
    const Structure& s = rs.skeleton;
    int n = s.length();
    if (st.len < s.params().sigma || st.i < 1 || st.j > n || st.i + st.len - 1 >= st.j - st.len + 1)
        throw Error(Errc::InvalidParams, "bad stack " + to_string(st));
    if (st.i < rs.frontier)
        throw Error(Errc::FrontierViolation,
                    "origin " + std::to_string(st.i) + " precedes frontier " + std::to_string(rs.frontier));
    for (int d = 0; d < st.len; ++d) {
        if (s.paired(st.i + d) || s.paired(st.j - d))
            throw Error(Errc::PositionsOccupied, "stack " + to_string(st) + " overlaps paired positions");
    }
    if (st.i > 1 && st.j < n && s.partner(st.i - 1) == st.j + 1)
        throw Error(Errc::AdjacentStackMerge, "(i-1,j+1) is an arc for " + to_string(st));
    Arc inner = st.inner();
    if (inner.j - inner.i < s.params().lambda)
        throw Error(Errc::ArcTooShort, "innermost arc of " + to_string(st));
    for (const Arc& a : s.arcs())
        if (precedes(a, inner))
            throw Error(Errc::NotMinimal, "arc " + to_string(a) + " nested under the innermost arc of " + to_string(st));

    std::vector<Arc> arcs = s.arcs();
    bool crossed = false;
    for (const Arc& a : s.arcs())
        if (crossing(a, st.outer())) crossed = true;
    if (!crossed)
        throw Error(Errc::NotASkeleton, "inserted stack " + to_string(st) + " crosses no arc");
    for (const Arc& a : st.arcs()) arcs.push_back(a);
    if (static_cast<int>(max_mutually_crossing(arcs, n).size()) >= s.params().k)
        throw Error(Errc::CrossingBoundExceeded, "inserting " + to_string(st));

    // frontier: first paired base preceding the interval holding the origin
    int r = st.i - 1;
    while (r >= 1 && !s.paired(r)) --r;
    if (r < 0) r = 0;

    RootedSkeleton next{Structure::make(n, arcs, s.params()), r};
    return next;
}

std::vector<Stack> admissible_insertions(const RootedSkeleton& rs) {
    const Structure& s = rs.skeleton;
    int n = s.length();
    int sigma = s.params().sigma;
    std::vector<Stack> out;
    for (int i = std::max(1, rs.frontier); i <= n; ++i) {
        if (s.paired(i)) continue;
        for (int len = sigma; i + 2 * len - 2 + s.params().lambda <= n; ++len) {
            bool origin_free = true;
            for (int d = 0; d < len; ++d)
                if (i + d > n || s.paired(i + d)) origin_free = false;
            if (!origin_free) break;
            for (int j = i + 2 * len - 2 + s.params().lambda; j <= n; ++j) {
                Stack st{i, j, len};
                try {
                    insert_stack(rs, st);
                } catch (const Error&) {
                    continue;
                }
                out.push_back(st);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string debug_dump(const SkeletaTree& tree) {
    std::vector<std::vector<int>> children(tree.nodes.size());
    for (size_t x = 1; x < tree.nodes.size(); ++x)
        children[tree.nodes[x].parent].push_back(static_cast<int>(x));
    std::string out;
    std::vector<int> stack_{0};
    while (!stack_.empty()) {
        int cur = stack_.back();
        stack_.pop_back();
        const auto& node = tree.nodes[cur];
        out += std::to_string(node.depth) + " " + std::to_string(node.frontier);
        for (const Arc& a : node.skeleton.arcs()) out += " " + to_string(a);
        out += "\n";
        for (auto it = children[cur].rbegin(); it != children[cur].rend(); ++it) stack_.push_back(*it);
    }
    return out;
}

SkeletaTree build_skeleta_tree(const Structure& s0, TreeLimits limits) {
    SkeletaTree tree;
    tree.nodes.push_back({s0, 0, -1, {}, 0});
    std::set<std::vector<Arc>> seen;
    seen.insert(s0.arcs());
    size_t head = 0;
    while (head < tree.nodes.size()) {
        if (static_cast<int>(tree.nodes.size()) > limits.max_nodes) {
            tree.truncated = true;
            break;
        }
        const int cur = static_cast<int>(head);
        ++head;
        if (tree.nodes[cur].depth >= limits.max_depth) {
            tree.truncated = true;
            continue;
        }
        RootedSkeleton rs{tree.nodes[cur].skeleton, tree.nodes[cur].frontier};
        for (const Stack& st : admissible_insertions(rs)) {
            RootedSkeleton child = insert_stack(rs, st);
            if (!seen.insert(child.skeleton.arcs()).second)
                throw Error(Errc::NotASkeleton, "duplicate skeleton reached; grammar ambiguity");
            tree.nodes.push_back({std::move(child.skeleton), child.frontier, cur, st, tree.nodes[cur].depth + 1});
        }
    }
    return tree;
}

} // namespace pkfold

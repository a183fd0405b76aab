#include "pkfold/diagrams.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <sstream>

namespace pkfold {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::DegreeViolation: return "DegreeViolation";
        case Errc::CrossingBoundExceeded: return "CrossingBoundExceeded";
        case Errc::ArcTooShort: return "ArcTooShort";
        case Errc::StackTooShort: return "StackTooShort";
        case Errc::ArcNotInStructure: return "ArcNotInStructure";
        case Errc::InvalidParams: return "InvalidParams";
        case Errc::MalformedPath: return "MalformedPath";
        case Errc::NotAMotif: return "NotAMotif";
        case Errc::NoConvergence: return "NoConvergence";
        case Errc::EmptyStructure: return "EmptyStructure";
        case Errc::PositionsOccupied: return "PositionsOccupied";
        case Errc::FrontierViolation: return "FrontierViolation";
        case Errc::AdjacentStackMerge: return "AdjacentStackMerge";
        case Errc::NotMinimal: return "NotMinimal";
        case Errc::NotASkeleton: return "NotASkeleton";
        case Errc::LimitExceeded: return "LimitExceeded";
        case Errc::InadmissiblePair: return "InadmissiblePair";
        case Errc::InvalidAlphabet: return "InvalidAlphabet";
        case Errc::CeilingExceeded: return "CeilingExceeded";
        case Errc::UnsupportedK: return "UnsupportedK";
        case Errc::ParseError: return "ParseError";
        case Errc::UnknownKey: return "UnknownKey";
        case Errc::BracketOverflow: return "BracketOverflow";
    }
    return "Error";
}

std::string to_string(const Arc& a) {
    std::ostringstream os;
    os << "(" << a.i << "," << a.j << ")";
    return os.str();
}

std::string to_string(const Stack& s) {
    std::ostringstream os;
    os << "(" << s.i << "," << s.j << "," << s.len << ")";
    return os.str();
}

std::vector<Arc> Stack::arcs() const {
    std::vector<Arc> out;
    out.reserve(len);
    for (int d = 0; d < len; ++d) out.push_back({i + d, j - d});
    return out;
}

void Structure::index_partners() {
    partner_.assign(n_ + 1, 0);
    for (const Arc& a : arcs_) {
        partner_[a.i] = a.j;
        partner_[a.j] = a.i;
    }
}

bool Structure::has_arc(const Arc& a) const {
    return a.i >= 1 && a.i <= n_ && partner_[a.i] == a.j && a.i < a.j;
}

Structure Structure::make_unchecked(int n, std::vector<Arc> arcs, DiagramParams params) {
    Structure s;
    s.n_ = n;
    std::sort(arcs.begin(), arcs.end());
    s.arcs_ = std::move(arcs);
    s.params_ = params;
    s.index_partners();
    return s;
}

Structure Structure::make(int n, std::vector<Arc> arcs, DiagramParams params) {
    if (n < 0) throw Error(Errc::InvalidParams, "negative length");
    if (params.k < 2 || params.lambda < 1 || params.sigma < 1)
        throw Error(Errc::InvalidParams, "need k >= 2, lambda >= 1, sigma >= 1");
    std::sort(arcs.begin(), arcs.end());
    for (const Arc& a : arcs) {
        if (a.i < 1 || a.j > n || a.i >= a.j)
            throw Error(Errc::InvalidParams, "arc " + to_string(a) + " out of range for n=" + std::to_string(n));
    }

    // degree
    std::vector<Arc> at(n + 1, Arc{0, 0});
    for (const Arc& a : arcs) {
        for (int pos : {a.i, a.j}) {
            if (at[pos].j != 0) {
                if (at[pos] == a)
                    throw Error(Errc::DegreeViolation, "duplicate arc " + to_string(a));
                throw Error(Errc::DegreeViolation,
                            "position " + std::to_string(pos) + " in arcs " + to_string(at[pos]) + " and " + to_string(a));
            }
        }
        at[a.i] = a;
        at[a.j] = a;
    }

    // arc length
    for (const Arc& a : arcs) {
        if (a.j - a.i < params.lambda)
            throw Error(Errc::ArcTooShort, "arc " + to_string(a) + " has length " + std::to_string(a.j - a.i) +
                                               " < " + std::to_string(params.lambda));
    }

    Structure s = make_unchecked(n, arcs, params);

    // stack length
    for (const Stack& st : maximal_stacks(s)) {
        if (st.len < params.sigma)
            throw Error(Errc::StackTooShort, "maximal stack " + to_string(st) + " has length " +
                                                 std::to_string(st.len) + " < " + std::to_string(params.sigma));
    }

    // crossing bound
    std::vector<Arc> witness = max_mutually_crossing(s.arcs(), n);
    if (static_cast<int>(witness.size()) >= params.k) {
        std::string msg = std::to_string(params.k) + " mutually crossing arcs:";
        for (int t = 0; t < params.k; ++t) msg += " " + to_string(witness[t]);
        throw Error(Errc::CrossingBoundExceeded, msg);
    }
    return s;
}

std::vector<Stack> maximal_stacks(const Structure& s) {
    std::vector<Stack> out;
    for (const Arc& a : s.arcs()) {
        // (i,j) starts a maximal run iff (i-1,j+1) is not an arc
        if (a.i > 1 && a.j < s.length() && s.partner(a.i - 1) == a.j + 1) continue;
        int len = 1;
        while (s.partner(a.i + len) == a.j - len && a.i + len < a.j - len) ++len;
        out.push_back({a.i, a.j, len});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Arc> crossing_set(const Structure& s, const Arc& a) {
    if (!s.has_arc(a)) throw Error(Errc::ArcNotInStructure, to_string(a));
    std::vector<Arc> out;
    for (const Arc& b : s.arcs())
        if (crossing(a, b)) out.push_back(b);
    return out;
}

std::vector<Arc> max_mutually_crossing(const std::vector<Arc>& arcs, int n) {
    // A set of mutually crossing arcs sorted by i has i1<...<ik<j1<...<jk, so
    // all straddle t = ik. For each t, the straddlers are pairwise crossing or
    // nested; the largest mutually crossing subset is the longest run of
    // strictly increasing j among straddlers sorted by i.
    std::vector<Arc> best;
    if (arcs.empty()) return best;
    std::vector<Arc> sorted = arcs;
    std::sort(sorted.begin(), sorted.end());
    for (int t = 1; t < n; ++t) {
        std::vector<Arc> straddle;
        for (const Arc& a : sorted)
            if (a.i <= t && t < a.j) straddle.push_back(a);
        if (static_cast<int>(straddle.size()) <= static_cast<int>(best.size())) continue;
        // longest strictly increasing subsequence of j (straddle is i-sorted)
        std::vector<int> tail;           // tail[l] = smallest j ending an l+1-length chain
        std::vector<int> tail_idx;
        std::vector<int> prev(straddle.size(), -1);
        std::vector<int> lis_end;
        int best_len = 0, best_end = -1;
        for (size_t x = 0; x < straddle.size(); ++x) {
            int jx = straddle[x].j;
            auto it = std::lower_bound(tail.begin(), tail.end(), jx);
            size_t pos = static_cast<size_t>(it - tail.begin());
            if (pos > 0) prev[x] = tail_idx[pos - 1];
            if (it == tail.end()) {
                tail.push_back(jx);
                tail_idx.push_back(static_cast<int>(x));
            } else {
                *it = jx;
                tail_idx[pos] = static_cast<int>(x);
            }
            if (static_cast<int>(pos) + 1 > best_len) {
                best_len = static_cast<int>(pos) + 1;
                best_end = static_cast<int>(x);
            }
        }
        if (best_len > static_cast<int>(best.size())) {
            std::vector<Arc> chain;
            for (int cur = best_end; cur != -1; cur = prev[cur]) chain.push_back(straddle[cur]);
            std::reverse(chain.begin(), chain.end());
            best = chain;
        }
    }
    return best;
}

Core core(const Structure& s) {
    Core c;
    std::vector<Stack> stacks = maximal_stacks(s);

    std::vector<char> keep(s.length() + 1, 1);
    for (const Stack& st : stacks) {
        for (int d = 1; d < st.len; ++d) {
            keep[st.i + d] = 0;
            keep[st.j - d] = 0;
        }
    }
    c.to_original.assign(1, 0);
    std::vector<int> new_label(s.length() + 1, 0);
    for (int pos = 1; pos <= s.length(); ++pos) {
        if (!keep[pos]) continue;
        new_label[pos] = static_cast<int>(c.to_original.size());
        c.to_original.push_back(pos);
    }

    std::vector<Arc> core_arcs;
    core_arcs.reserve(stacks.size());
    for (const Stack& st : stacks) core_arcs.push_back({new_label[st.i], new_label[st.j]});

    DiagramParams p = s.params();
    p.lambda = 1;
    p.sigma = 1;
    c.structure = Structure::make(static_cast<int>(c.to_original.size()) - 1, core_arcs, p);

    // align stacks with the sorted core arc order
    c.stacks.resize(stacks.size());
    std::map<Arc, int> core_index;
    const std::vector<Arc>& ca = c.structure.arcs();
    for (size_t x = 0; x < ca.size(); ++x) core_index[ca[x]] = static_cast<int>(x);
    for (const Stack& st : stacks) c.stacks[core_index[{new_label[st.i], new_label[st.j]}]] = st;

    // original arc -> core arc
    c.core_arc_of.assign(s.arcs().size(), -1);
    std::map<Arc, int> orig_index;
    for (size_t x = 0; x < s.arcs().size(); ++x) orig_index[s.arcs()[x]] = static_cast<int>(x);
    for (size_t cx = 0; cx < c.stacks.size(); ++cx)
        for (const Arc& a : c.stacks[cx].arcs()) c.core_arc_of[orig_index[a]] = static_cast<int>(cx);

    // one contraction pass leaves no parallel adjacent pair
    for (const Arc& a : ca)
        assert(!(a.i > 1 && c.structure.partner(a.i - 1) == a.j + 1));
    return c;
}

} // namespace pkfold

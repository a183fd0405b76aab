#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "pkfold/decomposition.hpp"
#include "test_util.hpp"

using namespace pkfold;

namespace {

Structure from_stacks(int n, const std::vector<Stack>& stacks, DiagramParams params = {}) {
    std::vector<Arc> arcs;
    for (const Stack& st : stacks)
        for (const Arc& a : st.arcs()) arcs.push_back(a);
    return Structure::make(n, arcs, params);
}

} // namespace

TEST_CASE("single stack decomposes into one hairpin") {
    Structure s = Structure::make(9, {{1, 9}, {2, 8}, {3, 7}});
    LoopDecomposition dec = loop_decompose(s);
    REQUIRE(dec.loops.size() == 1);
    CHECK(dec.loops[0].kind == LoopKind::Hairpin);
    CHECK(dec.loops[0].closing == std::vector<Arc>{{3, 7}});
    CHECK(dec.loops[0].intervals == std::vector<std::pair<int, int>>{{4, 6}});
    for (int v = 4; v <= 6; ++v) CHECK(dec.vertex_colors[v] == Color::Purple);
}

TEST_CASE("nested stacks give hairpin plus interior loop") {
    Structure s = from_stacks(20, {{1, 20, 3}, {6, 15, 3}});
    LoopDecomposition dec = loop_decompose(s);
    REQUIRE(dec.loops.size() == 2);
    CHECK(dec.loops[0].kind == LoopKind::Interior);
    CHECK(dec.loops[0].closing == std::vector<Arc>{{3, 18}, {6, 15}});
    CHECK(dec.loops[1].kind == LoopKind::Hairpin);
    CHECK(dec.loops[1].closing == std::vector<Arc>{{8, 13}});
    CHECK(dec.vertex_colors[4] == Color::Green);
    CHECK(dec.vertex_colors[17] == Color::Green);
    CHECK(dec.vertex_colors[9] == Color::Purple);
}

TEST_CASE("crossing stacks form one balanced pseudoknot with red vertices") {
    Structure s = from_stacks(20, {{1, 12, 3}, {4, 20, 3}});
    LoopDecomposition dec = loop_decompose(s);
    REQUIRE(dec.loops.size() == 1);
    const Loop& pk = dec.loops[0];
    CHECK(pk.kind == LoopKind::Pseudoknot);
    CHECK(pk.closing == std::vector<Arc>{{1, 12}, {4, 20}});
    for (int v = 13; v <= 17; ++v) CHECK(dec.vertex_colors[v] == Color::Red);
    for (const Color c : dec.arc_colors) CHECK(c == Color::Red);
    CHECK(is_balanced(s, pk));
}

TEST_CASE("a three-arc chain is an unbalanced pseudoknot") {
    // a < b < c with a,b crossing, b,c crossing, a,c disjoint
    DiagramParams loose{3, 4, 1};
    Structure s = Structure::make(30, {{1, 10}, {5, 20}, {15, 30}}, loose);
    LoopDecomposition dec = loop_decompose(s);
    REQUIRE(dec.loops.size() == 1);
    CHECK(dec.loops[0].kind == LoopKind::Pseudoknot);
    CHECK_FALSE(is_balanced(s, dec.loops[0]));
}

TEST_CASE("four arcs in two balanced pairs") {
    DiagramParams loose{3, 4, 1};
    Structure s = Structure::make(27, {{1, 10}, {5, 14}, {12, 22}, {17, 27}}, loose);
    LoopDecomposition dec = loop_decompose(s);
    REQUIRE(dec.loops.size() == 1);
    CHECK(dec.loops[0].kind == LoopKind::Pseudoknot);
    CHECK(is_balanced(s, dec.loops[0]));
}

TEST_CASE("skeleton arc above a crossing pair closes an interior loop") {
    // (5,21,3) is green: its unique maximal nested arc crosses (1,13,3)
    Structure s = from_stacks(21, {{1, 13, 3}, {5, 21, 3}, {8, 17, 3}});
    LoopDecomposition dec = loop_decompose(s);
    bool found_interior = false;
    for (const Loop& lp : dec.loops)
        if (lp.kind == LoopKind::Interior) {
            found_interior = true;
            CHECK(lp.closing == std::vector<Arc>{{7, 19}, {8, 17}});
        }
    CHECK(found_interior);
    // interval under the red innermost arc belongs to the pseudoknot
    CHECK(dec.vertex_colors[14] == Color::Red);
}

TEST_CASE("peel_shadow splits maximal stacks from the remainder") {
    CHECK_THROWS_AS(peel_shadow(Structure::make(5, {})), Error);

    Structure one = Structure::make(9, {{1, 9}, {2, 8}, {3, 7}});
    auto [sh1, rest1] = peel_shadow(one);
    CHECK(sh1.arcs() == one.arcs());
    CHECK(rest1.empty());

    Structure nested = from_stacks(20, {{1, 20, 3}, {6, 15, 3}});
    auto [sh2, rest2] = peel_shadow(nested);
    CHECK(sh2.arcs() == from_stacks(20, {{1, 20, 3}}).arcs());
    CHECK(rest2.arcs() == from_stacks(20, {{6, 15, 3}}).arcs());

    Structure crossing = from_stacks(20, {{1, 12, 3}, {4, 20, 3}});
    auto [sh3, rest3] = peel_shadow(crossing);
    CHECK(sh3.arcs() == crossing.arcs());
    CHECK(rest3.empty());
}

TEST_CASE("shadow_sequence reconstructs the structure") {
    CHECK(shadow_sequence(Structure::make(6, {})).empty());
    Structure nested = from_stacks(20, {{1, 20, 3}, {6, 15, 3}});
    auto shadows = shadow_sequence(nested);
    CHECK(shadows.size() == 2);

    std::mt19937 rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 12 + static_cast<int>(rng() % 29);
        Structure s = testutil::random_structure(rng, n);
        std::set<Arc> all;
        for (const Structure& sh : shadow_sequence(s)) {
            CHECK_NOTHROW(Structure::make(sh.length(), sh.arcs(), s.params()));
            for (const Arc& a : sh.arcs()) CHECK(all.insert(a).second);
        }
        CHECK(all == std::set<Arc>(s.arcs().begin(), s.arcs().end()));
    }
}

TEST_CASE("order counts maximal arcs") {
    CHECK(order(Structure::make(5, {})) == 0);
    CHECK(order(Structure::make(9, {{1, 9}, {2, 8}, {3, 7}})) == 1);
    CHECK(order(from_stacks(18, {{1, 9, 3}, {10, 18, 3}})) == 2);
}

TEST_CASE("decomposition partitions arcs and vertices deterministically") {
    std::mt19937 rng(20260810);
    for (int trial = 0; trial < 300; ++trial) {
        int n = 10 + static_cast<int>(rng() % 31);
        Structure s = testutil::random_structure(rng, n);
        LoopDecomposition dec = loop_decompose(s);
        LoopDecomposition again = loop_decompose(s);
        CHECK(dec.arc_colors == again.arc_colors);
        CHECK(dec.vertex_colors == again.vertex_colors);

        // every arc in exactly one loop
        for (size_t x = 0; x < s.arcs().size(); ++x) {
            REQUIRE(dec.arc_loop[x] >= 0);
            REQUIRE(dec.arc_loop[x] < static_cast<int>(dec.loops.size()));
        }
        // every unpaired vertex in at most one loop, red/blue/green/purple iff in a loop
        std::vector<int> interval_owner(n + 1, -1);
        for (size_t lx = 0; lx < dec.loops.size(); ++lx)
            for (auto& iv : dec.loops[lx].intervals)
                for (int v = iv.first; v <= iv.second; ++v) {
                    CHECK(interval_owner[v] == -1);
                    interval_owner[v] = static_cast<int>(lx);
                }
        for (int v = 1; v <= n; ++v) {
            if (s.paired(v)) {
                CHECK(dec.vertex_loop[v] == -2);
            } else {
                CHECK(interval_owner[v] == dec.vertex_loop[v]);
                bool exterior = dec.vertex_loop[v] == -1;
                bool black = dec.vertex_colors[v] == Color::Black;
                CHECK(exterior == black);
            }
        }

        // structural soundness of reported loops
        for (const Loop& lp : dec.loops) {
            switch (lp.kind) {
                case LoopKind::Hairpin: {
                    REQUIRE(lp.closing.size() == 1);
                    const Arc& a = lp.closing[0];
                    REQUIRE(lp.intervals.size() == 1);
                    CHECK(lp.intervals[0] == std::pair<int, int>{a.i + 1, a.j - 1});
                    for (int v = a.i + 1; v < a.j; ++v) CHECK_FALSE(s.paired(v));
                    break;
                }
                case LoopKind::Interior: {
                    REQUIRE(lp.closing.size() == 2);
                    const Arc& outer = lp.closing[0];
                    const Arc& inner = lp.closing[1];
                    CHECK(precedes(inner, outer));
                    for (int v = outer.i + 1; v < inner.i; ++v) CHECK_FALSE(s.paired(v));
                    for (int v = inner.j + 1; v < outer.j; ++v) CHECK_FALSE(s.paired(v));
                    bool continuation = outer.i + 1 == inner.i && inner.j + 1 == outer.j;
                    CHECK_FALSE(continuation); // would be a stack, not an interior loop
                    break;
                }
                case LoopKind::Multi: {
                    // if every nested component were a single arc, there are >= 2
                    CHECK(lp.component_spans.size() >= 1);
                    CHECK(lp.closing.size() >= 3);
                    break;
                }
                case LoopKind::Pseudoknot: {
                    CHECK(lp.closing.size() >= 2);
                    // each member is minimal crossing for some arc, recomputed
                    // from scratch on the core
                    Core c = core(s);
                    const auto& ca = c.structure.arcs();
                    for (const Arc& outer : lp.closing) {
                        int member = -1;
                        for (size_t cx = 0; cx < c.stacks.size(); ++cx)
                            if (c.stacks[cx].outer() == outer) member = static_cast<int>(cx);
                        REQUIRE(member >= 0);
                        bool minimal_for_some = false;
                        for (size_t b = 0; b < ca.size() && !minimal_for_some; ++b) {
                            if (!crossing(ca[member], ca[b])) continue;
                            bool minimal = true;
                            for (size_t z = 0; z < ca.size(); ++z)
                                if (crossing(ca[z], ca[b]) && precedes(ca[z], ca[member])) minimal = false;
                            minimal_for_some = minimal;
                        }
                        CHECK(minimal_for_some);
                    }
                    break;
                }
            }
        }
    }
}

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "oracles/homology_oracle.hpp"
#include "oracles/skeleton_oracle.hpp"
#include "support.hpp"
#include "tri/homology.hpp"
#include "tri/pachner.hpp"

using namespace tri;
using testing_support::fixture;

namespace {

int vertex_count(const Triangulation& t) { return static_cast<int>(skeleton(t).vertices.size()); }

std::vector<int> sorted_degrees(const Triangulation& t) {
    auto d = oracle::skeleton_facts(t).edge_degrees;
    std::sort(d.begin(), d.end());
    return d;
}

bool inverse_restores(const Triangulation& before, const Move& m) {
    const auto target = iso_sig(before);
    const auto after = apply_move(before, m);
    for (const auto& back : enumerate_moves(after, {inverse_type(m.type)}))
        if (iso_sig(apply_move(after, back)) == target) return true;
    return false;
}

Errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::Parse;
}

}  // namespace

TEST(Moves, FigureEightEnumeration) {
    const auto t = fixture("figure8");
    const auto ms = enumerate_moves(t, {MoveType::M23, MoveType::M32});
    ASSERT_EQ(ms.size(), 4u);
    for (const auto& m : ms) {
        EXPECT_EQ(m.type, MoveType::M23);
        EXPECT_TRUE(can_apply(t, m));
    }
    EXPECT_FALSE(can_apply(t, Move::m32(0)));
    EXPECT_FALSE(can_apply(t, Move::m32(1)));
    EXPECT_EQ(code_of([&] { apply_move(t, Move::m32(0)); }), Errc::MoveNotApplicable);
    EXPECT_EQ(code_of([&] { can_apply(t, Move::m32(7)); }), Errc::ParameterOutOfRange);
    EXPECT_EQ(code_of([&] { can_apply(t, Move::m23(5, 0)); }), Errc::ParameterOutOfRange);
    EXPECT_EQ(code_of([&] { apply_move(t, Move::m20(0)); }), Errc::MoveNotApplicable);
}

TEST(Moves, SingleTetrahedronHasNoBistellarMoves) {
    EXPECT_TRUE(enumerate_moves(fixture("single_tet"), {MoveType::M23, MoveType::M32}).empty());
}

TEST(Moves, SelfGluedFaceRefuses23) {
    const auto t = fixture("lens52");
    for (int f = 0; f < 4; ++f) EXPECT_FALSE(can_apply(t, Move::m23(0, f)));
}

TEST(Moves, TwoThreeDegreeLedger) {
    for (const auto& name : testing_support::all_fixtures()) {
        const auto t = fixture(name);
        const auto o = oracle::skeleton_facts(t);
        for (const auto& m : enumerate_moves(t, {MoveType::M23})) {
            // Face edges lose the slot of one tetrahedron, apex edges gain one.
            auto expect = o.edge_degrees;
            const auto& g = *t.gluing(m.a, m.b);
            for (int u = 0; u < 4; ++u)
                for (int v = u + 1; v < 4; ++v)
                    if (u != m.b && v != m.b) --expect[o.edge_class[6 * m.a + oracle::eidx(u, v)]];
            for (int u = 0; u < 4; ++u) {
                if (u == m.b) continue;
                ++expect[o.edge_class[6 * m.a + oracle::eidx(m.b, u)]];
                ++expect[o.edge_class[6 * g.tet + oracle::eidx(g.perm[m.b], g.perm[u])]];
            }
            expect.push_back(3);
            std::sort(expect.begin(), expect.end());
            EXPECT_EQ(sorted_degrees(apply_move(t, m)), expect) << name << " " << m.script();
        }
    }
}

TEST(Moves, ZeroTwoDegreeLedger) {
    // Cutting along the two chosen faces splits the ring of d slots around
    // the edge into runs of k and d - k; each run is closed by one pillow
    // tetrahedron, giving degrees k + 1 and d - k + 1. Every other edge of
    // the two faces gains 2 per occurrence and the pillow adds an edge of
    // degree 2.
    for (const auto& name : testing_support::all_fixtures()) {
        const auto t = fixture(name);
        const auto sk = skeleton(t);
        const auto o = oracle::skeleton_facts(t);
        for (const auto& m : enumerate_moves(t, {MoveType::M02})) {
            const auto& slots = sk.edges[m.a].slots;
            const int d = static_cast<int>(slots.size());
            const int ce = o.edge_class[6 * slots[0].tet + slots[0].edge()];
            auto expect = o.edge_degrees;
            bool clean = true;
            for (int i : {m.b, m.c}) {
                const auto& s = slots[i];
                for (int e : {oracle::eidx(s.a, s.x), oracle::eidx(s.b, s.x)}) {
                    const int c = o.edge_class[6 * s.tet + e];
                    clean = clean && c != ce;
                    expect[c] += 2;
                }
            }
            const auto after = sorted_degrees(apply_move(t, m));
            EXPECT_EQ(after.size(), o.edge_degrees.size() + 2) << name << " " << m.script();
            if (!clean) continue;
            const int k = m.c - m.b;
            expect[ce] = k + 1;
            expect.push_back(d - k + 1);
            expect.push_back(2);
            std::sort(expect.begin(), expect.end());
            EXPECT_EQ(after, expect) << name << " " << m.script();
        }
    }
}

TEST(Moves, ZeroTwoKeepsVertexLinks) {
    for (const auto& name : testing_support::kClosedFixtures) {
        const auto t = fixture(name);
        const auto before = oracle::skeleton_facts(t);
        for (const auto& m : enumerate_moves(t, {MoveType::M02})) {
            const auto after = oracle::skeleton_facts(apply_move(t, m));
            auto a = after.link_euler, b = before.link_euler;
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            EXPECT_EQ(a, b) << name << " " << m.script();
        }
    }
}

TEST(Moves, TwentyNeedsDegreeTwo) {
    const auto t = fixture("figure8_02");
    const auto sk = skeleton(t);
    for (int e = 0; e < static_cast<int>(sk.edges.size()); ++e)
        if (sk.edges[e].degree() != 2) {
            EXPECT_FALSE(can_apply(t, Move::m20(e)));
        }
    const auto flat = enumerate_moves(t, {MoveType::M20});
    EXPECT_EQ(flat.size(), 2u);
    bool back = false;
    for (const auto& m : flat) back = back || iso_sig(apply_move(t, m)) == iso_sig(fixture("figure8"));
    EXPECT_TRUE(back);
}

TEST(Moves, OneFourOnSphere) {
    const auto t = fixture("s3_two_tet");
    const auto r = apply_move(t, Move::m14(0));
    EXPECT_EQ(r.size(), 5);
    EXPECT_EQ(vertex_count(r), 2);
    EXPECT_EQ(classify(r), TriClass::OtherClosed);
}

TEST(Moves, InversePairsOnEveryFixtureAndMove) {
    for (const auto& name : testing_support::all_fixtures()) {
        const auto t = fixture(name);
        const auto ms = enumerate_moves(t, kAllMoveTypes);
        EXPECT_FALSE(ms.empty());
        for (const auto& m : ms) {
            EXPECT_TRUE(can_apply(t, m)) << name << " " << m.script();
            EXPECT_TRUE(inverse_restores(t, m)) << name << " " << m.script();
        }
    }
}

TEST(Moves, DegreeOneEdgeFromThreeTwo) {
    // Next to the pillow a 2-3 then 3-2 pair can drop the degree-two edge to one.
    const auto t = fixture("figure8_02");
    bool seen = false;
    for (const auto& a : enumerate_moves(t, {MoveType::M23}))
        for (const auto& b : enumerate_moves(apply_move(t, a), {MoveType::M32})) {
            const auto r = apply_move(apply_move(t, a), b);
            if (has_degree_one_edge(r)) seen = true;
        }
    EXPECT_TRUE(seen);
}

TEST(Moves, ScriptRoundTrip) {
    for (const Move& m : {Move::m23(1, 2), Move::m32(3), Move::m14(0), Move::m41(2), Move::m02(4, 0, 3), Move::m20(1)})
        EXPECT_EQ(parse_move(m.script()), m);
    EXPECT_EQ(code_of([] { parse_move("23 1"); }), Errc::Parse);
    EXPECT_EQ(code_of([] { parse_move("55 1"); }), Errc::Parse);
    EXPECT_EQ(code_of([] { parse_move("32 1 2"); }), Errc::Parse);
}

TEST(Moves, RandomSequencesPreserveInvariantsAndDeltas) {
    std::mt19937 rng(20261015);
    for (const auto& name : testing_support::all_fixtures()) {
        const auto start = fixture(name);
        const bool closed = start.is_closed();
        const auto h0 = closed ? homology_h1(start) : HomologyGroup{};
        if (closed) {
            const auto o = oracle::homology_h1(start);
            ASSERT_EQ(h0.rank, o.rank) << name;
        }
        for (int run = 0; run < 200; ++run) {
            Triangulation cur = start;
            const int len = 1 + static_cast<int>(rng() % 10);
            for (int step = 0; step < len; ++step) {
                std::vector<Move> ms;
                for (const auto& m : enumerate_moves(cur, kAllMoveTypes))
                    if (cur.size() + m.delta() <= 10) ms.push_back(m);
                if (ms.empty()) break;
                const Move m = ms[rng() % ms.size()];
                const int v0 = vertex_count(cur);
                const auto next = apply_move(cur, m);
                ASSERT_EQ(next.size(), cur.size() + m.delta()) << name << " " << m.script();
                const int dv = m.type == MoveType::M14 ? 1 : m.type == MoveType::M41 ? -1 : 0;
                ASSERT_EQ(vertex_count(next), v0 + dv) << name << " " << m.script();
                if (closed) {
                    ASSERT_EQ(homology_h1(next), h0) << name << " " << m.script();
                }
                if (dv == 0) {
                    auto a = oracle::skeleton_facts(next).link_euler, b = oracle::skeleton_facts(cur).link_euler;
                    std::sort(a.begin(), a.end());
                    std::sort(b.begin(), b.end());
                    ASSERT_EQ(a, b) << name << " " << m.script();
                }
                cur = next;
            }
        }
    }
}

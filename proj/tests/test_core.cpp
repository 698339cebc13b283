#include <algorithm>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "oracles/homology_oracle.hpp"
#include "oracles/skeleton_oracle.hpp"
#include "support.hpp"
#include "tri/homology.hpp"
#include "tri/isosig.hpp"
#include "tri/skeleton.hpp"

using namespace tri;
using testing_support::fixture;

namespace {

Perm4 P(const char* s) { return *Perm4::parse(s); }

/// Random relabelling of tetrahedra and of vertices inside each tetrahedron.
Triangulation shuffle(const Triangulation& t, std::mt19937& rng) {
    const int n = t.size();
    std::vector<int> pi(n);
    std::iota(pi.begin(), pi.end(), 0);
    std::shuffle(pi.begin(), pi.end(), rng);
    std::vector<Perm4> sigma(n);
    for (auto& s : sigma) s = all_perm4[rng() % 24];
    GluingTable table(n);
    for (int a = 0; a < n; ++a)
        for (int f = 0; f < 4; ++f)
            if (const auto& g = t.gluing(a, f))
                table[pi[a]][sigma[a][f]] = Gluing{pi[g->tet], sigma[g->tet] * g->perm * sigma[a].inverse()};
    return Triangulation::from_table(table);
}

}  // namespace

TEST(Perm4, IndexRoundTripAndGroupLaws) {
    std::set<std::string> seen;
    for (int i = 0; i < 24; ++i) {
        const Perm4 p = Perm4::from_index(i);
        EXPECT_EQ(p.index(), i);
        EXPECT_TRUE((p * p.inverse()).is_identity());
        seen.insert(p.str());
    }
    EXPECT_EQ(seen.size(), 24u);
    EXPECT_EQ(P("1023").sign(), -1);
    EXPECT_EQ(P("1230").sign(), -1);
    EXPECT_EQ(P("1032").sign(), 1);
    EXPECT_EQ((P("1230") * P("1023")).str(), "2130");
    EXPECT_FALSE(Perm4::parse("0012"));
    EXPECT_FALSE(Perm4::parse("012"));
}

TEST(Triangulation, FigureEightAllFacesInternal) {
    const auto t = fixture("figure8");
    EXPECT_EQ(t.size(), 2);
    EXPECT_TRUE(t.is_closed());
    // Involution check written out directly over the table.
    for (int a = 0; a < 2; ++a)
        for (int f = 0; f < 4; ++f) {
            const auto& g = t.gluing(a, f);
            ASSERT_TRUE(g);
            EXPECT_NE(g->tet, a);
            const auto& back = t.gluing(g->tet, g->perm[f]);
            ASSERT_TRUE(back);
            EXPECT_EQ(back->tet, a);
            EXPECT_EQ(back->perm, g->perm.inverse());
        }
}

TEST(Triangulation, SingleTetrahedronHasFourUngluedFaces) {
    const auto t = fixture("single_tet");
    EXPECT_EQ(t.size(), 1);
    EXPECT_EQ(t.unglued_face_count(), 4);
}

TEST(Triangulation, ValidationErrors) {
    auto code = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.code();
        }
        return Errc::Parse;
    };
    std::vector<GluingSpec> self{{0, 0, 0, 0, Perm4{}}};
    EXPECT_EQ(code([&] { Triangulation::from_gluings(1, self); }), Errc::FaceSelfGluing);
    std::vector<GluingSpec> range{{0, 0, 3, 1, P("1023")}};
    EXPECT_EQ(code([&] { Triangulation::from_gluings(2, range); }), Errc::IndexOutOfRange);
    std::vector<GluingSpec> fixing{{0, 0, 1, 1, Perm4{}}};
    EXPECT_EQ(code([&] { Triangulation::from_gluings(2, fixing); }), Errc::PermutationNotFixingFace);
    std::vector<GluingSpec> clash{{0, 0, 1, 0, Perm4{}}, {0, 1, 1, 0, P("1023")}};
    EXPECT_EQ(code([&] { Triangulation::from_gluings(2, clash); }), Errc::NonInvolution);
    GluingTable lonely(2);
    lonely[0][0] = Gluing{1, Perm4{}};
    EXPECT_EQ(code([&] { Triangulation::from_table(lonely); }), Errc::NonInvolution);
    EXPECT_EQ(code([] { parse_tri("tri 1 2\ng 0 0 1 0 01x3\n"); }), Errc::Parse);
    EXPECT_EQ(code([] { parse_tri("nonsense\n"); }), Errc::Parse);
}

TEST(Triangulation, TextRoundTrip) {
    for (const auto& name : testing_support::all_fixtures()) {
        const auto t = fixture(name);
        const auto again = parse_tri(to_tri_text(t));
        EXPECT_EQ(again.table(), t.table()) << name;
    }
}

TEST(Skeleton, MatchesUnionFindOracleOnEveryFixture) {
    for (const auto& name : testing_support::all_fixtures()) {
        const auto t = fixture(name);
        const auto sk = skeleton(t);
        const auto o = oracle::skeleton_facts(t);
        std::vector<int> lib_deg, ora_deg = o.edge_degrees;
        int total = 0;
        for (const auto& e : sk.edges) lib_deg.push_back(e.degree()), total += e.degree();
        std::sort(lib_deg.begin(), lib_deg.end());
        std::sort(ora_deg.begin(), ora_deg.end());
        EXPECT_EQ(lib_deg, ora_deg) << name;
        EXPECT_EQ(total, 6 * t.size());
        // Per-slot class agreement, up to renaming.
        std::map<int, int> rename;
        for (int a = 0; a < t.size(); ++a)
            for (int e = 0; e < 6; ++e) {
                auto [it, fresh] = rename.emplace(sk.edge_of[a][e], o.edge_class[6 * a + e]);
                EXPECT_EQ(it->second, o.edge_class[6 * a + e]) << name;
            }
        ASSERT_EQ(sk.vertices.size(), std::set<int>(o.vertex_class.begin(), o.vertex_class.end()).size()) << name;
        for (int a = 0; a < t.size(); ++a)
            for (int v = 0; v < 4; ++v) {
                const auto& vc = sk.vertices[sk.vertex_of[a][v]];
                const int oc = o.vertex_class[4 * a + v];
                EXPECT_EQ(vc.link_euler, o.link_euler[oc]) << name;
                EXPECT_EQ(vc.link_orientable, o.link_orientable[oc]) << name;
                EXPECT_EQ(vc.link_closed, o.link_closed[oc]) << name;
            }
        EXPECT_EQ(sk.face_count, o.face_classes) << name;
    }
}

TEST(Skeleton, FigureEightPinned) {
    const auto sk = skeleton(fixture("figure8"));
    ASSERT_EQ(sk.edges.size(), 2u);
    EXPECT_EQ(sk.edges[0].degree(), 6);
    EXPECT_EQ(sk.edges[1].degree(), 6);
    ASSERT_EQ(sk.vertices.size(), 1u);
    EXPECT_EQ(sk.vertices[0].link_type(), LinkType::Torus);
}

TEST(Skeleton, SingleTetrahedron) {
    const auto sk = skeleton(fixture("single_tet"));
    EXPECT_EQ(sk.edges.size(), 6u);
    for (const auto& e : sk.edges) EXPECT_EQ(e.degree(), 1);
    ASSERT_EQ(sk.vertices.size(), 4u);
    for (const auto& v : sk.vertices) EXPECT_EQ(v.link_type(), LinkType::Disc);
}

TEST(Skeleton, EulerIdentityFromLinks) {
    // chi(complex) = sum over vertices of (1 - chi(link)/2) for closed complexes.
    for (const auto& name : testing_support::kClosedFixtures) {
        const auto sk = skeleton(fixture(name));
        int twice = 0;
        for (const auto& v : sk.vertices) twice += 2 - v.link_euler;
        EXPECT_EQ(2 * sk.euler_characteristic(), twice) << name;
    }
}

TEST(Skeleton, ReversedEdgeIsRejected) {
    // Face 3 onto face 2 swapping vertices 0 and 1 folds edge 01 onto itself backwards.
    std::vector<GluingSpec> g{{0, 3, 0, 2, P("1032")}};
    const auto t = Triangulation::from_gluings(1, g);
    try {
        skeleton(t);
        FAIL() << "expected InvalidEdgeIdentification";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::InvalidEdgeIdentification);
    }
}

TEST(Classify, Fixtures) {
    EXPECT_EQ(classify(fixture("figure8")), TriClass::Ideal);
    EXPECT_EQ(classify(fixture("sister")), TriClass::Ideal);
    EXPECT_EQ(classify(fixture("gieseking")), TriClass::Ideal);
    EXPECT_EQ(classify(fixture("s3_two_tet")), TriClass::ClosedOneVertex);
    EXPECT_EQ(classify(fixture("lens52")), TriClass::ClosedOneVertex);
    EXPECT_EQ(classify(fixture("single_tet")), TriClass::HasBoundaryFaces);
    const auto o = oracle::skeleton_facts(fixture("s3_two_tet"));
    EXPECT_EQ(o.link_euler, std::vector<int>{2});
    EXPECT_EQ(skeleton(fixture("gieseking")).vertices[0].link_type(), LinkType::KleinBottle);
}

TEST(IsoSig, InvariantUnderRelabelling) {
    std::mt19937 rng(7);
    for (const auto& name : testing_support::all_fixtures()) {
        const auto t = fixture(name);
        const auto sig = iso_sig(t);
        for (int k = 0; k < 20; ++k) EXPECT_EQ(iso_sig(shuffle(t, rng)), sig) << name;
        EXPECT_EQ(iso_sig(from_iso_sig(sig.text)), sig) << name;
    }
}

TEST(IsoSig, SwappedFigureEight) {
    const auto t = fixture("figure8");
    GluingTable swapped(2);
    for (int a = 0; a < 2; ++a)
        for (int f = 0; f < 4; ++f) {
            const auto& g = t.gluing(a, f);
            swapped[1 - a][f] = Gluing{1 - g->tet, g->perm};
        }
    EXPECT_EQ(iso_sig(Triangulation::from_table(swapped)), iso_sig(t));
}

TEST(IsoSig, DistinctFixturesDistinctSignatures) {
    std::set<std::string> sigs;
    for (const auto& name : testing_support::all_fixtures()) sigs.insert(iso_sig(fixture(name)).text);
    EXPECT_EQ(sigs.size(), testing_support::all_fixtures().size());
}

TEST(IsoSig, DisconnectedIsAnError) {
    try {
        iso_sig(Triangulation::from_gluings(2, std::vector<GluingSpec>{}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::DisconnectedTriangulation);
    }
}

TEST(IsoSig, MalformedTextIsParseError) {
    for (const char* bad : {"", "2|", "1|b,b,b", "x|b,b,b,b", "1|0/0123,b,b,b"}) {
        try {
            from_iso_sig(bad);
            ADD_FAILURE() << bad;
        } catch (const Error& e) {
            EXPECT_TRUE(e.code() == Errc::Parse || e.code() == Errc::FaceSelfGluing || e.code() == Errc::NonInvolution)
                << bad;
        }
    }
}

TEST(Homology, MatchesDeterminantalOracle) {
    for (const auto& name : testing_support::kClosedFixtures) {
        const auto t = fixture(name);
        const auto lib = homology_h1(t);
        const auto o = oracle::homology_h1(t);
        EXPECT_EQ(lib.rank, o.rank) << name;
        std::vector<BigInt> ot(o.torsion.begin(), o.torsion.end());
        EXPECT_EQ(lib.torsion, ot) << name;
    }
}

TEST(Homology, PinnedValues) {
    // Frozen from the determinantal-divisor oracle.
    EXPECT_EQ(homology_h1(fixture("figure8")).str(), "0");
    EXPECT_EQ(homology_h1(fixture("sister")).str(), "Z_5");
    EXPECT_EQ(homology_h1(fixture("s3_two_tet")).str(), "0");
    EXPECT_EQ(homology_h1(fixture("s2xs1")).str(), "Z");
    EXPECT_EQ(homology_h1(fixture("lens52")).str(), "Z_5");
}

TEST(Homology, BoundaryFacesRejected) {
    try {
        homology_h1(fixture("single_tet"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::HasBoundaryFaces);
    }
}

TEST(DualGraph, Counts) {
    for (const auto& name : testing_support::all_fixtures()) {
        const auto t = fixture(name);
        const auto g = dual_graph(t);
        EXPECT_EQ(g.nodes, t.size());
        EXPECT_EQ(static_cast<int>(g.arcs.size()), (4 * t.size() - t.unglued_face_count()) / 2) << name;
    }
    const auto g = dual_graph(fixture("figure8"));
    EXPECT_EQ(g.arcs.size(), 4u);
    for (auto [a, b] : g.arcs) EXPECT_NE(a, b);
}

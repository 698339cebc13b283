#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "oracles/angle_oracle.hpp"
#include "support.hpp"
#include "tri/angles.hpp"
#include "tri/pachner.hpp"

using namespace tri;
using testing_support::fixture;

namespace {

std::vector<int> choices_of(const AngleVector& v) {
    std::vector<int> c(v.size() / 3);
    for (std::size_t t = 0; t < c.size(); ++t)
        for (int k = 0; k < 3; ++k)
            if (v[3 * t + k] == 1) c[t] = k;
    return c;
}

std::vector<std::vector<int>> sorted_rows(std::vector<std::vector<int>> r) {
    std::sort(r.begin(), r.end());
    return r;
}

/// Closed triangulations with up to six tetrahedra: the fixtures, the census
/// and a few grown from fixtures by random 2-3 moves.
std::vector<Triangulation> taut_corpus() {
    std::vector<Triangulation> out;
    for (const auto& name : testing_support::kClosedFixtures) out.push_back(fixture(name));
    for (auto& t : testing_support::read_census("census/bound4.sigs")) out.push_back(std::move(t));
    std::mt19937 rng(99);
    for (const auto& name : {"figure8", "s3_two_tet", "sister", "lens52"}) {
        for (int run = 0; run < 6; ++run) {
            Triangulation t = fixture(name);
            while (t.size() < 5 + run % 2) {
                const auto ms = enumerate_moves(t, {MoveType::M23});
                if (ms.empty()) break;
                t = apply_move(t, ms[rng() % ms.size()]);
            }
            out.push_back(t);
        }
    }
    return out;
}

}  // namespace

TEST(AngleSystem, MatchesOracleRows) {
    for (const auto& t : taut_corpus()) {
        const auto sys = angle_system(t);
        const auto o = oracle::angle_rows(t);
        ASSERT_EQ(sys.tetrahedra + sys.edges, static_cast<int>(sys.matrix.size()));
        std::vector<std::vector<int>> tets(sys.matrix.begin(), sys.matrix.begin() + sys.tetrahedra);
        std::vector<std::vector<int>> edges(sys.matrix.begin() + sys.tetrahedra, sys.matrix.end());
        EXPECT_EQ(tets, o.tet_rows);
        EXPECT_EQ(sorted_rows(edges), sorted_rows(o.edge_rows));
        for (int r = 0; r < sys.tetrahedra; ++r) EXPECT_EQ(sys.rhs[r], 1);
        for (int r = sys.tetrahedra; r < static_cast<int>(sys.rhs.size()); ++r) EXPECT_EQ(sys.rhs[r], 2);
    }
}

TEST(AngleSystem, FigureEightShape) {
    const auto sys = angle_system(fixture("figure8"));
    EXPECT_EQ(sys.matrix.size(), 4u);
    EXPECT_EQ(sys.columns(), 6);
    for (int e = 0; e < 2; ++e) {
        int s = 0;
        for (int x : sys.matrix[2 + e]) s += x;
        EXPECT_EQ(s, 6);
    }
}

TEST(AngleSystem, BoundaryRejected) {
    try {
        angle_system(fixture("single_tet"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::HasBoundaryFaces);
    }
}

TEST(Angles, FigureEightThirds) {
    const auto sys = angle_system(fixture("figure8"));
    const AngleVector third(6, Rational(1, 3));
    EXPECT_TRUE(verify(sys, third, AngleKind::Strict));
    EXPECT_TRUE(verify(sys, third, AngleKind::Semi));
    EXPECT_TRUE(verify(sys, third, AngleKind::Generalised));
    EXPECT_FALSE(verify(sys, third, AngleKind::Taut));
    AngleVector bent = third;
    bent[0] = Rational(1, 2);
    EXPECT_FALSE(verify(sys, bent, AngleKind::Generalised));

    const auto strict = find_strict(sys);
    ASSERT_TRUE(strict.found());
    EXPECT_TRUE(verify(sys, *strict.vector, AngleKind::Strict));
    // Three angles summing to 1 cannot all exceed 1/3, and 1/3 is attained.
    EXPECT_EQ(*strict.margin, Rational(1, 3));
    EXPECT_TRUE(find_semi(sys));
    EXPECT_TRUE(find_generalised(sys));
}

TEST(Angles, DegreeTwoEdgeForcesZeroMargin) {
    const auto strict = find_strict(fixture("figure8_02"));
    EXPECT_FALSE(strict.found());
    ASSERT_TRUE(strict.margin);
    EXPECT_EQ(*strict.margin, 0);
}

TEST(Angles, GeneralisedMatchesRankOracle) {
    for (const auto& t : taut_corpus()) {
        const auto g = find_generalised(t);
        EXPECT_EQ(g.has_value(), oracle::consistent(t)) << iso_sig(t).text;
        if (g) {
            EXPECT_TRUE(verify(t, *g, AngleKind::Generalised));
        }
    }
    EXPECT_FALSE(find_generalised(fixture("s3_two_tet")));
}

TEST(Angles, TautMatchesBruteForce) {
    int checked = 0, nonempty = 0;
    for (const auto& t : taut_corpus()) {
        ASSERT_LE(t.size(), 6);
        const auto sys = angle_system(t);
        std::vector<std::vector<int>> lib;
        for (const auto& v : find_taut(sys)) {
            EXPECT_TRUE(verify(sys, v, AngleKind::Taut));
            lib.push_back(choices_of(v));
        }
        EXPECT_EQ(lib, oracle::taut_choices(t)) << iso_sig(t).text;
        ++checked;
        nonempty += !lib.empty();
    }
    EXPECT_GT(nonempty, 0);
    EXPECT_GT(checked, 200);
}

TEST(Angles, FigureEightTautPinned) {
    // Frozen from the 3^2 brute force.
    EXPECT_EQ(find_taut(fixture("figure8")).size(), oracle::taut_choices(fixture("figure8")).size());
    EXPECT_EQ(find_taut(fixture("figure8")).size(), 3u);
}

TEST(Angles, DegreeOneEdgeHasNoTaut) {
    const auto t = fixture("s3_two_tet");
    EXPECT_TRUE(find_taut(t).empty());
    EXPECT_TRUE(oracle::taut_choices(t).empty());
    EXPECT_FALSE(find_semi(t));
}

TEST(Angles, ImplicationChainOnCensus) {
    const auto census = testing_support::read_census("census/bound4.sigs");
    ASSERT_EQ(census.size(), 217u);
    for (const auto& t : census) {
        ASSERT_LE(t.size(), 4);
        const auto sys = angle_system(t);
        const auto taut = find_taut(sys);
        const auto semi = find_semi(sys);
        const auto strict = find_strict(sys);
        const auto gen = find_generalised(sys);
        if (!taut.empty()) {
            EXPECT_TRUE(semi) << iso_sig(t).text;
        }
        if (strict.found()) {
            EXPECT_TRUE(semi) << iso_sig(t).text;
        }
        if (semi) {
            EXPECT_TRUE(gen) << iso_sig(t).text;
        }
        if (semi) {
            EXPECT_TRUE(verify(sys, *semi, AngleKind::Semi));
        }
        if (strict.found()) {
            EXPECT_TRUE(verify(sys, *strict.vector, AngleKind::Strict));
        }
        if (strict.margin && *strict.margin > 0) {
            EXPECT_TRUE(feasible_with_margin(sys, *strict.margin));
        }
    }
}
